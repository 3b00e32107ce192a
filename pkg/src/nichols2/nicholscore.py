"""Degree-truncated oracle for the braided quotient algebra.

The dimension of each graded piece is the exact rank of the quantum
symmetrizer, computed blockwise over the bidegree splitting (which the
symmetrizer preserves).  Monomial bases predicted by a tree are verified
against that oracle both by counting and by rank of the symmetrized
monomial matrix, so a wrong tree fails loudly.  Degrees are independent
work units: each one is a pure function of (braiding, degree).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from ._linalg import exact_rank_vectors
from .braidedalg import Braiding, NCPoly, _engine, basis_words, tau0
from .cyclotomic import CycNum, qfact
from .fbtree import FullBinaryTree
from .admissibility import mu_of, p_of


class NicholsError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertPrefix:
    """dims[m] = dimension of the degree-m graded piece, m = 0..n."""

    dims: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        return self.dims[m]

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def total(self) -> int:
        return sum(self.dims)


def dim_at_degree(b: Braiding, m: int) -> int:
    """Exact dimension of the degree-m piece: the symmetrizer rank."""
    if m < 0:
        raise NicholsError("degree must be nonnegative")
    if m == 0:
        return 1
    if m == 1:
        return 2
    eng = _engine(b)
    zero = (0,) * eng.deg
    total = 0
    blocks: dict[int, list] = defaultdict(list)
    for w in basis_words(m):
        blocks[w.count(1)].append(w)
    for words in blocks.values():
        idx = {w: i for i, w in enumerate(words)}
        rows = []
        for w in words:
            vec = [zero] * len(words)
            for ww, v in eng.image_vectors(w).items():
                vec[idx[ww]] = v
            rows.append(vec)
        total += exact_rank_vectors(rows, eng.conductor)
    return total


def hilbert_prefix(b: Braiding, n: int) -> HilbertPrefix:
    """Dimensions of all graded pieces through total degree n."""
    if n < 0:
        raise NicholsError("degree cap must be nonnegative")
    return HilbertPrefix(tuple(dim_at_degree(b, m) for m in range(n + 1)))


@dataclass(frozen=True)
class PBWMonomial:
    """Exponent vector over the extended inner nodes, ascending Q order."""

    nodes: tuple
    exponents: tuple[int, ...]
    weights: tuple[int, ...]

    def weighted_degree(self) -> int:
        return sum(e * w for e, w in zip(self.exponents, self.weights))

    def multidegree(self, labels) -> tuple[int, int]:
        r = sum(e * lab[0] for e, lab in zip(self.exponents, labels))
        s = sum(e * lab[1] for e, lab in zip(self.exponents, labels))
        return (r, s)

    def __repr__(self):
        return f"PBWMonomial({self.exponents})"


def generator_orders(t: FullBinaryTree, b: Braiding) -> list[int]:
    """ord chi(a, a) over the extended inner nodes, ascending Q order."""
    orders = []
    for a in t.nbar2():
        o = b.chi_nodes(t, a, a).order()
        if o is None or o == 1:
            raise NicholsError(
                f"tree/braiding mismatch: chi(a, a) at node {a!r} is "
                f"{'not a root of unity' if o is None else '1'}")
        orders.append(o)
    return orders


def pbw_monomials(t: FullBinaryTree, b: Braiding, up_to: int) -> list[PBWMonomial]:
    """All monomials with exponents below the generator orders and weighted
    degree at most up_to, graded then lexicographic over the node order
    (higher exponent on the Q-smaller node first)."""
    nodes = t.nbar2()
    weights = tuple(t.weight(a) for a in nodes)
    orders = generator_orders(t, b)
    out: list[tuple[int, ...]] = []

    def rec(i, remaining, acc):
        if i == len(nodes):
            out.append(tuple(acc))
            return
        cap = orders[i] - 1
        w = weights[i]
        top = min(cap, remaining // w)
        for e in range(top + 1):
            acc.append(e)
            rec(i + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, up_to, [])
    monos = [PBWMonomial(nodes, exps, weights) for exps in out]
    monos.sort(key=lambda mo: (mo.weighted_degree(), tuple(-e for e in mo.exponents)))
    return monos


def count_by_degree(monomials, up_to: int | None = None) -> HilbertPrefix:
    """Histogram of monomials by weighted degree."""
    if up_to is None:
        up_to = max((mo.weighted_degree() for mo in monomials), default=0)
    dims = [0] * (up_to + 1)
    for mo in monomials:
        d = mo.weighted_degree()
        if d <= up_to:
            dims[d] += 1
    return HilbertPrefix(tuple(dims))


def evaluate_monomial(t: FullBinaryTree, b: Braiding, mono: PBWMonomial) -> NCPoly:
    """Expand the monomial into the free algebra: the product of bracket
    element powers, taken in ascending node order."""
    acc = NCPoly.unit()
    for node, e in zip(mono.nodes, mono.exponents):
        if e:
            acc = acc * tau0(t, b, node) ** e
    return acc


@dataclass
class TypeVerdict:
    holds: bool
    failed_degree: int | None
    detail: str | None
    counts: HilbertPrefix
    dims: HilbertPrefix
    # Generators too heavy to contribute below the cap; their strata were
    # not exercised and the caller reports the cap honestly.
    unexercised_nodes: tuple = ()

    def __bool__(self):
        return self.holds


def verify_type(t: FullBinaryTree, b: Braiding, n: int) -> TypeVerdict:
    """Check degree by degree through n that the predicted monomials count
    the oracle dimensions and stay independent modulo the symmetrizer kernel."""
    monos = pbw_monomials(t, b, n)
    counts = count_by_degree(monos, n)
    dims = hilbert_prefix(b, n)
    heavy = tuple(a for a in t.nbar2() if t.weight(a) > n)
    for m in range(n + 1):
        if counts[m] != dims[m]:
            return TypeVerdict(False, m,
                               f"predicted {counts[m]} monomials, oracle dimension {dims[m]}",
                               counts, dims, heavy)
    eng = _engine(b)
    labels = [t.stern_brocot(a) for a in t.nbar2()]
    by_bidegree: dict[tuple[int, int], list[PBWMonomial]] = defaultdict(list)
    for mo in monos:
        if mo.weighted_degree() >= 2:
            by_bidegree[mo.multidegree(labels)].append(mo)
    zero = (0,) * eng.deg
    for bideg, group in sorted(by_bidegree.items()):
        words = [w for w in basis_words(bideg[0] + bideg[1]) if w.count(1) == bideg[0]]
        idx = {w: i for i, w in enumerate(words)}
        rows = []
        for mo in group:
            poly = evaluate_monomial(t, b, mo)
            vec = [zero] * len(words)
            for w, c in poly.terms.items():
                for ww, v in eng.image_vectors(w).items():
                    cur = vec[idx[ww]]
                    add = _scaled_vec(eng, c, v)
                    vec[idx[ww]] = add if cur is zero else tuple(x + y for x, y in zip(cur, add))
            rows.append(vec)
        rank = exact_rank_vectors(rows, eng.conductor)
        if rank != len(group):
            m = bideg[0] + bideg[1]
            return TypeVerdict(False, m,
                               f"monomials of bidegree {bideg} dependent modulo the "
                               f"kernel (rank {rank} of {len(group)})",
                               counts, dims, heavy)
    return TypeVerdict(True, None, None, counts, dims, heavy)


def _scaled_vec(eng, c: CycNum, vec):
    cv = c._lift(eng.conductor)
    return eng._vec_mul(tuple(cv), vec)


def relation_set(t: FullBinaryTree, b: Braiding, max_degree: int | None = None) -> list[NCPoly]:
    """Generators of the relation ideal read off the tree: every leaf
    bracket, the order-power of every extended inner node bracket, and one
    mixed commutation relation per inner node whose left godfather is inner.

    Power relations grow like 2^degree when expanded, so max_degree bounds
    which generators are materialized (their degrees are known up front
    from weight and order); None expands everything.
    """

    def want(d: int) -> bool:
        return max_degree is None or d <= max_degree

    rels: list[NCPoly] = []
    for a in sorted(t.leaves(), key=lambda x: t.q_value(x)):
        if want(t.weight(a)):
            rels.append(tau0(t, b, a))
    for a in t.nbar2():
        p_a = p_of(t, b, a)
        o = p_a.order()
        if o is None:
            raise NicholsError(f"p at node {a!r} is not a root of unity")
        if want(o * t.weight(a)):
            rels.append(tau0(t, b, a) ** o)
    for bb in sorted(t.internal(), key=lambda x: t.q_value(x)):
        c = t.lgf(bb)
        if not (isinstance(c, int) and not t.is_leaf(c)):
            continue
        lgc = t.lgf(c)
        if not want(t.weight(bb) + t.weight(lgc)):
            continue
        k = t.rgfl(bb)
        denom = qfact(k + 1, p_of(t, b, c))
        if denom.is_zero():
            raise NicholsError(f"inadmissible: vanishing q-factorial at node {bb}")
        coeff = mu_of(t, b, bb) * denom.inv()
        rels.append(tau0(t, b, bb) * tau0(t, b, lgc)
                    - b.chi_nodes(t, bb, lgc) * (tau0(t, b, lgc) * tau0(t, b, bb))
                    - coeff * tau0(t, b, c) ** (k + 1))
    return rels


def check_relations_vanish(t: FullBinaryTree, b: Braiding, n: int) -> bool:
    """Every relation of total degree at most n is zero in the quotient
    under both the symmetrizer and the skew-derivation test."""
    from .braidedalg import is_zero_in_nichols

    for rel in relation_set(t, b, max_degree=n):
        d = rel.total_degree()
        if d is None or d > n:
            continue
        if not is_zero_in_nichols(b, rel, "symmetrizer"):
            return False
        if not is_zero_in_nichols(b, rel, "derivations"):
            return False
    return True


def dimension(t: FullBinaryTree, b: Braiding) -> int:
    """Product of the generator orders over the extended inner nodes."""
    total = 1
    for a in t.nbar2():
        o = b.chi_nodes(t, a, a).order()
        if o is None:
            raise NicholsError(
                f"not finite dimensional under this tree: infinite order at {a!r}")
        total *= o
    return total


def top_total_degree(t: FullBinaryTree, b: Braiding) -> int:
    """Largest total degree with a nonzero graded piece, per the monomial
    prediction."""
    return sum((o - 1) * t.weight(a) for o, a in zip(generator_orders(t, b), t.nbar2()))
