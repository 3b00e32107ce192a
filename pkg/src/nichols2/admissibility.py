"""Node scalars of a (tree, braiding) pair and the admissibility predicate.

The scalar lambda decides branching (an inner node must have lambda != 0,
a leaf lambda == 0), mu feeds the coefficients of the mixed commutation
relations, and nu is the obstruction that must vanish where a mixed
relation crosses a long left branch.  Tree reconstruction grows a tree
from the root using lambda alone and then cross-checks the branch lengths
against independent closed-form minimality conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cyclotomic import CycNum, ONE, ZERO, qfact, qnum
from .fbtree import LGH, RGH, FullBinaryTree, TREES, Virtual
from .braidedalg import Braiding


class StructureError(ValueError):
    """The tree violates the standing branch-length hypothesis."""


class ScalarDomainError(ValueError):
    """A node scalar was requested outside its domain."""


class NuDenominatorError(ArithmeticError):
    """A q-integer denominator in nu vanished; the node is inadmissible."""

    def __init__(self, node, which: str):
        super().__init__(f"vanishing {which} denominator at node {node}")
        self.node = node


class ReconstructionError(RuntimeError):
    pass


class PTableMismatch(AssertionError):
    def __init__(self, type_id: int, case_id: int, index: int, got, want):
        super().__init__(
            f"type {type_id} case {case_id}: p_{index + 1} computed {got} != table {want}")
        self.index = index


def p_of(t: FullBinaryTree, b: Braiding, a) -> CycNum:
    """p_a = chi(a, a)^-1, the inverse self-pairing scalar of a node."""
    return b.chi_nodes(t, a, a).inv()


@lru_cache(maxsize=None)
def _lambda_cached(t: FullBinaryTree, b: Braiding, a) -> CycNum:
    if isinstance(a, Virtual):
        return ZERO
    par = t.parent[a]
    if par is None:
        return b.q21.inv() - b.q12
    step = b.chi_nodes(t, t.lgf(a), t.rgf(a)).inv() - b.chi_nodes(t, t.rgf(a), t.lgf(a))
    return step + _lambda_cached(t, b, par)


def lambda_of(t: FullBinaryTree, b: Braiding, a) -> CycNum:
    """The branching scalar: chi(lgf, rgf)^-1 - chi(rgf, lgf) accumulated
    down the ancestor chain (zero on the virtual nodes)."""
    return _lambda_cached(t, b, a)


def lambda_closed(t: FullBinaryTree, b: Braiding, a: int, side: str) -> CycNum:
    """Closed form for lambda on the outer spines, in the branch length
    alone.  side "right" requires rgf(a) = RGH, side "left" lgf(a) = LGH.

    An inverted prefactor (q11 q12 q22)^-1 would contradict the recursion
    already at the root; the prefactor below is the one that agrees with
    lambda_of on every qualifying node.
    """
    prefactor = b.q11 * b.q12 * b.q22
    p_root = (b.q11 * b.q12 * b.q21 * b.q22).inv()
    if side == "right":
        if t.rgf(a) is not RGH:
            raise ScalarDomainError(f"node {a} is not on the right spine")
        m = t.lgfl(a)
        return prefactor * (p_root - b.q22.inv() * b.q11 ** (m - 2)) * qnum(m, b.q11.inv())
    if side == "left":
        if t.lgf(a) is not LGH:
            raise ScalarDomainError(f"node {a} is not on the left spine")
        m = t.rgfl(a)
        return prefactor * (p_root - b.q11.inv() * b.q22 ** (m - 2)) * qnum(m, b.q22.inv())
    raise ScalarDomainError(f"unknown side {side!r}")


def mu_of(t: FullBinaryTree, b: Braiding, a: int) -> CycNum:
    """Coefficient scalar for mixed relations; defined when lgf(a) is real."""
    c = t.lgf(a)
    if not isinstance(c, int):
        raise ScalarDomainError(f"mu undefined: lgf({a}) is virtual")
    if t.rch(c) == a:
        return lambda_of(t, b, a)
    return lambda_of(t, b, a) * mu_of(t, b, t.rgf(a))


def nu_of(t: FullBinaryTree, b: Braiding, a: int) -> CycNum:
    """Obstruction scalar at a node with a real left godfather and
    rgfl <= 2; raises NuDenominatorError when a q-integer denominator
    vanishes (which itself signals inadmissibility)."""
    c = t.lgf(a)
    if not isinstance(c, int):
        raise ScalarDomainError(f"nu undefined: lgf({a}) is virtual")
    k = t.rgfl(a)
    if k > 2:
        raise ScalarDomainError(f"nu undefined: rgfl({a}) = {k} > 2")
    f = t.rgf(c)
    p_c = p_of(t, b, c)
    p_f = p_of(t, b, f)
    two_f = qnum(2, p_f)
    two_c = qnum(2, p_c)
    if two_f.is_zero():
        raise NuDenominatorError(a, "[2]_{p_f}")
    if two_c.is_zero():
        raise NuDenominatorError(a, "[2]_{p_c}")
    if k == 1:
        return (b.chi_nodes(t, t.lgf(c), a).inv() - b.chi_nodes(t, a, t.lgf(c))
                + lambda_of(t, b, a) * lambda_of(t, b, c) * (two_f.inv() - two_c.inv()))
    three_c = qnum(3, p_c)
    if three_c.is_zero():
        raise NuDenominatorError(a, "[3]_{p_c}")
    rc = t.rch(c)
    return (b.chi_nodes(t, t.lgf(c), rc).inv()
            + lambda_of(t, b, c) * lambda_of(t, b, rc) * two_c.inv()
            * (two_f.inv() - three_c.inv()))


@dataclass(frozen=True)
class NodeScalars:
    lam: CycNum
    p: CycNum
    mu: CycNum | None
    nu: CycNum | None


def node_scalars(t: FullBinaryTree, b: Braiding, a: int) -> NodeScalars:
    """All defined scalars at one node."""
    mu = nu = None
    if isinstance(t.lgf(a), int):
        mu = mu_of(t, b, a)
        if t.rgfl(a) <= 2:
            try:
                nu = nu_of(t, b, a)
            except NuDenominatorError:
                nu = None
    return NodeScalars(lambda_of(t, b, a), p_of(t, b, a), mu, nu)


def check_branch_hypothesis(t: FullBinaryTree) -> None:
    """The standing structural hypothesis: below every inner node, either
    the left child's right branch or the right child's left branch has
    length at most 3."""
    for a in t.internal():
        if min(t.rchl(t.lch(a)), t.lchl(t.rch(a))) > 3:
            raise StructureError(f"node {a} violates the branch-length hypothesis")


@dataclass
class AdmissibilityReport:
    admissible: bool
    failures: list = field(default_factory=list)  # (condition id, node, explanation)
    checked_up_to: int = 0

    def to_json_dict(self):
        return {
            "admissible": self.admissible,
            "checked_up_to": self.checked_up_to,
            "failures": [
                {"condition": cond, "node": repr(node), "explanation": why}
                for cond, node, why in self.failures
            ],
        }


def is_admissible(t: FullBinaryTree, b: Braiding, n: int) -> AdmissibilityReport:
    """Evaluate the four admissibility conditions up to label weight n."""
    check_branch_hypothesis(t)
    failures = []

    for a in t.nodes():
        if t.weight(a) > n:
            continue
        lam = lambda_of(t, b, a)
        if t.is_leaf(a) and not lam.is_zero():
            failures.append(("branching", a, "leaf with nonzero lambda"))
        if not t.is_leaf(a) and lam.is_zero():
            failures.append(("branching", a, "inner node with lambda = 0"))

    for a in t.nbar2():
        if t.weight(a) > n:
            continue
        ordp = p_of(t, b, a).order()
        if ordp is None:
            failures.append(("p-root", a, "p is not a root of unity"))
        elif ordp == 1:
            failures.append(("p-root", a, "p = 1"))

    for a in t.internal():
        if t.is_leaf(a):
            continue
        la = t.lch(a)
        if not t.is_leaf(la) and t.weight(la) <= n:
            if p_of(t, b, a) == -ONE:
                failures.append(("p-not-minus-one", a, "p_a = -1 with inner left child"))
            if p_of(t, b, t.rgf(a)) == -ONE:
                failures.append(("p-not-minus-one", a, "p_{rgf a} = -1 with inner left child"))

    for bb in t.internal():
        c = t.lgf(bb)
        if not (isinstance(c, int) and not t.is_leaf(c)):
            continue
        if t.weight(bb) + t.weight(t.lgf(c)) > n:
            continue
        k = t.rgfl(bb)
        p_c = p_of(t, b, c)
        if qfact(k + 1, p_c).is_zero():
            failures.append(("q-factorial", bb, f"[{k + 1}]! at p_c vanishes"))
            continue
        if t.rchl(t.lch(c)) <= k:
            continue
        if k > 2:
            failures.append(("mixed-relation", bb, "no admissible branch configuration"))
            continue
        try:
            nu = nu_of(t, b, bb)
        except NuDenominatorError as exc:
            failures.append(("mixed-relation", bb, str(exc)))
            continue
        if not nu.is_zero():
            failures.append(("mixed-relation", bb, "nu does not vanish"))

    return AdmissibilityReport(not failures, failures, n)


# -- tree reconstruction -------------------------------------------------------


def _branch_length_formula_checks(t: FullBinaryTree, b: Braiding) -> None:
    # Independent validation of the reconstructed branch lengths: each
    # outer spine length and each inner left-branch length must be the
    # first index where a closed-form expression vanishes.
    q11i, q22i = b.q11.inv(), b.q22.inv()
    p_root = (b.q11 * b.q12 * b.q21 * b.q22).inv()

    def right_expr(m):
        return qnum(m, q11i) * (b.q11 ** (1 - m) * p_root - q11i * q22i)

    def left_expr(m):
        return qnum(m, q22i) * (b.q22 ** (1 - m) * p_root - q22i * q11i)

    def check_min(length, expr, what):
        for m in range(1, length + 1):
            val = expr(m)
            if m < length and val.is_zero():
                raise ReconstructionError(f"{what}: expression vanishes early at {m}")
            if m == length and not val.is_zero():
                raise ReconstructionError(f"{what}: expression nonzero at {m}")

    check_min(t.rchl(0), right_expr, "right spine length")
    check_min(t.lchl(0), left_expr, "left spine length")
    for a in t.internal():
        p_a = p_of(t, b, a)
        s = t.lchl(t.rch(a))
        p_r = p_of(t, b, t.rgf(a))
        p_l = p_of(t, b, t.lgf(a))

        def inner_expr(m, p_a=p_a, s=s, p_r=p_r, p_l=p_l):
            return qnum(m + s, p_a) * (p_r * p_a ** s - p_l * p_a ** m)

        check_min(t.rchl(t.lch(a)), inner_expr, f"left branch below node {a}")


def reconstruct_tree(b: Braiding, max_weight: int = 16) -> FullBinaryTree:
    """Grow the tree of a braiding from the root: a node branches exactly
    when its lambda is nonzero.

    Fails when a branching node would exceed max_weight (the braiding is
    then possibly of infinite type, or the cap too small) or when a
    branching node's p is not a root of unity.  The finished tree is
    cross-checked against closed-form branch-length minimality conditions.
    """
    if max_weight < 2:
        raise ValueError("max_weight must be at least 2")
    lam_root = b.q21.inv() - b.q12

    def grow(stbr, stbr_lgf, stbr_rgf, lam):
        if lam.is_zero():
            return None
        weight = stbr[0] + stbr[1]
        if weight > max_weight:
            raise ReconstructionError(
                f"branching node at weight {weight} exceeds the cap {max_weight}: "
                "possibly infinite-dimensional or cap too small")
        p_a = b.chi(stbr, stbr).inv()
        if p_a.order() is None:
            raise ReconstructionError(
                f"branching node at label {stbr} has non-root-of-unity p")
        lch_stbr = (stbr_lgf[0] + stbr[0], stbr_lgf[1] + stbr[1])
        rch_stbr = (stbr[0] + stbr_rgf[0], stbr[1] + stbr_rgf[1])
        lam_lch = b.chi(stbr_lgf, stbr).inv() - b.chi(stbr, stbr_lgf) + lam
        lam_rch = b.chi(stbr, stbr_rgf).inv() - b.chi(stbr_rgf, stbr) + lam
        return (grow(lch_stbr, stbr_lgf, stbr, lam_lch),
                grow(rch_stbr, stbr, stbr_rgf, lam_rch))

    shape = grow((1, 1), (0, 1), (1, 0), lam_root)
    t = FullBinaryTree(shape)
    _branch_length_formula_checks(t, b)
    return t


# -- golden per-type scalar tables ----------------------------------------------

# Closed forms for the p-sequence over the inner nodes in ascending Q order,
# per classification family and case, written in q11, q := q12*q21, and
# q0 := q11*q12*q21.  Signs match the family conditions in the classify
# module.
def _gp(*fns):
    return tuple(fns)


GOLDEN_P = {
    (1, 1): _gp(),
    (2, 1): _gp(lambda q11, q, q22: (q11 * q * q22).inv()),
    (3, 1): _gp(lambda q11, q, q22: q11 / q22,
                lambda q11, q, q22: q22.inv()),
    (3, 2): _gp(lambda q11, q, q22: q11.inv(),
                lambda q11, q, q22: q22 / q11),
    (3, 3): _gp(lambda q11, q, q22: q11,
                lambda q11, q, q22: -ONE),
    (4, 1): _gp(lambda q11, q, q22: -ONE,
                lambda q11, q, q22: (q11 * q) ** 3,
                lambda q11, q, q22: -ONE),
    (4, 2): _gp(lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -q,
                lambda q11, q, q22: -ONE),
    (5, 1): _gp(lambda q11, q, q22: -(q ** 3),
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -(q ** 2)),
    (5, 2): _gp(lambda q11, q, q22: (q11 * q) ** 5,
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -((q11 * q) ** 2)),
    (6, 1): _gp(lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -(q11 ** -2),
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -(q11 ** -3)),
    (7, 1): _gp(lambda q11, q, q22: -(q11 ** 2),
                lambda q11, q, q22: -(q11 ** 2),
                lambda q11, q, q22: -ONE),
    (7, 2): _gp(lambda q11, q, q22: -(q ** 2),
                lambda q11, q, q22: q ** 4,
                lambda q11, q, q22: -ONE),
    (8, 1): _gp(lambda q11, q, q22: q11 ** -1,
                lambda q11, q, q22: q11 ** -3,
                lambda q11, q, q22: q11 ** -1,
                lambda q11, q, q22: q11 ** -3),
    (8, 2): _gp(lambda q11, q, q22: -(q ** 2),
                lambda q11, q, q22: -q,
                lambda q11, q, q22: -(q ** 2),
                lambda q11, q, q22: -ONE),
    (8, 3): _gp(lambda q11, q, q22: -q,
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: q ** 2,
                lambda q11, q, q22: q ** 3),
    (8, 4): _gp(lambda q11, q, q22: -(q ** 2),
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: -(q ** 3),
                lambda q11, q, q22: -ONE),
    (9, 1): _gp(lambda q11, q, q22: -(q ** 2),
                lambda q11, q, q22: -ONE,
                lambda q11, q, q22: q ** 3,
                lambda q11, q, q22: -q),
    (10, 1): _gp(lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -q,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 8,
                 lambda q11, q, q22: q ** 6,
                 lambda q11, q, q22: -(q ** -1)),
    (11, 1): _gp(lambda q11, q, q22: -(q11 ** 2),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q11 ** 9,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 2),
                 lambda q11, q, q22: -ONE),
    (12, 1): _gp(lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** -3),
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -(q11 ** -3),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** -5)),
    (13, 1): _gp(lambda q11, q, q22: -(q ** 6),
                 lambda q11, q, q22: -(q ** 4),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** -1,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q ** 4)),
    (14, 1): _gp(lambda q11, q, q22: -(q11 ** 3),
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -(q11 ** 3),
                 lambda q11, q, q22: -ONE),
    (15, 1): _gp(lambda q11, q, q22: -(q ** 3),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 10,
                 lambda q11, q, q22: q ** 11,
                 lambda q11, q, q22: q ** 10,
                 lambda q11, q, q22: -ONE),
    (16, 1): _gp(lambda q11, q, q22: -(q11 ** 3),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 3),
                 lambda q11, q, q22: -ONE),
    (16, 2): _gp(lambda q11, q, q22: -(q ** 3),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 4,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 3,
                 lambda q11, q, q22: -ONE),
    (17, 1): _gp(lambda q11, q, q22: -(q ** 7),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 8,
                 lambda q11, q, q22: -(q ** 6),
                 lambda q11, q, q22: q ** 5,
                 lambda q11, q, q22: -(q ** 6)),
    (18, 1): _gp(lambda q11, q, q22: -(q ** 9),
                 lambda q11, q, q22: -(q ** -2),
                 lambda q11, q, q22: -(q ** 9),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 10,
                 lambda q11, q, q22: -(q ** 8)),
    (19, 1): _gp(lambda q11, q, q22: -(q11 ** 2),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q11 ** -1,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 2),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q11 ** -1,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 2),
                 lambda q11, q, q22: -ONE),
    (20, 1): _gp(lambda q11, q, q22: -(q ** 5),
                 lambda q11, q, q22: q ** 7,
                 lambda q11, q, q22: -(q ** 5),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q ** 6,
                 lambda q11, q, q22: -(q ** 2)),
    (21, 1): _gp(lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -(q11 ** 6),
                 lambda q11, q, q22: q11,
                 lambda q11, q, q22: -(q11 ** 6),
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -ONE),
    (22, 1): _gp(lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q11 ** -1,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: q11 ** -1,
                 lambda q11, q, q22: -ONE,
                 lambda q11, q, q22: -(q11 ** 4),
                 lambda q11, q, q22: -ONE),
}

def _ith(i):
    # i-th inner node (1-based) in the ascending Q order.
    return lambda t: sorted_internal(t)[i - 1]


# Known closed forms for lambda at particular nodes of some families, as
# (node selector, closed form) pairs; the q in the family-18 entries is
# q12*q21.  The family-2 entry sits at the left leaf: its vanishing is
# exactly the leaf condition there.
GOLDEN_LAMBDA = {
    (2, 1): (
        (lambda t: t.lch(0),
         lambda b, q11, q, q22: (ONE + q22.inv()) * (b.q21.inv() - b.q12 * q22)),
    ),
    (11, 1): (
        (_ith(3), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -2 + q11 ** -4) * (ONE - q11)),
        (_ith(4), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -2) * (ONE + q11 ** -4) * (ONE + q11 ** 3)),
    ),
    (18, 1): (
        (_ith(3), lambda b, q11, q, q22: b.q21.inv() * (ONE + q) * (q ** 4 + q ** 11)),
        (_ith(5), lambda b, q11, q, q22: b.q21.inv() * (q ** 5 - q ** -4)),
    ),
    (19, 1): (
        (_ith(5), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11) * (ONE - q11 ** -2 + q11 ** -4)),
        (_ith(3), lambda b, q11, q, q22: b.q21.inv() * (ONE + q11 ** -1) * (ONE - q11 ** -2)),
        (_ith(7), lambda b, q11, q, q22: b.q21.inv() * (ONE + q11 ** -1) * (ONE - q11 ** -2)),
        (_ith(4), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -3)),
        (_ith(8), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -3)),
    ),
    (22, 1): (
        (_ith(5), lambda b, q11, q, q22: b.q21.inv() * (ONE + q11 ** -1) * (ONE - q11 ** -4)),
        (_ith(9), lambda b, q11, q, q22: b.q21.inv() * (ONE + q11 ** -1) * (ONE - q11 ** -4)),
        (_ith(6), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -5)),
        (_ith(8), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -5)),
        (_ith(10), lambda b, q11, q, q22: b.q21.inv() * (ONE - q11 ** -5)),
    ),
}


def sorted_internal(t: FullBinaryTree) -> list[int]:
    """Inner nodes ascending in the Q order (the a_i indexing)."""
    return [a for a in t.nbar2() if isinstance(a, int)]


def p_table(type_id: int, b: Braiding, case_id: int = 1) -> list[CycNum]:
    """Compute the p-sequence of a type's tree under a braiding and check it
    against the stored closed forms; mismatches raise PTableMismatch."""
    t = TREES[type_id]
    templates = GOLDEN_P.get((type_id, case_id))
    if templates is None:
        raise KeyError(f"no p table for type {type_id} case {case_id}")
    q = b.q12 * b.q21
    computed = [p_of(t, b, a) for a in sorted_internal(t)]
    if len(computed) != len(templates):
        raise PTableMismatch(type_id, case_id, len(templates), len(computed), "length")
    for i, (got, fn) in enumerate(zip(computed, templates)):
        want = fn(b.q11, q, b.q22)
        if got != want:
            raise PTableMismatch(type_id, case_id, i, got, want)
    return computed


def lambda_table(type_id: int, b: Braiding, case_id: int = 1) -> list[CycNum]:
    """Computed lambda values at the nodes with listed closed forms, checked
    against those forms."""
    t = TREES[type_id]
    q = b.q12 * b.q21
    out = []
    for i, (pick, fn) in enumerate(GOLDEN_LAMBDA.get((type_id, case_id), ())):
        got = lambda_of(t, b, pick(t))
        want = fn(b, b.q11, q, b.q22)
        if got != want:
            raise PTableMismatch(type_id, case_id, i, got, want)
        out.append(got)
    return out
