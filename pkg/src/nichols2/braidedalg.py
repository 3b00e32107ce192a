"""The free braided algebra over a rank-2 diagonal braiding.

The braiding is a 2x2 matrix of nonzero scalars q_ij.  Everything the group
action contributes to downstream computations factors through the bicharacter
chi on Z^2 x Z^2, so no group data is represented.  Multidegrees are pairs
(d1, d2) with d1 counting x1-letters; the bracket element of a tree node is
homogeneous with multidegree equal to the node's Stern-Brocot label.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycNum, ONE, ZERO, canonical_conductor, euler_phi, root_of_unity
from .fbtree import LGH, RGH, FullBinaryTree
from .lyndon import Word, is_lyndon, shirshow


class BraidedError(ValueError):
    pass


class Braiding:
    """Immutable 2x2 matrix (q_ij) of nonzero scalars."""

    __slots__ = ("q11", "q12", "q21", "q22", "_root_data", "_chi_cache", "_hash")

    def __init__(self, q11: CycNum, q12: CycNum, q21: CycNum, q22: CycNum):
        entries = (q11, q12, q21, q22)
        for name, q in zip(("q11", "q12", "q21", "q22"), entries):
            if not isinstance(q, CycNum):
                raise BraidedError(f"{name} must be a CycNum")
            if q.is_zero():
                raise BraidedError(f"{name} must be nonzero")
        object.__setattr__(self, "q11", q11)
        object.__setattr__(self, "q12", q12)
        object.__setattr__(self, "q21", q21)
        object.__setattr__(self, "q22", q22)
        object.__setattr__(self, "_root_data", self._find_root_data())
        object.__setattr__(self, "_chi_cache", {})
        object.__setattr__(self, "_hash", hash(entries))

    def __setattr__(self, *args):
        raise AttributeError("Braiding is immutable")

    def _find_root_data(self):
        # When all entries are roots of unity they generate a cyclic group
        # of order L; a bicharacter value is then a single power of zeta_L,
        # which makes chi an O(1) table lookup instead of four bignum powers.
        # Exponents are found at each entry's own (small) order and rescaled.
        orders = [q.order() for q in (self.q11, self.q12, self.q21, self.q22)]
        if any(o is None for o in orders):
            return None
        L = math.lcm(2, *orders)
        exps = []
        for q, o in zip((self.q11, self.q12, self.q21, self.q22), orders):
            e = next((k for k in range(o) if root_of_unity(k, o) == q), None)
            if e is None:
                return None  # pragma: no cover - q has order o by construction
            exps.append(e * (L // o) % L)
        return L, tuple(exps)

    def entries(self) -> tuple[CycNum, CycNum, CycNum, CycNum]:
        return (self.q11, self.q12, self.q21, self.q22)

    def __eq__(self, other):
        if not isinstance(other, Braiding):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Braiding({self.q11}, {self.q12}, {self.q21}, {self.q22})"

    def chi(self, d: tuple[int, int], e: tuple[int, int]) -> CycNum:
        """chi(d, e) = q11^(d1 e1) q12^(d1 e2) q21^(d2 e1) q22^(d2 e2)."""
        d1, d2 = d
        e1, e2 = e
        if self._root_data is not None:
            L, (a11, a12, a21, a22) = self._root_data
            k = (a11 * d1 * e1 + a12 * d1 * e2 + a21 * d2 * e1 + a22 * d2 * e2) % L
            cached = self._chi_cache.get(k)
            if cached is None:
                cached = self._chi_cache[k] = root_of_unity(k, L)
            return cached
        return (self.q11 ** (d1 * e1) * self.q12 ** (d1 * e2)
                * self.q21 ** (d2 * e1) * self.q22 ** (d2 * e2))

    def chi_nodes(self, t: FullBinaryTree, a, b) -> CycNum:
        """chi evaluated on the labels of two extended nodes."""
        return self.chi(t.stern_brocot(a), t.stern_brocot(b))


def chi(b: Braiding, d: tuple[int, int], e: tuple[int, int]) -> CycNum:
    return b.chi(d, e)


_LETTER_DEGREE = {1: (1, 0), 2: (0, 1)}


class NCPoly:
    """Sparse noncommutative polynomial in x1, x2 (or the dual y1, y2).

    Terms map words over the index alphabet {1, 2} to nonzero coefficients.
    The dual flag distinguishes the y-side; mixing sides is an error.
    """

    __slots__ = ("terms", "dual")

    def __init__(self, terms: dict, dual: bool = False):
        clean = {w: c for w, c in terms.items() if not c.is_zero()}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "dual", dual)

    def __setattr__(self, *args):
        raise AttributeError("NCPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(dual: bool = False) -> NCPoly:
        return NCPoly({}, dual)

    @staticmethod
    def unit(dual: bool = False) -> NCPoly:
        return NCPoly({(): ONE}, dual)

    @staticmethod
    def generator(i: int, dual: bool = False) -> NCPoly:
        if i not in (1, 2):
            raise BraidedError("generator index must be 1 or 2")
        return NCPoly({(i,): ONE}, dual)

    @staticmethod
    def scalar(c: CycNum, dual: bool = False) -> NCPoly:
        return NCPoly({(): c}, dual)

    # -- ring operations ----------------------------------------------------

    def _check_side(self, other: NCPoly):
        if self.dual != other.dual:
            raise BraidedError("cannot mix primal and dual polynomials")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check_side(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NCPoly(out, self.dual)

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __neg__(self) -> NCPoly:
        return NCPoly({w: -c for w, c in self.terms.items()}, self.dual)

    def __mul__(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            self._check_side(other)
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    s = out.get(w)
                    out[w] = c if s is None else s + c
            return NCPoly(out, self.dual)
        return self.scale(other)

    def __rmul__(self, other) -> NCPoly:
        return self.scale(other)

    def scale(self, c) -> NCPoly:
        if isinstance(c, int):
            from fractions import Fraction
            c = CycNum.from_rational(Fraction(c))
        if c.is_zero():
            return NCPoly.zero(self.dual)
        return NCPoly({w: c * v for w, v in self.terms.items()}, self.dual)

    def __pow__(self, e: int) -> NCPoly:
        if e < 0:
            raise BraidedError("negative power of a polynomial")
        out = NCPoly.unit(self.dual)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.dual == other.dual and self.terms == other.terms

    def __hash__(self):
        return hash((self.dual, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading --------------------------------------------------------------

    def multidegree(self) -> tuple[int, int] | None:
        """(x1-degree, x2-degree) if homogeneous, else None; zero counts as (0, 0)."""
        degs = {(w.count(1), w.count(2)) for w in self.terms}
        if not degs:
            return (0, 0)
        if len(degs) > 1:
            return None
        return degs.pop()

    def total_degree(self) -> int | None:
        d = self.multidegree()
        return None if d is None else d[0] + d[1]

    def is_homogeneous(self) -> bool:
        return self.multidegree() is not None

    def iota(self) -> NCPoly:
        """The side-swapping algebra isomorphism x_i <-> y_i (a flag flip)."""
        return NCPoly(dict(self.terms), not self.dual)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        return f"NCPoly({format_ncpoly(self)!r})"


def tau0(t: FullBinaryTree, b: Braiding, a) -> NCPoly:
    """Iterated q-commutator attached to an extended node.

    tau0(LGH) = x2 and tau0(RGH) = x1; an inner or leaf node gets
    tau0(rgf a) tau0(lgf a) - chi(rgf a, lgf a) tau0(lgf a) tau0(rgf a).
    Its multidegree equals the node's Stern-Brocot label.
    """
    return _tau0_cached(t, b, a)


@lru_cache(maxsize=None)
def _tau0_cached(t: FullBinaryTree, b: Braiding, a) -> NCPoly:
    if a is LGH:
        return NCPoly.generator(2)
    if a is RGH:
        return NCPoly.generator(1)
    hi = _tau0_cached(t, b, t.rgf(a))
    lo = _tau0_cached(t, b, t.lgf(a))
    twist = b.chi_nodes(t, t.rgf(a), t.lgf(a))
    return hi * lo - twist * (lo * hi)


def bracket_word(b: Braiding, u: Word) -> NCPoly:
    """Bracket element of a Lyndon word: single letters map to the generators
    (a -> x2, b -> x1) and u = vw splits by the standard decomposition into
    [w][v] - chi(deg w, deg v) [v][w]."""
    if len(u) == 0 or not is_lyndon(u):
        raise BraidedError(f"{u!r} is not a Lyndon word")
    return _bracket_cached(b, u)


@lru_cache(maxsize=None)
def _bracket_cached(b: Braiding, u: Word) -> NCPoly:
    if len(u) == 1:
        return NCPoly.generator(1 if u.bits else 2)
    v, w = shirshow(u)
    pv = _bracket_cached(b, v)
    pw = _bracket_cached(b, w)
    dv = (v.count_b(), len(v) - v.count_b())
    dw = (w.count_b(), len(w) - w.count_b())
    return pw * pv - b.chi(dw, dv) * (pv * pw)


# -- quantum symmetrizer ------------------------------------------------------


class _SymEngine:
    """Per-braiding workspace for symmetrizer images.

    When every braiding entry is a root of unity, image coefficients are
    carried in the group ring of the cyclic root group (exponent ->
    multiplicity), where the inverse twists of the symmetrizer are plain
    exponent shifts; the coefficients become integer coordinate vectors
    only on the way out.  Otherwise coefficients are generic coordinate
    vectors in the common cyclotomic field.
    """

    def __init__(self, b: Braiding):
        self.b = b
        rd = b._root_data
        if rd is not None:
            self.L, self.exps = rd
            self.conductor = canonical_conductor(self.L)
        else:
            self.L = None
            n = 1
            for q in b.entries():
                n = math.lcm(n, q.conductor)
            self.conductor = canonical_conductor(n)
        self.deg = euler_phi(self.conductor)
        self._rootvecs: dict[int, tuple[int, ...]] = {}
        self.cache: dict[tuple[int, ...], dict] = {}
        self._vec_cache: dict[tuple[int, ...], dict] = {}
        if rd is not None:
            e11, e12, e21, e22 = self.exps
            # Exponent of chi(e_i, e_j) in the root group, indexed [i][j].
            self._chi_exp = {(1, 1): e11, (1, 2): e12, (2, 1): e21, (2, 2): e22}

    # -- root-mode coefficient helpers --------------------------------------

    def _rootvec(self, k: int) -> tuple[int, ...]:
        vec = self._rootvecs.get(k)
        if vec is None:
            from .cyclotomic import root_of_unity as _ru
            vec = tuple(int(c) for c in _ru(k, self.L)._lift(self.conductor))
            self._rootvecs[k] = vec
        return vec

    def image(self, word: tuple[int, ...]) -> dict:
        """Raw image of a basis word; coefficients in engine representation."""
        hit = self.cache.get(word)
        if hit is not None:
            return hit
        m = len(word)
        if self.L is not None:
            res = self._image_root(word, m)
        else:
            res = self._image_generic(word, m)
        self.cache[word] = res
        return res

    def _image_root(self, word, m):
        if m <= 1:
            return {word: {0: 1}}
        L = self.L
        chi_exp = self._chi_exp
        out: dict = {}
        for k in range(m):
            letter = word[k]
            shift = 0
            for l in range(k):
                shift -= chi_exp[(letter, word[l])]
            shift %= L
            rest = word[:k] + word[k + 1:]
            for tail, coeff in self.image(rest).items():
                w = (letter,) + tail
                acc = out.get(w)
                if acc is None:
                    acc = out[w] = {}
                for e, mult in coeff.items():
                    key = (e + shift) % L
                    acc[key] = acc.get(key, 0) + mult
        return out

    def _image_generic(self, word, m):
        unit = tuple([Fraction(1)] + [Fraction(0)] * (self.deg - 1))
        if m <= 1:
            return {word: unit}
        out: dict = {}
        for k in range(m):
            letter = word[k]
            coeff = ONE
            ek = _LETTER_DEGREE[letter]
            for l in range(k):
                coeff = coeff * self.b.chi(ek, _LETTER_DEGREE[word[l]]).inv()
            cvec = coeff._lift(self.conductor)
            rest = word[:k] + word[k + 1:]
            for tail, tvec in self.image(rest).items():
                w = (letter,) + tail
                prod = self._vec_mul(cvec, tvec)
                acc = out.get(w)
                out[w] = prod if acc is None else tuple(x + y for x, y in zip(acc, prod))
        return out

    def _vec_mul(self, a, b):
        deg = self.deg
        if deg == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        from .cyclotomic import _reduction_rows
        rows = _reduction_rows(self.conductor)
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                red = rows[k - deg]
                for j in range(deg):
                    if red[j]:
                        out[j] += c * red[j]
        return tuple(out)

    def coeff_to_vec(self, coeff) -> tuple:
        """Engine coefficient to a coordinate vector at self.conductor."""
        if self.L is None:
            return tuple(coeff)
        out = [0] * self.deg
        for e, mult in coeff.items():
            if mult:
                vec = self._rootvec(e)
                for j in range(self.deg):
                    if vec[j]:
                        out[j] += mult * vec[j]
        return tuple(out)

    def image_vectors(self, word: tuple[int, ...]) -> dict:
        """Image of a basis word with coefficients as coordinate vectors,
        zero coefficients dropped."""
        hit = self._vec_cache.get(word)
        if hit is None:
            hit = {}
            for w, coeff in self.image(word).items():
                vec = self.coeff_to_vec(coeff)
                if any(vec):
                    hit[w] = vec
            self._vec_cache[word] = hit
        return hit

    def image_cycnums(self, word: tuple[int, ...]) -> dict:
        return {w: CycNum(self.conductor, vec, _demote=False)
                for w, vec in self.image_vectors(word).items()}


_ENGINES: dict[Braiding, _SymEngine] = {}


def _engine(b: Braiding) -> _SymEngine:
    eng = _ENGINES.get(b)
    if eng is None:
        eng = _ENGINES[b] = _SymEngine(b)
    return eng


def basis_words(m: int) -> list[tuple[int, ...]]:
    """All words of length m over {1, 2} in lexicographic order."""
    words = [()]
    for _ in range(m):
        words = [w + (i,) for w in words for i in (1, 2)]
    return sorted(words)


def symmetrizer(b: Braiding, m: int) -> list[list[CycNum]]:
    """Matrix of the degree-m quantum symmetrizer in the word basis.

    Entry [i][j] is the coefficient of basis word i in the image of basis
    word j; the kernel of this matrix is the degree-m relation space.
    """
    if m < 1:
        raise BraidedError("symmetrizer degree must be positive")
    words = basis_words(m)
    index = {w: i for i, w in enumerate(words)}
    eng = _engine(b)
    n = len(words)
    mat = [[ZERO] * n for _ in range(n)]
    for j, w in enumerate(words):
        for img, c in eng.image_cycnums(w).items():
            mat[index[img]][j] = c
    return mat


def symmetrize_poly(b: Braiding, rho: NCPoly) -> NCPoly:
    """Apply the quantum symmetrizer of the appropriate degree to a
    homogeneous polynomial."""
    eng = _engine(b)
    out: dict = {}
    for w, c in rho.terms.items():
        for img, k in eng.image_cycnums(w).items():
            add = c * k
            s = out.get(img)
            out[img] = add if s is None else s + add
    return NCPoly(out, rho.dual)


# -- skew derivations and the pairing ----------------------------------------


def skew_derivation(b: Braiding, i: int, rho: NCPoly) -> NCPoly:
    """The twisted letter-deleting operator <y_i, .> on primal polynomials."""
    if rho.dual:
        raise BraidedError("skew derivations act on primal polynomials")
    if i not in (1, 2):
        raise BraidedError("derivation index must be 1 or 2")
    ei = _LETTER_DEGREE[i]
    out: dict = {}
    for word, c in rho.terms.items():
        twist = ONE
        for k, letter in enumerate(word):
            if letter == i:
                w = word[:k] + word[k + 1:]
                add = c * twist
                s = out.get(w)
                out[w] = add if s is None else s + add
            twist = twist * b.chi(ei, _LETTER_DEGREE[letter]).inv()
    return NCPoly(out, False)


def pair(b: Braiding, f: NCPoly, rho: NCPoly) -> NCPoly:
    """Evaluate a dual polynomial on a primal one: a word y_{i1}...y_{im}
    acts as the composition of skew derivations, innermost letter first."""
    if not f.dual:
        raise BraidedError("first pairing argument must be dual")
    if rho.dual:
        raise BraidedError("second pairing argument must be primal")
    total = NCPoly.zero()
    for word, c in f.terms.items():
        acc = rho
        for letter in reversed(word):
            if acc.is_zero():
                break
            acc = skew_derivation(b, letter, acc)
        total = total + c * acc
    return total


def is_zero_in_nichols(b: Braiding, rho: NCPoly, method: str = "symmetrizer") -> bool:
    """Whether a homogeneous element maps to zero in the braided quotient.

    method "symmetrizer": the coefficient vector lies in the kernel of the
    degree-m symmetrizer.  method "derivations": recursively, both skew
    derivations vanish (a degree-0 element is zero iff its scalar is).
    """
    if rho.dual:
        raise BraidedError("zero test applies to primal polynomials")
    if rho.is_zero():
        return True
    if len({len(w) for w in rho.terms}) > 1:
        raise BraidedError("zero test requires a polynomial homogeneous in total degree")
    degree = len(next(iter(rho.terms)))
    if method == "symmetrizer":
        if degree == 0:
            return rho.is_zero()
        return symmetrize_poly(b, rho).is_zero()
    if method == "derivations":
        if degree == 0:
            return rho.is_zero()
        return (is_zero_in_nichols(b, skew_derivation(b, 1, rho), "derivations")
                and is_zero_in_nichols(b, skew_derivation(b, 2, rho), "derivations"))
    raise BraidedError(f"unknown method {method!r}")


# -- serialization -------------------------------------------------------------


def _format_coeff(c: CycNum) -> tuple[str, str]:
    """(sign, body) where body is empty for coefficient magnitude one."""
    from .cyclotomic import MINUS_ONE, as_root_exponent, format_scalar

    if c == ONE:
        return "+", ""
    if c == MINUS_ONE:
        return "-", ""
    pos = as_root_exponent(c)
    neg = as_root_exponent(-c)
    if pos is not None:
        # Prefer the sign that yields the smaller (conductor, exponent).
        if (neg[1], neg[0]) < (pos[1], pos[0]):
            return "-", f"({neg[0]}/{neg[1]})"
        return "+", f"({pos[0]}/{pos[1]})"
    return "+", f"({format_scalar(c)})"


def format_ncpoly(p: NCPoly) -> str:
    """Human-diffable text: sums of coefficient-tagged words."""
    if p.is_zero():
        return "0"
    letter = "y" if p.dual else "x"
    chunks = []
    for word, c in p.sorted_terms():
        sign, body = _format_coeff(c)
        mono = " ".join(f"{letter}{i}" for i in word) or "1"
        text = f"{body} {mono}".strip()
        if not chunks:
            chunks.append(text if sign == "+" else f"-{text}")
        else:
            chunks.append(f"{'+' if sign == '+' else '-'} {text}")
    return " ".join(chunks)


def clear_caches():
    """Drop memoized bracket and symmetrizer data (test hygiene)."""
    _tau0_cached.cache_clear()
    _bracket_cached.cache_clear()
    _ENGINES.clear()
