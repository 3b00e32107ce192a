"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A scalar is represented in the power basis 1, z, ..., z^(phi(N)-1) of
Q(zeta_N), where z is an abstract primitive N-th root of unity reduced
modulo the N-th cyclotomic polynomial.  No complex embedding is ever used:
every identity checked downstream is algebraic, so the choice of primitive
root is immaterial.  Conductors are kept canonical (never congruent to
2 mod 4, since Q(zeta_{2m}) = Q(zeta_m) for odd m) and results of
arithmetic are demoted to the smallest cyclotomic subfield containing
them, which keeps matrix entries small in the rank oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Rational = Fraction


class CycError(ValueError):
    """Domain error in cyclotomic arithmetic (e.g. inverting zero)."""


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, den monic.  Used only for
    # building cyclotomic polynomials where divisibility is guaranteed.
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, dj in enumerate(den):
            num[i - deg_d + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in divisors(n):
        if d < n:
            poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def canonical_conductor(n: int) -> int:
    """Smallest conductor presenting the same field: 2m -> m for odd m."""
    if n % 2 == 0 and (n // 2) % 2 == 1:
        return n // 2
    return n


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    # Row k is the vector of z^(deg+k) mod Phi_n; enough rows are kept to
    # reduce both raw products (degree <= 2 deg - 2) and bare powers z^e
    # with e < n.
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:deg]]
    rows.append(tuple(cur))
    for _ in range(max(deg - 2, n - deg - 1)):
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            red = rows[0]
            nxt = [a + top * b for a, b in zip(nxt, red)]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def power_vector(n: int, e: int) -> tuple[int, ...]:
    """Integer coordinate vector of z^e in Q(zeta_n), e reduced mod n."""
    deg = euler_phi(n)
    e %= n
    if e < deg:
        vec = [0] * deg
        vec[e] = 1
        return tuple(vec)
    return _reduction_rows(n)[e - deg]


def _reduce_product(coeffs: list, n: int) -> list:
    # Reduce a raw convolution of length <= 2*deg-1 modulo Phi_n.
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        return coeffs + [0] * (deg - len(coeffs))
    rows = _reduction_rows(n)
    out = list(coeffs[:deg])
    for k, c in enumerate(coeffs[deg:]):
        if c:
            row = rows[k]
            for j in range(deg):
                if row[j]:
                    out[j] += c * row[j]
    return out


@lru_cache(maxsize=None)
def _embedding_solver(small: int, big: int):
    # Data for deciding membership of a Q(zeta_big) element in Q(zeta_small):
    # the embedding matrix E (columns = images of the power basis) plus the
    # inverse of an invertible square subsystem of E.
    deg_s, deg_b = euler_phi(small), euler_phi(big)
    step = big // small
    cols = [power_vector(big, j * step) for j in range(deg_s)]
    # Row reduce [E | I] over Q to find deg_s pivot rows and the solving map.
    aug = [[Fraction(cols[c][r]) for c in range(deg_s)] for r in range(deg_b)]
    idx = list(range(deg_b))
    pivots = []
    solve_rows = []
    col = 0
    work = [row[:] for row in aug]
    for col in range(deg_s):
        sel = None
        for r in range(col, deg_b):
            if work[r][col]:
                sel = r
                break
        work[col], work[sel] = work[sel], work[col]
        idx[col], idx[sel] = idx[sel], idx[col]
        piv = work[col][col]
        work[col] = [v / piv for v in work[col]]
        for r in range(deg_b):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
        pivots.append(idx[col])
    # Invert the square submatrix picked out by the pivot rows.
    sub = [[Fraction(cols[c][r]) for c in range(deg_s)] for r in pivots]
    inv = _invert_matrix(sub)
    return cols, pivots, inv


def _invert_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        sel = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[sel] = aug[sel], aug[col]
        piv = aug[col][col]
        aug[col] = [v / piv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _norm_coeff(c):
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class CycNum:
    """An element of Q(zeta_N), immutable; all operations are pure.

    Coordinates that are integers are stored as plain ints (a Fraction with
    denominator one hashes and compares equal to its int, so the two mix
    freely); this keeps the overwhelmingly common integral case on fast
    integer arithmetic.
    """

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs, _demote: bool = True):
        coeffs = tuple(_norm_coeff(c) for c in coeffs)
        if conductor != canonical_conductor(conductor):
            # Coordinates arrive in the zeta_{2m} basis (m odd): rewrite them
            # in the zeta_m basis via zeta_{2m} = -zeta_m^((m+1)/2).
            m = conductor // 2
            deg = euler_phi(m)
            out = [0] * deg
            half = (m + 1) // 2
            for j, c in enumerate(coeffs):
                if c:
                    sign = -1 if j % 2 else 1
                    vec = power_vector(m, (j * half) % m)
                    for i in range(deg):
                        if vec[i]:
                            out[i] += sign * c * vec[i]
            conductor, coeffs = m, tuple(out)
        deg = euler_phi(conductor)
        if len(coeffs) != deg:
            raise CycError(f"need {deg} coordinates at conductor {conductor}, got {len(coeffs)}")
        if _demote and conductor > 1:
            conductor, coeffs = _demoted(conductor, coeffs)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *args):
        raise AttributeError("CycNum is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(q) -> CycNum:
        return CycNum(1, (q,), _demote=False)

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.conductor == 1 and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring structure ----------------------------------------------------

    def _lift(self, n: int) -> tuple:
        """Coordinates of self in Q(zeta_n), where conductor | n."""
        if n == self.conductor:
            return self.coeffs
        step = n // self.conductor
        deg = euler_phi(n)
        out = [0] * deg
        for j, c in enumerate(self.coeffs):
            if c:
                vec = power_vector(n, j * step)
                for i in range(deg):
                    if vec[i]:
                        out[i] += c * vec[i]
        return tuple(out)

    def _common(self, other: CycNum) -> tuple[int, tuple[Fraction, ...], tuple[Fraction, ...]]:
        n = canonical_conductor(math.lcm(self.conductor, other.conductor))
        return n, self._lift(n), other._lift(n)

    def __add__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b = self._common(other)
        return CycNum(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> CycNum:
        return CycNum(self.conductor, tuple(-c for c in self.coeffs), _demote=False)

    def __mul__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b = self._common(other)
        deg = len(a)
        conv = [0] * (2 * deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycNum(n, _reduce_product(conv, n))

    __rmul__ = __mul__

    def inv(self) -> CycNum:
        """Multiplicative inverse; raises CycError on zero."""
        if self.is_zero():
            raise CycError("inversion of zero")
        n = self.conductor
        if n == 1:
            return CycNum(1, (Fraction(self.coeffs[0]) ** -1,), _demote=False)
        # Extended Euclid in Q[x] against Phi_n.
        phi = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r0, r1 = phi, [Fraction(c) for c in self.coeffs]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                c = r1[0]
                coeffs = [v / c for v in s1]
                break
            q, rem = _poly_divmod_q(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        deg = euler_phi(n)
        red = _reduce_product([Fraction(c) for c in coeffs][: 2 * deg - 1], n)
        return CycNum(n, red)

    def __truediv__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> CycNum:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            return self.inv() ** (-e)
        result = CycNum.from_rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(other)
        elif not isinstance(other, CycNum):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        n, a, b = self._common(other)
        return a == b

    def __hash__(self):
        # Hash the fully demoted form so equal values at different
        # conductors collide.
        h = self._hash
        if h is None:
            n, c = _demoted(self.conductor, self.coeffs) if self.conductor > 1 else (1, self.coeffs)
            h = hash((n, c))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"CycNum({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_scalar(self)

    # -- root-of-unity structure --------------------------------------------

    def order(self) -> int | None:
        """Multiplicative order if self is a root of unity, else None.

        Any root of unity in Q(zeta_N) has order dividing lcm(2, N), so the
        divisor sweep below is an exact test, not a heuristic.
        """
        if self.is_zero():
            return None
        bound = math.lcm(2, self.conductor)
        for d in divisors(bound):
            if (self ** d).is_one():
                return d
        return None


ZERO = CycNum(1, (0,), _demote=False)
ONE = CycNum(1, (1,), _demote=False)
MINUS_ONE = CycNum(1, (-1,), _demote=False)


def _coerce(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum.from_rational(x)
    return NotImplemented


@lru_cache(maxsize=None)
def _conjugation_matrices(n: int, d: int):
    # Basis images of every Galois automorphism fixing Q(zeta_d) pointwise
    # (x = 1 mod d, coprime to n), excluding the identity.
    deg = euler_phi(n)
    mats = []
    for x in range(1 + d, n, d):
        if math.gcd(x, n) == 1:
            mats.append(tuple(power_vector(n, (j * x) % n) for j in range(deg)))
    return tuple(mats)


def _fixed_by(coeffs, mats, deg) -> bool:
    for rows in mats:
        for i in range(deg):
            acc = 0
            for j, c in enumerate(coeffs):
                if c:
                    acc += c * rows[j][i]
            if acc != coeffs[i]:
                return False
    return True


def _demoted(conductor: int, coeffs: tuple) -> tuple[int, tuple]:
    # Smallest cyclotomic subfield containing the element.  Membership in
    # Q(zeta_d) for d | N is exactly invariance under the Galois subgroup
    # fixing Q(zeta_d) (a cheap integer check); the coordinates then come
    # from a cached linear solve against the embedding.  Candidates ascend
    # so the first hit is minimal.
    if not any(coeffs[1:]):
        return 1, (coeffs[0],)
    deg = len(coeffs)
    cands = [d for d in divisors(conductor)
             if d != conductor and canonical_conductor(d) == d and d > 1
             and euler_phi(d) < deg]
    cands.sort(key=lambda d: (euler_phi(d), d))
    for d in cands:
        if not _fixed_by(coeffs, _conjugation_matrices(conductor, d), deg):
            continue
        cols, pivots, inv = _embedding_solver(d, conductor)
        rhs = [coeffs[r] for r in pivots]
        sol = tuple(_norm_coeff(sum(inv[i][j] * rhs[j] for j in range(len(rhs))))
                    for i in range(len(rhs)))
        return d, sol
    return conductor, coeffs


def _poly_divmod_q(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while den and not den[-1]:
        den = den[:-1]
    deg_d = len(den) - 1
    if len(num) - 1 < deg_d:
        return [Fraction(0)], num
    quot = [Fraction(0)] * (len(num) - deg_d)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i] * inv_lead
        if c:
            quot[i - deg_d] = c
            for j, dj in enumerate(den):
                num[i - deg_d + j] -= c * dj
    return quot, num[:deg_d] or [Fraction(0)]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def root_of_unity(k: int, n: int) -> CycNum:
    """zeta_n^k as an exact scalar, at the canonical minimal conductor."""
    if n < 1:
        raise CycError("conductor must be positive")
    k %= n
    g = math.gcd(k, n)
    d, e = n // g, k // g
    if d == 1:
        return ONE
    if d == 2:
        return MINUS_ONE
    sign = 1
    if d % 2 == 0 and (d // 2) % 2 == 1:
        # zeta_{2m} = -zeta_m^((m+1)/2) for odd m.
        m = d // 2
        sign = -1 if e % 2 == 1 else 1
        e = (e * ((m + 1) // 2)) % m
        d = m
    vec = power_vector(d, e)
    return CycNum(d, tuple(sign * c for c in vec))


def order(a: CycNum) -> int | None:
    """Multiplicative order of a if it is a root of unity, else None."""
    return a.order()


def as_root_exponent(a: CycNum) -> tuple[int, int] | None:
    """Return (k, d) with a = zeta_d^k, gcd(k, d) = 1, if a is a root of unity."""
    d = a.order()
    if d is None:
        return None
    for k in range(d):
        if math.gcd(k, d) == 1 or d == 1:
            if root_of_unity(k, d) == a:
                return k, d
    return None  # pragma: no cover - every root of unity is primitive for its order


def qnum(m: int, p: CycNum) -> CycNum:
    """q-integer [m]_p = 1 + p + ... + p^(m-1); [0]_p = 0."""
    acc = ZERO
    term = ONE
    for _ in range(m):
        acc = acc + term
        term = term * p
    return acc


def qfact(m: int, p: CycNum) -> CycNum:
    """q-factorial [m]_p! = [1]_p [2]_p ... [m]_p; [0]_p! = 1."""
    acc = ONE
    for j in range(1, m + 1):
        acc = acc * qnum(j, p)
    return acc


def parse_scalar(text: str) -> CycNum:
    """Parse the scalar grammar `[-] <int> "/" <posint>` meaning +-zeta_N^k."""
    s = text.strip()
    neg = False
    if s.startswith("-"):
        neg = True
        s = s[1:]
    if "/" not in s:
        raise CycError(f"scalar {text!r} does not match the grammar k/N")
    k_str, n_str = s.split("/", 1)
    try:
        k, n = int(k_str), int(n_str)
    except ValueError as exc:
        raise CycError(f"scalar {text!r} does not match the grammar k/N") from exc
    if n < 1:
        raise CycError(f"scalar {text!r} has nonpositive conductor")
    val = root_of_unity(k, n)
    return -val if neg else val


def format_scalar(a: CycNum) -> str:
    """Canonical text for a scalar: `k/N` for roots of unity, else a basis sum."""
    exp = as_root_exponent(a)
    if exp is not None:
        k, d = exp
        return f"{k}/{d}"
    if a.is_zero():
        return "0"
    parts = []
    for j, c in enumerate(a.coeffs):
        if c:
            parts.append(f"{c}*z{a.conductor}^{j}" if j else f"{c}")
    return "(" + " + ".join(parts) + ")"
