"""Exact rank of matrices over cyclotomic fields.

Rows are scaled to integer coordinate vectors, then eliminated with
one-step fraction-free (Bareiss) updates: entries stay genuine minors of
the input, so the division by the previous pivot is exact in the ring of
integer vectors modulo the cyclotomic polynomial.  Pivots are chosen by
coefficient size among eligible rows, with index order breaking ties, so
ranks are deterministic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycNum, canonical_conductor, euler_phi, _reduction_rows


def _to_integer_rows(rows, conductor):
    deg = euler_phi(conductor)
    out = []
    for row in rows:
        lifted = [entry._lift(conductor) for entry in row]
        den = 1
        for vec in lifted:
            for c in vec:
                den = den * c.denominator // math.gcd(den, c.denominator)
        int_row = []
        for vec in lifted:
            int_row.append([int(c * den) for c in vec])
        out.append(int_row)
    return out, deg


def _make_poly_ops(conductor: int, deg: int):
    rows = _reduction_rows(conductor) if deg > 1 else ()

    def pmul(a, b):
        conv = [0] * (2 * deg - 1) if deg > 1 else [0]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        if deg == 1:
            return conv
        out = conv[:deg]
        for k in range(deg, 2 * deg - 1):
            c = conv[k]
            if c:
                red = rows[k - deg]
                for j in range(deg):
                    if red[j]:
                        out[j] += c * red[j]
        return out

    return pmul


def _exact_div(vec, d):
    out = []
    for q in vec:
        quot, rem = divmod(q, d)
        if rem:
            raise ArithmeticError("fraction-free elimination produced an inexact division")
        out.append(quot)
    return out


def exact_rank(matrix: list[list[CycNum]]) -> int:
    """Rank of a matrix of cyclotomic scalars, fully exact."""
    if not matrix or not matrix[0]:
        return 0
    conductor = 1
    for row in matrix:
        for entry in row:
            conductor = canonical_conductor(math.lcm(conductor, entry.conductor))
    rows, _ = _to_integer_rows(matrix, conductor)
    return exact_rank_vectors(rows, conductor)


def exact_rank_vectors(rows, conductor: int) -> int:
    """Rank of a matrix whose entries are coordinate vectors at a fixed
    conductor.  Integer entries go straight to elimination; rational ones
    are scaled per row first (which preserves rank)."""
    if not rows or not rows[0]:
        return 0
    deg = euler_phi(conductor)
    cleaned = []
    for row in rows:
        if any(isinstance(c, Fraction) and c.denominator != 1 for vec in row for c in vec):
            den = 1
            for vec in row:
                for c in vec:
                    d = c.denominator if isinstance(c, Fraction) else 1
                    den = den * d // math.gcd(den, d)
            cleaned.append([[int(c * den) for c in vec] for vec in row])
        else:
            cleaned.append([[int(c) for c in vec] for vec in row])
    rows = cleaned
    pmul = _make_poly_ops(conductor, deg)
    n_rows, n_cols = len(rows), len(rows[0])

    def size(vec):
        return sum(c.bit_length() if c >= 0 else (-c).bit_length() for c in vec)

    rank = 0
    prev_inv = None  # (W, r): previous pivot inverse as W / r
    col = 0
    while col < n_cols and rank < n_rows:
        best = None
        for i in range(rank, n_rows):
            v = rows[i][col]
            if any(v):
                s = size(v)
                if best is None or s < best[0]:
                    best = (s, i)
        if best is None:
            col += 1
            continue
        i = best[1]
        rows[rank], rows[i] = rows[i], rows[rank]
        pivot_row = rows[rank]
        pivot = pivot_row[col]
        for r in range(rank + 1, n_rows):
            row = rows[r]
            factor = row[col]
            has_factor = any(factor)
            for j in range(col, n_cols):
                if has_factor:
                    a = pmul(pivot, row[j])
                    bvec = pmul(factor, pivot_row[j])
                    t = [x - y for x, y in zip(a, bvec)]
                elif any(row[j]):
                    t = pmul(pivot, row[j])
                else:
                    continue
                if prev_inv is not None and any(t):
                    W, d = prev_inv
                    t = pmul(t, W)
                    t = _exact_div(t, d)
                row[j] = t
        # Inverse of the new pivot, as an integer vector over a denominator.
        piv_num = CycNum(conductor, pivot, _demote=False)
        inv = piv_num.inv()._lift(conductor)
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        prev_inv = ([int(c * den) for c in inv], den)
        rank += 1
        col += 1
    return rank
