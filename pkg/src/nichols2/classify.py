"""The 22-family condition matcher and full classification reports.

Each family condition constrains only q11, the product q12*q21, and q22,
so fixtures set q21 = 1 and carry the whole product in q12 (the rescaling
invariance tests justify this normal form).  A braiding may match several
families; all matches are reported and the verifier simply checks each
reconstructed tree on its own.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cyclotomic import CycNum, MINUS_ONE, ONE, root_of_unity
from .braidedalg import Braiding, format_ncpoly
from .fbtree import TREES, FullBinaryTree, serialize_tree
from .admissibility import (AdmissibilityReport, ReconstructionError, is_admissible,
                            lambda_table, p_table, reconstruct_tree)
from .nicholscore import (NicholsError, check_relations_vanish, dimension,
                          top_total_degree, verify_type)


def _ord(x: CycNum) -> int:
    o = x.order()
    return 0 if o is None else o


def _root(x: CycNum) -> bool:
    return _ord(x) >= 2


# Conditions (T1)-(T22); q denotes q12*q21 and q0 = q11*q.  The case index
# counts the or-branches in the order they are stated.
_CONDITIONS: list[tuple[int, int, object]] = [
    (1, 1, lambda q11, q, q22: _root(q11) and _root(q22) and q == ONE),
    (2, 1, lambda q11, q, q22: ((ONE - q11 * q) * (ONE + q11)).is_zero()
        and ((ONE - q * q22) * (ONE + q22)).is_zero() and _root(q)),
    (3, 1, lambda q11, q, q22: q == q11 ** -2 and (q22 == q11 ** 2 or q22 == MINUS_ONE)
        and _ord(q11) >= 3),
    (3, 2, lambda q11, q, q22: _ord(q11) == 3 and q * q22 == ONE
        and (_ord(q22) == 2 or _ord(q22) >= 4)),
    (3, 3, lambda q11, q, q22: _ord(q11) == 3 and q == -q11 and q22 == MINUS_ONE),
    (4, 1, lambda q11, q, q22: _ord(q11 * q) == 12 and q11 == (q11 * q) ** 4
        and q22 == -((q11 * q) ** 2)),
    (4, 2, lambda q11, q, q22: _ord(q) == 12 and q11 == -(q ** 2) and q22 == -(q ** 2)),
    (5, 1, lambda q11, q, q22: _ord(q) == 12 and q11 == -(q ** 2) and q22 == MINUS_ONE),
    (5, 2, lambda q11, q, q22: _ord(q11 * q) == 12 and q11 == (q11 * q) ** 4
        and q22 == MINUS_ONE),
    (6, 1, lambda q11, q, q22: _ord(q11) == 18 and q == q11 ** -2 and q22 == -(q11 ** 3)),
    (7, 1, lambda q11, q, q22: _ord(q11) == 12 and q == q11 ** -3 and q22 == MINUS_ONE),
    (7, 2, lambda q11, q, q22: _ord(q) == 12 and q11 == q ** -3 and q22 == MINUS_ONE),
    (8, 1, lambda q11, q, q22: q == q11 ** -3 and q22 == q11 ** 3 and _ord(q11) >= 4),
    (8, 2, lambda q11, q, q22: q ** 4 == MINUS_ONE and q22 == MINUS_ONE and q11 == -q),
    (8, 3, lambda q11, q, q22: q ** 4 == MINUS_ONE and q22 == MINUS_ONE and q11 == q ** -2),
    (8, 4, lambda q11, q, q22: q ** 4 == MINUS_ONE and q11 == q ** 2 and q22 == q ** -1),
    (9, 1, lambda q11, q, q22: _ord(q) == 9 and q11 == q ** -3 and q22 == MINUS_ONE),
    (10, 1, lambda q11, q, q22: _ord(q) == 24 and q11 == q ** -6 and q22 == q ** -8),
    (11, 1, lambda q11, q, q22: _ord(q11) in (5, 20) and q == q11 ** -3
        and q22 == MINUS_ONE),
    (12, 1, lambda q11, q, q22: _ord(q11) == 30 and q == q11 ** -3 and q22 == -(q11 ** 5)),
    (13, 1, lambda q11, q, q22: _ord(q) == 24 and q11 == q ** 6 and q22 == q ** -1),
    (14, 1, lambda q11, q, q22: _ord(q11) == 18 and q == q11 ** -4 and q22 == MINUS_ONE),
    (15, 1, lambda q11, q, q22: _ord(q) == 30 and q11 == -(q ** -3) and q22 == q ** -1),
    (16, 1, lambda q11, q, q22: _ord(q11) == 10 and q == q11 ** -4 and q22 == MINUS_ONE),
    (16, 2, lambda q11, q, q22: _ord(q) == 20 and q11 == q ** -4 and q22 == MINUS_ONE),
    (17, 1, lambda q11, q, q22: _ord(q) == 24 and q11 == -(q ** 4) and q22 == MINUS_ONE),
    (18, 1, lambda q11, q, q22: _ord(q) == 30 and q11 == -(q ** 5) and q22 == MINUS_ONE),
    (19, 1, lambda q11, q, q22: _ord(q11) == 14 and q == q11 ** -3 and q22 == MINUS_ONE),
    (20, 1, lambda q11, q, q22: _ord(q) == 30 and q11 == q ** -6 and q22 == MINUS_ONE),
    (21, 1, lambda q11, q, q22: _ord(q11) == 24 and q == q11 ** -5 and q22 == MINUS_ONE),
    (22, 1, lambda q11, q, q22: _ord(q11) == 14 and q == q11 ** -5 and q22 == MINUS_ONE),
]


def match_condition(b: Braiding) -> list[tuple[int, int]]:
    """All (family, case) pairs whose condition the braiding satisfies."""
    q = b.q12 * b.q21
    return [(n, c) for n, c, pred in _CONDITIONS if pred(b.q11, q, b.q22)]


def _z(k: int, n: int) -> CycNum:
    return root_of_unity(k, n)


def _braiding(q11, q12, q21, q22) -> Braiding:
    return Braiding(q11, q12, q21, q22)


def fixtures() -> dict[tuple[int, int], Braiding]:
    """One minimal-order sample braiding per condition case, with q21 = 1."""
    one = ONE
    m1 = MINUS_ONE
    out = {
        (1, 1): _braiding(m1, one, one, m1),
        (2, 1): _braiding(_z(1, 3), _z(2, 3), one, _z(1, 3)),
        (3, 1): _braiding(_z(1, 5), _z(3, 5), one, _z(2, 5)),
        (3, 2): _braiding(_z(1, 3), m1, one, m1),
        (3, 3): _braiding(_z(1, 3), -_z(1, 3), one, m1),
        (4, 1): _braiding(_z(4, 12), _z(9, 12), one, -_z(2, 12)),
        (4, 2): _braiding(-_z(2, 12), _z(1, 12), one, -_z(2, 12)),
        (5, 1): _braiding(-_z(2, 12), _z(1, 12), one, m1),
        (5, 2): _braiding(_z(4, 12), _z(9, 12), one, m1),
        (6, 1): _braiding(_z(1, 18), _z(16, 18), one, -_z(3, 18)),
        (7, 1): _braiding(_z(1, 12), _z(9, 12), one, m1),
        (7, 2): _braiding(_z(9, 12), _z(1, 12), one, m1),
        (8, 1): _braiding(_z(1, 4), _z(1, 4), one, _z(3, 4)),
        (8, 2): _braiding(-_z(1, 8), _z(1, 8), one, m1),
        (8, 3): _braiding(_z(6, 8), _z(1, 8), one, m1),
        (8, 4): _braiding(_z(2, 8), _z(1, 8), one, _z(7, 8)),
        (9, 1): _braiding(_z(6, 9), _z(1, 9), one, m1),
        (10, 1): _braiding(_z(18, 24), _z(1, 24), one, _z(16, 24)),
        (11, 1): _braiding(_z(1, 5), _z(2, 5), one, m1),
        (12, 1): _braiding(_z(1, 30), _z(27, 30), one, -_z(5, 30)),
        (13, 1): _braiding(_z(6, 24), _z(1, 24), one, _z(23, 24)),
        (14, 1): _braiding(_z(1, 18), _z(14, 18), one, m1),
        (15, 1): _braiding(-_z(27, 30), _z(1, 30), one, _z(29, 30)),
        (16, 1): _braiding(_z(1, 10), _z(6, 10), one, m1),
        (16, 2): _braiding(_z(16, 20), _z(1, 20), one, m1),
        (17, 1): _braiding(-_z(4, 24), _z(1, 24), one, m1),
        (18, 1): _braiding(-_z(5, 30), _z(1, 30), one, m1),
        (19, 1): _braiding(_z(1, 14), _z(11, 14), one, m1),
        (20, 1): _braiding(_z(24, 30), _z(1, 30), one, m1),
        (21, 1): _braiding(_z(1, 24), _z(19, 24), one, m1),
        (22, 1): _braiding(_z(1, 14), _z(9, 14), one, m1),
    }
    return out


@dataclass
class ClassificationReport:
    matches: list[tuple[int, int]]
    tree: FullBinaryTree | None
    tree_failure: str | None
    pbw: list[tuple[int, int | None]]
    dimension_value: int | None
    relations: list[str]
    verified_up_to: int
    verify_holds: bool | None  # None when verification was not applicable
    verify_detail: str | None
    admissibility: AdmissibilityReport | None
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "type": [list(m) for m in self.matches],
            "tree": None if self.tree is None else serialize_tree(self.tree),
            "pbw": [list(p) for p in self.pbw],
            "dimension": (self.dimension_value if self.dimension_value is not None
                          else "not finite by this method"),
            "relations": list(self.relations),
            "verified_up_to": self.verified_up_to,
            "admissibility": (None if self.admissibility is None
                              else self.admissibility.to_json_dict()),
            "notes": list(self.notes)
            + ([] if self.matches else ["no classification condition matched"]),
        }


def classify_full(b: Braiding, degree_cap: int = 8, weight_cap: int = 16) -> ClassificationReport:
    """Assemble the full report: condition matches, reconstructed tree,
    generator degrees and orders, dimension, relations, and the oracle
    verification through the degree cap (recorded honestly)."""
    matches = match_condition(b)
    notes: list[str] = []
    try:
        tree = reconstruct_tree(b, weight_cap)
        tree_failure = None
    except ReconstructionError as exc:
        tree = None
        tree_failure = str(exc)
        notes.append(f"tree reconstruction failed: {exc}")

    pbw: list[tuple[int, int | None]] = []
    dim: int | None = None
    relations: list[str] = []
    verified_up_to = 0
    verify_holds: bool | None = None
    verify_detail = tree_failure
    adm = None
    if tree is not None:
        orders = [b.chi_nodes(tree, a, a).order() for a in tree.nbar2()]
        pbw = [(tree.weight(a), o) for a, o in zip(tree.nbar2(), orders)]
        if all(o is not None and o != 1 for o in orders):
            dim = dimension(tree, b)
            relations = [format_ncpoly(r) for r in relation_set_safe(tree, b, degree_cap, notes)]
            verified_up_to = min(degree_cap, top_total_degree(tree, b))
            verdict = verify_type(tree, b, verified_up_to)
            verify_holds = verdict.holds
            verify_detail = verdict.detail
            if verdict.unexercised_nodes:
                notes.append(f"{len(verdict.unexercised_nodes)} generators lie above "
                             f"degree {verified_up_to}; their strata were not exercised")
            if not check_relations_vanish(tree, b, verified_up_to):
                verify_holds = False
                verify_detail = (verify_detail or "") + "; a relation fails to vanish"
            if verify_holds is False:
                notes.append(f"verification failed: {verify_detail}")
        else:
            notes.append("a generator order is infinite or one; "
                         "dimension not finite by this method")
        adm = is_admissible(tree, b, degree_cap)
    return ClassificationReport(matches, tree, tree_failure, pbw, dim, relations,
                                verified_up_to, verify_holds, verify_detail, adm, notes)


def relation_set_safe(tree, b, degree_cap, notes):
    from .nicholscore import relation_set

    try:
        capped = relation_set(tree, b, max_degree=degree_cap)
        full_count = len(relation_set_descriptors(tree, b))
        if full_count > len(capped):
            notes.append(f"{full_count - len(capped)} relation generators above "
                         f"degree {degree_cap} not expanded")
        return capped
    except NicholsError as exc:
        notes.append(f"relations unavailable: {exc}")
        return []


def relation_set_descriptors(tree, b) -> list[tuple[str, int]]:
    """(kind, total degree) of every relation generator, without expanding."""
    from .admissibility import p_of

    out = []
    for a in tree.leaves():
        out.append(("leaf", tree.weight(a)))
    for a in tree.nbar2():
        o = p_of(tree, b, a).order()
        if o is not None:
            out.append(("power", o * tree.weight(a)))
    for bb in tree.internal():
        c = tree.lgf(bb)
        if isinstance(c, int) and not tree.is_leaf(c):
            out.append(("mixed", tree.weight(bb) + tree.weight(tree.lgf(c))))
    return out


@dataclass
class FixtureRow:
    type_id: int
    case_id: int
    matched: bool
    p_table_ok: bool
    lambda_ok: bool
    tree_ok: bool
    admissible: bool
    hilbert_ok: bool
    basis_ok: bool
    relations_ok: bool
    dim_value: int
    verified_degree: int
    seconds: float

    @property
    def passed(self) -> bool:
        return (self.matched and self.p_table_ok and self.lambda_ok and self.tree_ok
                and self.admissible and self.hilbert_ok and self.basis_ok
                and self.relations_ok)


def run_fixture_matrix(degree_cap: int = 8, weight_cap: int = 16) -> list[FixtureRow]:
    """Run the per-family acceptance battery: condition self-match, golden
    scalar tables, tree reconstruction, admissibility, degree-capped
    dimension agreement with the monomial prediction, and relation
    vanishing under both zero tests."""
    rows = []
    for (n, c), b in sorted(fixtures().items()):
        t0 = time.monotonic()
        matched = (n, c) in match_condition(b)
        try:
            p_table(n, b, c)
            p_ok = True
        except AssertionError:
            p_ok = False
        try:
            lambda_table(n, b, c)
            l_ok = True
        except AssertionError:
            l_ok = False
        try:
            tree = reconstruct_tree(b, weight_cap)
            tree_ok = tree == TREES[n]
        except ReconstructionError:
            tree = None
            tree_ok = False
        adm_ok = hilbert_ok = basis_ok = rel_ok = False
        dim_value = 0
        cap = 0
        if tree is not None:
            # Admissibility is cheap scalar arithmetic, so check it at a
            # bound covering every node of every family tree.
            adm_ok = is_admissible(tree, b, max(degree_cap, 64)).admissible
            cap = min(degree_cap, top_total_degree(tree, b))
            verdict = verify_type(tree, b, cap)
            hilbert_ok = all(verdict.counts[m] == verdict.dims[m] for m in range(cap + 1))
            basis_ok = verdict.holds
            rel_ok = check_relations_vanish(tree, b, cap)
            dim_value = dimension(tree, b)
            if cap >= top_total_degree(tree, b):
                hilbert_ok = hilbert_ok and verdict.dims.total() == dim_value
        rows.append(FixtureRow(n, c, matched, p_ok, l_ok, tree_ok, adm_ok,
                               hilbert_ok, basis_ok, rel_ok, dim_value, cap,
                               time.monotonic() - t0))
    return rows
