import pytest

from conftest import random_root_braiding

from nichols2.cyclotomic import MINUS_ONE, ONE, qnum, root_of_unity
from nichols2.braidedalg import Braiding
from nichols2.fbtree import LGH, RGH, TREES, parse_tree
from nichols2.admissibility import (PTableMismatch, ReconstructionError, ScalarDomainError,
                                    StructureError, check_branch_hypothesis, is_admissible,
                                    lambda_closed, lambda_of, lambda_table, mu_of,
                                    node_scalars, nu_of, p_of, p_table, reconstruct_tree,
                                    sorted_internal)


def cartan_a2():
    z3 = root_of_unity(1, 3)
    return Braiding(z3, z3 ** 2, ONE, z3)


def test_lambda_root_values():
    t = TREES[2]
    b = Braiding(MINUS_ONE, ONE, ONE, MINUS_ONE)
    assert lambda_of(t, b, t.root).is_zero()  # q12 q21 = 1 forces zero
    z5, z7 = root_of_unity(1, 5), root_of_unity(1, 7)
    b2 = Braiding(z5, z5, z7, z5)
    assert lambda_of(t, b2, t.root) == b2.q21.inv() - b2.q12


def test_lambda_left_leaf_closed_form(rng):
    # The left child of the root carries (1 + q22^-1)(q21^-1 - q12 q22).
    for _ in range(6):
        b = random_root_braiding(rng)
        t = TREES[2]
        want = (ONE + b.q22.inv()) * (b.q21.inv() - b.q12 * b.q22)
        assert lambda_of(t, b, t.lch(t.root)) == want


def test_lambda_virtual_nodes_are_zero():
    b = cartan_a2()
    assert lambda_of(TREES[2], b, LGH).is_zero()
    assert lambda_of(TREES[2], b, RGH).is_zero()


def test_lambda_closed_reduces_to_root_formula(rng):
    for _ in range(5):
        b = random_root_braiding(rng)
        t = TREES[2]
        root_val = b.q21.inv() - b.q12
        assert lambda_closed(t, b, t.root, "right") == root_val
        assert lambda_closed(t, b, t.root, "left") == root_val


def test_lambda_closed_agrees_with_recursion_everywhere(rng):
    for t in TREES.values():
        for _ in range(3):
            b = random_root_braiding(rng)
            for a in t.nodes():
                if t.rgf(a) is RGH:
                    assert lambda_closed(t, b, a, "right") == lambda_of(t, b, a)
                if t.lgf(a) is LGH:
                    assert lambda_closed(t, b, a, "left") == lambda_of(t, b, a)


def test_lambda_closed_domain_errors():
    b = cartan_a2()
    t = TREES[3]
    inner_right = t.rch(t.root)
    with pytest.raises(ScalarDomainError):
        lambda_closed(t, b, inner_right, "left")
    with pytest.raises(ScalarDomainError):
        lambda_closed(t, b, t.lch(t.root), "right")


def boundary_leaves(t, a):
    # Leaf below lch(a) along right children, leaf below rch(a) along left.
    x = t.lch(a)
    while not t.is_leaf(x):
        x = t.rch(x)
    y = t.rch(a)
    while not t.is_leaf(y):
        y = t.lch(y)
    return x, y


def test_boundary_leaf_equality_criterion(rng):
    # lambda(b) = lambda(c) at the two boundary leaves of an inner node a
    # exactly when [lgfl(b)+rgfl(c)]_{p_a} (p_{rgf a} - p_a^(lgfl(b)-rgfl(c))
    # p_{lgf a}) vanishes.
    for t in TREES.values():
        for _ in range(3):
            b = random_root_braiding(rng)
            for a in t.internal():
                lb, lc = boundary_leaves(t, a)
                p_a = p_of(t, b, a)
                expr = (qnum(t.lgfl(lb) + t.rgfl(lc), p_a)
                        * (p_of(t, b, t.rgf(a))
                           - p_a ** (t.lgfl(lb) - t.rgfl(lc)) * p_of(t, b, t.lgf(a))))
                assert ((lambda_of(t, b, lb) == lambda_of(t, b, lc))
                        == expr.is_zero())


def test_mu_right_child_specializes_to_lambda(rng):
    for t in TREES.values():
        b = random_root_braiding(rng)
        for a in t.nodes():
            c = t.lgf(a)
            if isinstance(c, int) and t.rch(c) == a:
                assert mu_of(t, b, a) == lambda_of(t, b, a)


def test_mu_nested_case():
    # On the tree of family 6, the left child of the right inner node has
    # mu = lambda(b) * lambda(rgf b) with rgf(b) a right child there.
    z18 = root_of_unity(1, 18)
    b = Braiding(z18, z18 ** 16, ONE, -(z18 ** 3))
    t = TREES[6]
    bb = t.lch(t.rch(t.root))
    assert t.rgf(bb) == t.rch(t.root)
    assert mu_of(t, b, bb) == lambda_of(t, b, bb) * mu_of(t, b, t.rgf(bb))
    assert mu_of(t, b, bb) == lambda_of(t, b, bb) * lambda_of(t, b, t.rgf(bb))


def test_nu_vanishes_where_required():
    # Wherever the admissibility conditions demand nu = 0 on a sample
    # instance, the computed nu is exactly zero.
    from nichols2.classify import fixtures

    required = 0
    for (n, c), b in fixtures().items():
        t = TREES[n]
        for bb in t.internal():
            cc = t.lgf(bb)
            if not (isinstance(cc, int) and not t.is_leaf(cc)):
                continue
            if t.rchl(t.lch(cc)) <= t.rgfl(bb) or t.rgfl(bb) > 2:
                continue
            assert nu_of(t, b, bb).is_zero(), (n, c, bb)
            required += 1
    assert required >= 3  # families 6, 11, 19, 22 all exercise this


def test_nu_domain_errors():
    b = cartan_a2()
    with pytest.raises(ScalarDomainError):
        nu_of(TREES[2], b, TREES[2].root)


def test_node_scalars_bundle():
    z18 = root_of_unity(1, 18)
    b = Braiding(z18, z18 ** 16, ONE, -(z18 ** 3))
    t = TREES[6]
    ns = node_scalars(t, b, t.rch(t.root))
    assert ns.p == p_of(t, b, t.rch(t.root))
    assert ns.mu is not None and ns.nu is not None


def test_branch_hypothesis_on_constants_and_violation():
    for t in TREES.values():
        check_branch_hypothesis(t)
    deep = parse_tree(
        "((L (L (L (L L)))) (((((L L) L) L) L) L))")
    with pytest.raises(StructureError):
        check_branch_hypothesis(deep)


def test_is_admissible_examples():
    assert is_admissible(TREES[2], cartan_a2(), 10).admissible
    rep = is_admissible(TREES[1], cartan_a2(), 2)
    assert not rep.admissible
    assert any(cond == "branching" for cond, _, _ in rep.failures)
    b1 = Braiding(MINUS_ONE, ONE, ONE, MINUS_ONE)
    rep = is_admissible(TREES[2], b1, 2)
    assert not rep.admissible
    assert any(cond == "branching" for cond, _, _ in rep.failures)


def test_reconstruct_examples():
    assert reconstruct_tree(cartan_a2()) == TREES[2]
    assert reconstruct_tree(Braiding(MINUS_ONE, ONE, ONE, MINUS_ONE)) == TREES[1]
    z18 = root_of_unity(1, 18)
    b6 = Braiding(z18, z18 ** 16, ONE, -(z18 ** 3))
    assert reconstruct_tree(b6) == TREES[6]


def test_reconstruct_cap_failure():
    z5 = root_of_unity(1, 5)
    with pytest.raises(ReconstructionError):
        reconstruct_tree(Braiding(z5, z5, ONE, z5), 16)


def test_reconstruct_non_root_of_unity_branching():
    two = ONE + ONE
    with pytest.raises(ReconstructionError):
        reconstruct_tree(Braiding(two, two, ONE, two), 16)


def test_p_table_spec_examples():
    b2 = cartan_a2()
    assert p_table(2, b2, 1) == [(b2.q11 * b2.q12 * b2.q21 * b2.q22).inv()]
    z12 = root_of_unity(1, 12)
    b4 = Braiding(z12 ** 4, z12 ** 9, ONE, -(z12 ** 2))
    q0 = b4.q11 * b4.q12 * b4.q21
    assert p_table(4, b4, 1) == [-ONE, q0 ** 3, -ONE]
    z9 = root_of_unity(1, 9)
    b9 = Braiding(z9 ** 6, z9, ONE, MINUS_ONE)
    q = b9.q12 * b9.q21
    assert p_table(9, b9, 1) == [-(q ** 2), -ONE, q ** 3, -q]


def test_p_table_mismatch_raises():
    # The family-4 templates are non-tautological, so a braiding outside the
    # family condition must trip the comparison.
    with pytest.raises(PTableMismatch):
        p_table(4, Braiding(MINUS_ONE, ONE, ONE, MINUS_ONE), 1)


def test_lambda_table_type18_reading():
    # The unnamed q in the listed fifth value is the product q12*q21.
    z30 = root_of_unity(1, 30)
    b18 = Braiding(-(z30 ** 5), z30, ONE, MINUS_ONE)
    vals = lambda_table(18, b18, 1)
    q = b18.q12 * b18.q21
    assert vals[1] == b18.q21.inv() * (q ** 5 - q ** -4)


def test_sorted_internal_matches_q_order():
    t = TREES[6]
    nodes = sorted_internal(t)
    for x, y in zip(nodes, nodes[1:]):
        assert t.cmp_q(x, y) < 0
