import math

import pytest
from hypothesis import given, settings, strategies as st

from nichols2.cyclotomic import (CycError, CycNum, MINUS_ONE, ONE, ZERO, as_root_exponent,
                                 cyclotomic_polynomial, euler_phi, format_scalar, order,
                                 parse_scalar, qfact, qnum, root_of_unity)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 40):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_primitive_root_sum_reduces():
    z3 = root_of_unity(1, 3)
    assert z3 + z3 ** 2 == MINUS_ONE


def test_inverse_is_multiplicative_inverse(rng):
    for _ in range(40):
        n = rng.randrange(1, 16)
        a = root_of_unity(rng.randrange(n), n) + CycNum.from_rational(rng.randrange(-2, 3))
        if a.is_zero():
            continue
        assert a * a.inv() == ONE


def test_neg_zero_is_zero():
    assert -ZERO == ZERO


def test_inverting_zero_raises():
    with pytest.raises(CycError):
        ZERO.inv()


def test_root_of_unity_values():
    assert root_of_unity(0, 5) == ONE
    assert root_of_unity(1, 2) == MINUS_ONE
    assert root_of_unity(2, 4) == MINUS_ONE


def test_roots_power_to_one():
    for n in range(1, 31):
        for k in range(1, n + 1):
            assert (root_of_unity(k, n) ** n).is_one()


def test_order_matches_exponent_arithmetic():
    for n in range(1, 31):
        for k in range(1, n + 1):
            assert order(root_of_unity(k, n)) == n // math.gcd(k, n)


def test_order_examples():
    assert order(MINUS_ONE) == 2
    assert order(root_of_unity(4, 12)) == 3
    assert order(ONE + root_of_unity(1, 3)) == 6  # equals -zeta_3^2
    assert order(CycNum.from_rational(2) + root_of_unity(1, 3)) is None


small_scalars = st.builds(
    lambda k, n, r: root_of_unity(k, n) + CycNum.from_rational(r),
    st.integers(0, 23), st.sampled_from([1, 3, 4, 5, 8, 9, 12]),
    st.fractions(min_value=-3, max_value=3, max_denominator=4))


@settings(max_examples=60, deadline=None)
@given(small_scalars, small_scalars, small_scalars)
def test_field_axioms_across_conductors(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(2, 12), st.integers(1, 4))
def test_embedding_commutes_with_arithmetic(k, n, factor):
    # The lift into a larger conductor is a ring map.
    a = root_of_unity(k, n) + ONE
    big = n * factor
    lifted = CycNum(big, a._lift(big), _demote=False)
    assert lifted == a
    assert lifted * lifted == a * a
    assert lifted + lifted == a + a


def test_qnum_qfact_values():
    z3 = root_of_unity(1, 3)
    z4 = root_of_unity(1, 4)
    assert qnum(2, MINUS_ONE) == ZERO
    assert qnum(3, z3) == ZERO
    assert qnum(0, z3) == ZERO
    assert qfact(0, z3) == ONE
    assert qfact(3, z4) == (ONE + z4) * z4


def test_qfact_recursion(rng):
    for _ in range(12):
        n = rng.randrange(1, 13)
        p = root_of_unity(rng.randrange(n), n)
        for m in range(1, 11):
            assert qfact(m, p) == qnum(m, p) * qfact(m - 1, p)


def test_scalar_grammar_round_trip():
    assert parse_scalar("0/1") == ONE
    assert parse_scalar("1/2") == MINUS_ONE
    assert parse_scalar("-2/12") == -root_of_unity(2, 12)
    with pytest.raises(CycError):
        parse_scalar("7")
    with pytest.raises(CycError):
        parse_scalar("a/b")
    with pytest.raises(CycError):
        parse_scalar("1/0")
    for text in ("0/1", "1/2", "5/12", "3/7"):
        val = parse_scalar(text)
        assert parse_scalar(format_scalar(val)) == val


def test_format_prefers_canonical_root():
    # -zeta_12^2 is a primitive cube root, so it prints at conductor 3.
    assert format_scalar(-root_of_unity(2, 12)) == "2/3"
    k, d = as_root_exponent(root_of_unity(5, 12))
    assert (k, d) == (5, 12)


def test_demotion_to_minimal_conductor():
    assert (root_of_unity(1, 12) ** 4).conductor == 3
    assert (root_of_unity(1, 8) * root_of_unity(3, 8)).conductor == 1
    mixed = root_of_unity(1, 3) * root_of_unity(1, 4)
    assert mixed.conductor == 12


def test_conductor_two_mod_four_is_folded():
    z6 = root_of_unity(1, 6)
    assert z6.conductor == 3
    assert order(z6) == 6
    assert z6 == -root_of_unity(2, 3)
