from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bilevel.errors import InvalidArgument, UnsupportedDegree
from bilevel.exact import (
    FAULHABER,
    Poly,
    as_rational,
    fmt,
    leading_coefficient,
    poly_sum_range,
    rational_from_json,
    rational_to_json,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
coeff_lists = st.lists(rationals, max_size=5)

K = Poly.variable("k")
T = Poly.variable("t")


def test_as_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/9") == Fraction(1, 3)


def test_trailing_zeros_are_dropped():
    assert Poly([1, 2, 0, 0], "x") == Poly([1, 2], "x")
    assert Poly([0, 0], "x").is_zero()
    assert Poly([], "x").degree == -1


def test_unknown_variable():
    with pytest.raises(InvalidArgument):
        Poly([1], "z")


def test_nesting_order_is_enforced():
    with pytest.raises(InvalidArgument):
        Poly([K], "t")
    p = Poly([0, T], "k")
    assert p.coefficient(1) == T


def test_mixed_variable_product():
    p = (T + 1) * (K * K)
    assert p.var == "k"
    assert p.coefficient(2) == T + 1
    assert p.subs("t", 2).subs("k", 3) == 27


def test_division_only_by_scalars():
    assert (T * 4) / 2 == T * 2
    with pytest.raises(TypeError):
        T / T


@given(coeff_lists, coeff_lists, rationals)
def test_evaluation_is_a_ring_homomorphism(a, b, x):
    p, q = Poly(a, "x"), Poly(b, "x")
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_distributivity(a, b, c):
    p, q, r = (Poly(v, "x") for v in (a, b, c))
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p


@given(st.integers(0, 4), st.integers(0, 40))
def test_faulhaber_matches_brute_force(d, n):
    assert FAULHABER[d](n) == sum(Fraction(j) ** d for j in range(n))


@given(coeff_lists, st.integers(0, 12))
def test_sum_range_over_half_k(a, m):
    p = Poly(a, "j")
    closed = poly_sum_range(p, K / 2)
    k = 2 * m
    value = closed.subs("k", k) if isinstance(closed, Poly) else closed
    assert value == sum(p(j) for j in range(m))


def test_sum_range_rejects_high_degree():
    with pytest.raises(UnsupportedDegree):
        poly_sum_range(Poly.monomial(5, "j"), K)
    with pytest.raises(InvalidArgument):
        poly_sum_range(Poly([1], "j"), 7)


def test_kernel_sum_leading_coefficient():
    w = Poly.variable("w")
    kernel = Poly([0, K / 2, Fraction(1, 6)], "w")
    closed = poly_sum_range(kernel, K)
    assert leading_coefficient(closed, 3) == Fraction(11, 36)
    assert w.var == "w"


@given(rationals)
def test_json_round_trip(q):
    d = rational_to_json(q)
    assert isinstance(d["num"], str) and isinstance(d["den"], str)
    assert rational_from_json(d) == q


def test_fmt():
    assert fmt(Fraction(-2405, 48)) == "-2405/48"
    assert fmt(4) == "4"
