from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bilevel import arith
from bilevel.errors import InvalidArgument, ResourceLimit, UnsupportedModulus

odd_t = st.integers(1, 60).map(lambda n: 2 * n + 1)


def test_phi_m_small_values():
    assert arith.phi_m(2, 3) == 8
    assert arith.phi_m(2, 5) == 24
    assert arith.phi_m(2, 9) == 72
    assert arith.phi_m(4, 3) == 80
    assert arith.phi_m(1, 9) == 6


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("r", [1, 2, 3, 4, 6, 8, 9, 10, 12])
def test_phi_m_against_enumeration(m, r):
    if r**m > 10**5:
        pytest.skip("covered in the acceptance suite")
    assert arith.phi_m(m, r) == len(arith.enumerate_Phi_m(m, r))


def test_enumeration_guard():
    with pytest.raises(ResourceLimit):
        arith.enumerate_Phi_m(4, 101)


@given(st.integers(1, 200), st.integers(1, 200))
def test_phi_2_is_multiplicative(a, b):
    from math import gcd
    if gcd(a, b) == 1:
        assert arith.phi_m(2, a * b) == arith.phi_m(2, a) * arith.phi_m(2, b)


@given(st.integers(1, 500))
def test_phi_m_closed_form(r):
    for m in (1, 2, 4):
        assert arith.phi_m(m, r) == r**m * arith.euler_product(r, m, -1)


def test_count_phi_bar2():
    assert arith.count_Phi_bar2(1) == 1
    assert arith.count_Phi_bar2(3) == 4
    assert arith.count_Phi_bar2(9) == 36
    with pytest.raises(UnsupportedModulus):
        arith.count_Phi_bar2(2)


@pytest.mark.parametrize("t,order", [(3, 24), (5, 120), (7, 336), (9, 648)])
def test_sl2_order(t, order):
    assert arith.sl2_order(t) == order
    assert arith.sl2_order_oracle(t) == order


def test_factorize_and_divisors():
    assert arith.factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert arith.divisors(15) == [1, 3, 5, 15]
    with pytest.raises(InvalidArgument):
        arith.factorize(0)


def test_modulus_profile():
    p = arith.ModulusProfile(45)
    assert p.prime_factors == (3, 5)
    assert p.divisors == (1, 3, 5, 9, 15, 45)
    with pytest.raises(UnsupportedModulus):
        arith.ModulusProfile(8)


def test_normalisations_at_5():
    assert arith.mu_paper(5) == 120
    assert arith.nu_paper(5) == 24
    assert arith.nu_cusps(5) == 12
    assert arith.genus_X(5) == 0
    assert arith.genus_X_printed(5) == -1


@pytest.mark.parametrize("r,genus", [(3, 0), (4, 0), (5, 0), (6, 1), (7, 3), (8, 5), (9, 10), (11, 26)])
def test_genus_of_X(r, genus):
    assert arith.genus_X(r) == genus


@pytest.mark.parametrize("r", [3, 5, 6, 7, 9])
def test_census_agrees_with_formula(r):
    c = arith.modular_curve_census(r)
    assert c.genus == arith.genus_X(r)
    assert c.cusps == arith.nu_cusps(r)
    assert c.psl_order == arith.mu_paper(r) / 2


@given(odd_t)
def test_genus_is_nonnegative_integer(t):
    g = arith.genus_X(t)
    assert g.denominator == 1 and g >= 0


@given(odd_t)
def test_euler_product_sign(t):
    assert arith.euler_product(t, 2, 1) > 1
    assert 0 < arith.euler_product(t, 2, -1) < 1
    assert arith.euler_product(t, 2, -1) * arith.euler_product(t, 2, 1) == arith.euler_product(t, 4, -1)
