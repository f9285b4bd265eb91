from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bilevel import dimensions as dm
from bilevel.arith import count_Phi_bar2, divisors, phi_m, sl2_order
from bilevel.errors import InvalidArgument, UnsupportedModulus
from bilevel.exact import Poly, leading_coefficient, poly_sum_range

odd_t = st.integers(1, 49).map(lambda n: 2 * n + 1)


def test_index_chain_examples():
    c3 = dm.index_chain(3)
    assert (c3.index_lev, c3.index_nat_over_lev, c3.index_bil) == (120, 24, 1440)
    assert dm.index_chain(5).index_bil == 93600
    with pytest.raises(UnsupportedModulus):
        dm.index_chain(1)


@given(odd_t)
def test_index_chain_invariants(t):
    c = dm.index_chain(t)
    assert 2 * c.index_bil == c.index_lev * c.index_nat_over_lev
    assert c.index_nat_over_lev == sl2_order(t)


def test_cuspform_leading_examples():
    assert dm.cuspform_leading(3) == Fraction(1, 6)
    assert dm.cuspform_leading(5) == Fraction(65, 6)
    assert phi_m(4, 15) == 49920
    assert dm.cuspform_leading(15) == dm.cuspform_leading_from_index(15)


def test_cuspform_times_8640_is_the_index():
    for t in range(3, 100, 2):
        assert dm.cuspform_leading(t) * 8640 == dm.index_chain(t).index_bil


@given(odd_t)
def test_dim_term_two_routes(t):
    assert dm.dim_term(t) == dm.dim_term_from_cuspforms(t)


def test_dim_term_value():
    assert dm.dim_term(9) == Fraction(729, 32)


def test_gamma_tr_member():
    assert dm.gamma_tr_member(((1, 0), (0, 1)), 9, 3)
    assert dm.gamma_tr_member(((1, 81), (0, 1)), 9, 3)
    assert not dm.gamma_tr_member(((1, 9), (0, 1)), 9, 3)
    with pytest.raises(InvalidArgument):
        dm.gamma_tr_member(((2, 0), (0, 1)), 9, 3)


def test_index_gamma_tr():
    assert dm.index_gamma_tr(15, 3) == 8640
    for t, r in ((3, 1), (3, 3), (5, 1), (5, 5)):
        assert dm.index_gamma_tr_oracle(t, r) == dm.index_gamma_tr(t, r)
    with pytest.raises(InvalidArgument):
        dm.index_gamma_tr(15, 4)


@pytest.mark.parametrize("t", [9, 15])
def test_gamma_tr_chain(t):
    for r in divisors(t):
        f = dm.gamma_tr_chain(t, r)
        assert f["Gamma_0(t):Gamma_0(t)(r)"] == r
        assert f["Gamma_0(t)(r):Gamma(t,r)"] == t
        assert f["Gamma(1):Gamma_0(t)"] * r * t == dm.index_gamma_tr(t, r)


def test_mu_tr():
    assert dm.mu_tr(9, 1) == 162
    assert dm.mu_tr(9, 9) == 1458
    assert dm.mu_tr(15, 3) == 3 * 15 * 96


def test_kernel_coefficient():
    assert dm.kernel_k3_coefficient() == Fraction(11, 36)


@given(odd_t)
def test_omega_v_is_delta_rtnu_11_36(t):
    for r in divisors(t):
        assert dm.omega_v_leading(t, r) == dm.delta(t, r) * r * t * dm.nu(t) * Fraction(11, 36)


def test_omega_v_example():
    assert dm.omega_v_leading(9, 3) == 297
    assert dm.delta(9, 9) == Fraction(1, 2)


def test_jacobi_sum_symbolically():
    K = Poly.variable("k")
    closed = poly_sum_range(dm.jacobi_dim_leading(9, 3), K)
    assert leading_coefficient(closed, 3) == 297


def test_omega_inf_paper_values():
    assert dm.omega_inf_paper_terms(9) == {1: Fraction(99, 4), 3: Fraction(22, 3), 9: Fraction(11, 4)}
    assert dm.omega_inf_paper(9) == Fraction(209, 6)
    assert dm.omega_inf_paper(17) == Fraction(187, 2)
    assert dm.omega_inf_paper(15) == 110


@given(odd_t)
def test_omega_inf_ratio_is_r2_over_2t(t):
    for r, q in dm.omega_inf_ratios(t).items():
        assert q == Fraction(r * r, 2 * t)
    assert dm.omega_inf_paper(t) > 0 and dm.omega_inf_derived(t) > 0


@given(odd_t)
def test_omega_inf_totals_differ_by_half(t):
    assert dm.omega_inf_derived(t) * 2 == dm.omega_inf_paper(t)


def test_omega_inf_derived_terms_use_counts():
    t = 15
    n2 = dm.nu(t) ** 2
    for r, v in dm.omega_inf_derived_terms(t).items():
        assert v == count_Phi_bar2(t // r) * count_Phi_bar2(r) * dm.omega_v_leading(t, r) / n2


def test_phi2_identity_counterexample():
    lhs, rhs = dm.phi2_product_identity(15)[3]
    assert (lhs, rhs) == (192, 225)
