"""Index chains, the cusp-form leading term and the boundary obstruction.

Throughout, nu means the working normalisation phi_2(t)/2 and mu = t nu.
Every obstruction is reported as the coefficient of nu^2 k^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import count_Phi_bar2, divisors, euler_product, phi_m, prime_factors, sl2_order
from .errors import InvalidArgument, ResourceLimit, UnsupportedModulus
from .exact import Poly, leading_coefficient, poly_sum_range


def _require_odd(t: int) -> None:
    if t <= 2 or t % 2 == 0:
        raise UnsupportedModulus(f"t must be odd and > 2, got {t}")


def _require_divisor(t: int, r: int) -> None:
    if r < 1 or t % r:
        raise InvalidArgument(f"r = {r} does not divide t = {t}")


def nu(t: int) -> Fraction:
    return Fraction(phi_m(2, t), 2)


def mu(t: int) -> Fraction:
    return t * nu(t)


@dataclass(frozen=True)
class IndexChain:
    t: int
    index_lev: int
    index_nat_over_lev: int
    index_bil: int


def index_chain(t: int) -> IndexChain:
    _require_odd(t)
    p2, p4 = phi_m(2, t), phi_m(4, t)
    lev = t * p4 // 2
    nat_over_lev = t * p2
    bil = t * t * p2 * p4 // 4
    if 2 * bil != lev * nat_over_lev:
        raise AssertionError("index chain is inconsistent")
    return IndexChain(t, lev, nat_over_lev, bil)


def cuspform_leading(t: int) -> Fraction:
    """Coefficient of n^3 in dim S_n for the bilevel group."""
    _require_odd(t)
    return Fraction(t * t * phi_m(2, t) * phi_m(4, t), 34560)


def cuspform_leading_from_index(t: int) -> Fraction:
    return Fraction(index_chain(t).index_bil, 8640)


def dim_term(t: int) -> Fraction:
    """Cusp-form leading term at n = 3k, as a coefficient of nu^2 k^3."""
    _require_odd(t)
    return Fraction(t**4, 320) * euler_product(t, 2, 1)


def dim_term_from_cuspforms(t: int) -> Fraction:
    """The same term obtained by substituting n = 3k and dividing by nu^2."""
    return 27 * cuspform_leading(t) / nu(t) ** 2


# -- Gamma(t, r) ------------------------------------------------------------


def gamma_tr_member(gamma, t: int, r: int) -> bool:
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise InvalidArgument("gamma must have determinant 1")
    _require_divisor(t, r)
    return (a - 1) % t == 0 and (d - 1) % t == 0 and b % (t * t) == 0 and c % r == 0


def index_gamma_tr(t: int, r: int) -> int:
    _require_divisor(t, r)
    return r * t * phi_m(2, t)


def index_gamma_tr_oracle(t: int, r: int) -> int:
    """Index via the image in SL(2, Z_{t^2}), by brute-force enumeration.

    Gamma(t, r) contains the principal congruence subgroup of level t^2, so
    the index equals |SL(2, Z_N)| / |image| with N = t^2.
    """
    _require_divisor(t, r)
    N = t * t
    if N > 25:
        raise ResourceLimit(f"t = {t} too large for the index oracle")
    g = np.indices((N, N, N, N)).reshape(4, -1)
    a, b, c, d = g
    sl = (a * d - b * c) % N == 1 % N
    sub = sl & ((a - 1) % t == 0) & ((d - 1) % t == 0) & (b % N == 0) & (c % r == 0)
    total, image = int(sl.sum()), int(sub.sum())
    if total % image:
        raise AssertionError("subgroup order does not divide group order")
    return total // image


def gamma_tr_chain(t: int, r: int) -> dict[str, int]:
    """Factors of [Gamma(1) : Gamma(t, r)] along Gamma(1) > Gamma_0 > Gamma_0(r) > Gamma(t, r).

    The last factor is the size of the orbit of (1, 0) in Z_t x Z_{t^2}
    under the generators (1 t; 0 1) and (1 0; r 1), computed by search.
    """
    _require_divisor(t, r)
    gens = [((1, t), (0, 1)), ((1, -t), (0, 1)), ((1, 0), (r, 1)), ((1, 0), (-r, 1))]
    seen = {(1, 0)}
    frontier = [(1, 0)]
    while frontier:
        nxt = []
        for x, y in frontier:
            for (a, b), (c, d) in gens:
                img = ((a * x + c * y) % t, (b * x + d * y) % (t * t))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    principal = sl2_order(t)
    return {
        "Gamma(1):Gamma_1(t)": principal,
        "Gamma_0(t):Gamma_1(t)": t,
        "Gamma(1):Gamma_0(t)": principal // t,
        "Gamma_0(t):Gamma_0(t)(r)": r,
        "Gamma_0(t)(r):Gamma(t,r)": len(seen),
    }


def mu_tr(t: int, r: int) -> Fraction:
    """PSL index of the Jacobi group at a divisor of t-divisor r."""
    _require_odd(t)
    _require_divisor(t, r)
    n = nu(t)
    if r == 1:
        return Fraction(t) * n / 2
    if r == t:
        return Fraction(t * t) * n / 2
    return r * t * n


def delta(t: int, r: int) -> Fraction:
    return Fraction(1, 2) if r in (1, t) else Fraction(1)


# -- Jacobi forms and Omega_v -----------------------------------------------

K = Poly.variable("k")
W = Poly.variable("w")


def jacobi_kernel() -> Poly:
    """kw/2 + w^2/6 as a polynomial in w over Q[k]."""
    return Poly([0, K / 2, Fraction(1, 6)], "w")


def jacobi_dim_leading(t: int, r: int) -> Poly:
    """delta r t nu (kw/2 + w^2/6), polynomial in w with coefficients in Q[k]."""
    _require_odd(t)
    _require_divisor(t, r)
    return jacobi_kernel() * (delta(t, r) * r * t * nu(t))


def kernel_k3_coefficient() -> Fraction:
    """k^3 coefficient of sum_{w<k} (kw/2 + w^2/6)."""
    return leading_coefficient(poly_sum_range(jacobi_kernel(), K), 3)


def omega_v_leading(t: int, r: int) -> Fraction:
    """k^3 coefficient of Omega_v = sum_{w<k} dim J_{3k,w}."""
    return leading_coefficient(poly_sum_range(jacobi_dim_leading(t, r), K), 3)


# -- Omega_infinity ---------------------------------------------------------


def _coprime_part_product(r: int, h: int) -> Fraction:
    out = Fraction(1)
    for p in prime_factors(r):
        if h % p == 0:
            out *= 1 - Fraction(1, p * p)
    return out


def omega_inf_paper_terms(t: int) -> dict[int, Fraction]:
    _require_odd(t)
    return {r: Fraction(11, 36 * r) * t * t * _coprime_part_product(r, t // r)
            for r in divisors(t)}


def omega_inf_paper(t: int) -> Fraction:
    return sum(omega_inf_paper_terms(t).values(), Fraction(0))


def omega_inf_derived_terms(t: int) -> dict[int, Fraction]:
    """Per divisor: (number of divisors) x Omega_v, divided by nu^2."""
    _require_odd(t)
    n2 = nu(t) ** 2
    return {r: count_Phi_bar2(t // r) * count_Phi_bar2(r) * omega_v_leading(t, r) / n2
            for r in divisors(t)}


def omega_inf_derived(t: int) -> Fraction:
    return sum(omega_inf_derived_terms(t).values(), Fraction(0))


def omega_inf_ratios(t: int) -> dict[int, Fraction]:
    """derived / printed per divisor; equals r^2 / (2t) identically."""
    p, d = omega_inf_paper_terms(t), omega_inf_derived_terms(t)
    return {r: d[r] / p[r] for r in p}


def phi2_product_identity(t: int) -> dict[int, tuple[Fraction, Fraction]]:
    """phi_2(r) phi_2(h) against the printed t^2 prod_{p | (r, h)} (1 - p^-2)."""
    out = {}
    for r in divisors(t):
        h = t // r
        out[r] = (Fraction(phi_m(2, r) * phi_m(2, h)), t * t * _coprime_part_product(r, h))
    return out
