"""Multiplicative functions phi_m, the sets Phi_m(r), and modular-curve invariants.

Two normalizations of the modular-curve data are exposed side by side.
``mu_paper`` and ``nu_paper`` follow the printed formulas literally
(``mu = r^3 prod(1 - p^-2)`` is the order of SL(2, Z_r), not the PSL index),
while ``nu_cusps`` and ``genus_X`` use the standard halved values.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidArgument, ResourceLimit, UnsupportedModulus

ENUMERATION_GUARD = 10**8
SL2_ORACLE_MAX = 16


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) with p increasing."""
    if n < 1:
        raise InvalidArgument(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def prime_factors(n: int) -> tuple[int, ...]:
    return tuple(p for p, _ in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class ModulusProfile:
    t: int
    prime_factors: tuple[int, ...] = field(init=False)
    divisors: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.t < 3 or self.t % 2 == 0:
            raise UnsupportedModulus(f"t must be odd and >= 3, got {self.t}")
        object.__setattr__(self, "prime_factors", prime_factors(self.t))
        object.__setattr__(self, "divisors", tuple(divisors(self.t)))

    @property
    def factorization(self) -> tuple[tuple[int, int], ...]:
        return factorize(self.t)


def phi_m(m: int, r: int) -> int:
    """Number of m-tuples over Z_r that are not a multiple of a zerodivisor.

    Closed form r^m prod_{p | r} (1 - p^-m), evaluated one prime power at a
    time so it stays integral.
    """
    if m < 1 or r < 1:
        raise InvalidArgument("phi_m needs m >= 1 and r >= 1")
    out = 1
    for p, e in factorize(r):
        out *= p ** (e * m) - p ** ((e - 1) * m)
    return out


def enumerate_Phi_m(m: int, r: int) -> set[tuple[int, ...]]:
    """Literal enumeration of Phi_m(r): remove every z * a' with z a non-unit."""
    if m < 1 or r < 1:
        raise InvalidArgument("enumerate_Phi_m needs m >= 1 and r >= 1")
    size = r**m
    if size > ENUMERATION_GUARD:
        raise ResourceLimit(f"r^m = {size} exceeds the enumeration guard {ENUMERATION_GUARD}")
    grid = np.indices((r,) * m).reshape(m, -1).T.astype(np.int64)
    weights = r ** np.arange(m - 1, -1, -1, dtype=np.int64)
    is_multiple = np.zeros(size, dtype=bool)
    for z in range(r):
        if math.gcd(z, r) == 1:
            continue
        images = (grid * z) % r
        is_multiple[images @ weights] = True
    keep = grid[~is_multiple]
    return {tuple(int(x) for x in row) for row in keep}


def count_Phi_bar2(r: int) -> int:
    """#(Phi_2(r) / +-1)."""
    if r == 2:
        raise UnsupportedModulus("r = 2 is not supported (t is odd)")
    if r < 1:
        raise InvalidArgument(f"r must be positive, got {r}")
    if r == 1:
        return 1
    return phi_m(2, r) // 2


def euler_product(t: int, m: int, sign: int) -> Fraction:
    """prod_{p | t} (1 + sign * p^-m)."""
    if sign not in (1, -1):
        raise InvalidArgument("sign must be +1 or -1")
    out = Fraction(1)
    for p in prime_factors(t):
        out *= 1 + Fraction(sign, p**m)
    return out


def sl2_order(t: int) -> int:
    if t < 2:
        raise InvalidArgument("sl2_order needs t >= 2")
    return t * phi_m(2, t)


def sl2_order_oracle(t: int) -> int:
    """Count 2x2 matrices over Z_t with determinant 1 by full enumeration."""
    if t < 2:
        raise InvalidArgument("sl2_order_oracle needs t >= 2")
    if t > SL2_ORACLE_MAX:
        raise ResourceLimit(f"t = {t} exceeds the SL2 enumeration guard {SL2_ORACLE_MAX}")
    return sum(
        1
        for a, b, c, d in itertools.product(range(t), repeat=4)
        if (a * d - b * c) % t == 1 % t
    )


def mu_paper(r: int) -> Fraction:
    """r^3 prod (1 - p^-2), as printed (equals |SL(2, Z_r)|)."""
    return Fraction(r**3) * euler_product(r, 2, -1)


def nu_paper(r: int) -> Fraction:
    """mu_paper / r, as printed (equals phi_2(r))."""
    return mu_paper(r) / r


def _require_gt2(r: int, what: str) -> None:
    if r <= 2:
        raise UnsupportedModulus(f"{what} needs r > 2, got {r}")


def nu_cusps(r: int) -> Fraction:
    """Number of cusps of X(r)."""
    _require_gt2(r, "nu_cusps")
    return nu_paper(r) / 2


def genus_X(r: int) -> Fraction:
    """Genus of X(r) with mu taken as the PSL index mu_paper / 2."""
    _require_gt2(r, "genus_X")
    return 1 + (mu_paper(r) / 2) / 12 - nu_cusps(r) / 2


def genus_X_printed(r: int) -> Fraction:
    """The printed genus formula applied to the printed mu and nu (can be negative)."""
    _require_gt2(r, "genus_X_printed")
    return 1 + mu_paper(r) / 12 - nu_paper(r) / 2


# -- Riemann-Hurwitz census -------------------------------------------------


def _mat_mul_mod(x, y, r):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % r, (a * f + b * h) % r, (c * e + d * g) % r, (c * f + d * h) % r)


def _psl_key(x, r):
    neg = tuple((-v) % r for v in x)
    return min(x, neg)


def _cycle_count(perm: dict) -> int:
    seen = set()
    cycles = 0
    for start in perm:
        if start in seen:
            continue
        cycles += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
    return cycles


@dataclass(frozen=True)
class ModularCurveCensus:
    r: int
    psl_order: int
    cusps: int
    elliptic2: int
    elliptic3: int
    genus: int


def modular_curve_census(r: int) -> ModularCurveCensus:
    """Genus and cusps of X(r) from the permutation action of PSL(2, Z_r) on itself.

    Builds PSL(2, Z_r) by enumeration, lets the images of S, ST and T act by
    right multiplication and applies Riemann-Hurwitz to the cycle counts of
    the three permutations.
    """
    _require_gt2(r, "modular_curve_census")
    if r**4 > 10**6:
        raise ResourceLimit(f"r = {r} too large for the census")
    elements = set()
    for a, b, c, d in itertools.product(range(r), repeat=4):
        if (a * d - b * c) % r == 1:
            elements.add(_psl_key((a, b, c, d), r))
    S = (0, r - 1, 1, 0)
    T = (1, 1, 0, 1)
    ST = _mat_mul_mod(S, T, r)

    def perm(g):
        return {x: _psl_key(_mat_mul_mod(x, g, r), r) for x in elements}

    n = len(elements)
    c_s, c_st, c_t = (_cycle_count(perm(g)) for g in (S, ST, T))
    two_g_minus_2 = -2 * n + (n - c_s) + (n - c_st) + (n - c_t)
    if two_g_minus_2 % 2:
        raise AssertionError("Riemann-Hurwitz parity violated")
    fixed_s = sum(1 for x, y in perm(S).items() if x == y)
    fixed_st = sum(1 for x, y in perm(ST).items() if x == y)
    return ModularCurveCensus(r, n, c_t, fixed_s, fixed_st, two_g_minus_2 // 2 + 1)
