"""Picard lattices of the branch surfaces H1, H2 and the obstructions Omega_1, Omega_2.

Symbolic computations work "per nu": every quadratic quantity here is
homogeneous of degree 2 in nu once (Sigma + Psi)-coefficients are given
weight 1 and R-coefficients weight 0 (R^2 = -2 nu^2). Setting nu = 1 and
mu = t therefore yields the coefficient of nu^2 directly, as a polynomial
in t. Concrete checks (Nakai) use nu = phi_2(t)/2 and mu = t nu.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .arith import phi_m
from .errors import InvalidArgument
from .exact import Poly, leading_coefficient, poly_sum_range

T = Poly.variable("t")
K = Poly.variable("k")
JV = Poly.variable("j")

SURFACES = ("H1", "H2")
GENUS_RELATIONS = ("printed", "standard", "sl_index")


def _zero():
    return Fraction(0)


@dataclass
class PicLattice:
    """Gram matrix plus pairing with the surface class in the ambient threefold."""

    surface: str
    basis: tuple[str, ...]
    gram: dict[tuple[str, str], object]
    ambient: dict[str, object]
    mu: object
    nu: object

    def g(self, x: str, y: str):
        if (x, y) in self.gram:
            return self.gram[(x, y)]
        return self.gram.get((y, x), _zero())

    def pairing(self, u: Mapping[str, object], v: Mapping[str, object]):
        for cls in (u, v):
            extra = set(cls) - set(self.basis)
            if extra:
                raise InvalidArgument(f"classes {sorted(extra)} are not in the {self.surface} basis")
        total = _zero()
        for x, cx in u.items():
            for y, cy in v.items():
                gxy = self.g(x, y)
                if gxy != 0:
                    total = total + cx * cy * gxy
        return total


def pic_lattice(surface: str, mu=None, nu=None) -> PicLattice:
    """Aggregate lattice. Defaults are the symbolic per-nu values mu = t, nu = 1."""
    if mu is None:
        mu = T
    if nu is None:
        nu = Fraction(1)
    if surface == "H1":
        return PicLattice(
            "H1", ("Sigma", "Psi"),
            {("Sigma", "Sigma"): 0, ("Psi", "Psi"): 0, ("Sigma", "Psi"): Fraction(1)},
            {"Sigma": -mu / 6, "Psi": -mu / 6}, mu, nu)
    if surface == "H2":
        return PicLattice(
            "H2", ("Sigma", "Psi", "R"),
            {("Sigma", "Sigma"): 0, ("Psi", "Psi"): 0, ("Sigma", "Psi"): Fraction(6),
             ("Sigma", "R"): 0, ("Psi", "R"): 0, ("R", "R"): -2 * nu * nu},
            {"Sigma": -mu, "Psi": -mu, "R": -4 * nu * nu}, mu, nu)
    raise InvalidArgument(f"unknown surface {surface!r}")


def sigma_genus_term(surface: str, mu, nu, relation: str = "printed"):
    """2g(Sigma) - 2 for the fibre curve of the surface.

    printed        H1: mu/6 - nu        H2: mu - nu/2
    standard       H1: mu/6 - nu        H2: mu - 3 nu  (genus of X(2t))
    sl_index  H1: 2 (mu/6 - nu)    H2: 2 (mu - 3 nu)  (SL index, phi_2 cusps)
    """
    if relation not in GENUS_RELATIONS:
        raise InvalidArgument(f"unknown genus relation {relation!r}")
    if surface == "H1":
        base = mu / 6 - nu
        return 2 * base if relation == "sl_index" else base
    if surface == "H2":
        if relation == "printed":
            return mu - nu / 2
        base = mu - 3 * nu
        return 2 * base if relation == "sl_index" else base
    raise InvalidArgument(f"unknown surface {surface!r}")


def _solve(A: list[list[Fraction]], rhs: list):
    """Gaussian elimination with scalar matrix and ring-valued right-hand side."""
    n = len(A)
    M = [list(map(Fraction, row)) + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise InvalidArgument("singular system")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


@dataclass
class SurfaceCoeffs:
    """H|_H = a (Sigma + Psi) + c R and K = b (Sigma + Psi) + d R."""

    surface: str
    a: object
    b: object
    c: object = Fraction(0)
    d: object = Fraction(0)
    relation: str = "printed"

    def restriction(self) -> dict[str, object]:
        out = {"Sigma": self.a, "Psi": self.a}
        if self.surface == "H2":
            out["R"] = self.c
        return out

    def canonical(self) -> dict[str, object]:
        out = {"Sigma": self.b, "Psi": self.b}
        if self.surface == "H2":
            out["R"] = self.d
        return out


def derive_surface_coeffs(surface: str, t: int | None = None,
                          relation: str = "printed") -> SurfaceCoeffs:
    """Solve for the coefficients from the pairing tables.

    With t = None the result is symbolic per nu (polynomials in t); with an
    integer t the concrete values nu = phi_2(t)/2, mu = t nu are used.
    """
    if t is None:
        lat = pic_lattice(surface)
    else:
        if t < 3 or t % 2 == 0:
            raise InvalidArgument(f"t must be odd and >= 3, got {t}")
        nu = Fraction(phi_m(2, t), 2)
        lat = pic_lattice(surface, t * nu, nu)
    mu, nu = lat.mu, lat.nu
    gen = sigma_genus_term(surface, mu, nu, relation)
    if surface == "H1":
        # Sigma . H = a Sigma.(Sigma+Psi); K.Sigma = 2g - 2 - Sigma^2.
        S = {"Sigma": Fraction(1), "Psi": Fraction(1)}
        row = lat.pairing({"Sigma": 1}, S)
        (a,) = _solve([[row]], [lat.ambient["Sigma"]])
        (b,) = _solve([[row]], [gen - lat.g("Sigma", "Sigma")])
        return SurfaceCoeffs("H1", a, b, relation=relation)
    S = {"Sigma": Fraction(1), "Psi": Fraction(1)}
    Rc = {"R": Fraction(1)}
    A = [[lat.pairing({"Sigma": 1}, S), lat.pairing({"Sigma": 1}, Rc)],
         [lat.pairing(Rc, S) / (nu * nu), lat.pairing(Rc, Rc) / (nu * nu)]]
    a, c = _solve(A, [lat.ambient["Sigma"], lat.ambient["R"] / (nu * nu)])
    # K.R = 0 for (-2)-curves by adjunction.
    b, d = _solve(A, [gen - lat.g("Sigma", "Sigma"), Fraction(0)])
    return SurfaceCoeffs("H2", a, b, c, d, relation)


def _lin(u: Mapping[str, object], x, v: Mapping[str, object], y) -> dict[str, object]:
    keys = set(u) | set(v)
    return {k: x * u.get(k, 0) + y * v.get(k, 0) for k in keys}


def pluri_class(co: SurfaceCoeffs, kk, jj, canonical_weight=None) -> dict[str, object]:
    """canonical_weight * K - (k/2 + j) H|_H; canonical_weight defaults to k."""
    w = kk if canonical_weight is None else canonical_weight
    return _lin(co.canonical(), w, co.restriction(), -(kk / 2 + jj))


def omega_H_printed(i: int) -> Poly:
    if i == 1:
        return Poly([Fraction(1, 2), Fraction(-7, 24), Fraction(37, 864)], "t")
    if i == 2:
        return Poly([Fraction(-55, 24), Fraction(-7, 24), Fraction(37, 72)], "t")
    raise InvalidArgument("i must be 1 or 2")


def omega_H_summand(i: int, relation: str = "printed"):
    """(1/2) L^2 for L = k K - (k/2 + j) H|_H, as a polynomial in j over Q[t][k]."""
    surface = SURFACES[i - 1] if i in (1, 2) else None
    if surface is None:
        raise InvalidArgument("i must be 1 or 2")
    lat = pic_lattice(surface)
    co = derive_surface_coeffs(surface, None, relation)
    L = pluri_class(co, K, JV)
    return lat.pairing(L, L) / 2


def omega_H_derived(i: int, relation: str = "printed") -> Poly:
    """k^3 coefficient of sum_{j < k/2} (1/2) L_j^2, per nu^2, as a polynomial in t."""
    total = poly_sum_range(omega_H_summand(i, relation), K / 2)
    c = leading_coefficient(total, 3)
    return c if isinstance(c, Poly) else Poly([c], "t")


# -- Nakai on H2 ------------------------------------------------------------


@dataclass
class GranularLattice:
    """H2 with the nu x nu exceptional curves R_(alpha, beta) kept separate."""

    nu: int
    mu: Fraction
    adj: dict = field(default_factory=dict)

    @classmethod
    def build(cls, mu, nu: int) -> "GranularLattice":
        adj: dict = {"Sigma": {"Psi": Fraction(6)}, "Psi": {"Sigma": Fraction(6)}}
        for a in range(nu):
            for b in range(nu):
                adj[("R", a, b)] = {("R", a, b): Fraction(-2)}
        return cls(nu, mu, adj)

    def pairing(self, u: Mapping, v: Mapping) -> Fraction:
        total = Fraction(0)
        for x, cx in u.items():
            row = self.adj.get(x)
            if row is None:
                raise InvalidArgument(f"unknown class {x!r}")
            for y, g in row.items():
                cy = v.get(y)
                if cy:
                    total += cx * cy * g
        return total

    def from_aggregate(self, cls_: Mapping[str, object]) -> dict:
        """Replace the aggregate R by the sum of all R_(alpha, beta)."""
        out = {k: v for k, v in cls_.items() if k != "R"}
        r = cls_.get("R", 0)
        if r:
            for a in range(self.nu):
                for b in range(self.nu):
                    out[("R", a, b)] = r
        return out

    def sigma_alpha(self, a: int) -> dict:
        out = {"Sigma": Fraction(1)}
        for b in range(self.nu):
            out[("R", a, b)] = Fraction(-1)
        return out

    def psi_beta(self, b: int) -> dict:
        out = {"Psi": Fraction(1)}
        for a in range(self.nu):
            out[("R", a, b)] = Fraction(-1)
        return out


@dataclass
class NakaiReport:
    t: int
    k: int
    j: int
    L_squared: Fraction
    L_sigma: Fraction
    L_psi: Fraction
    L_R: Fraction
    granular_agrees: bool

    @property
    def ample(self) -> bool:
        return self.L_squared > 0 and self.L_sigma > 0 and self.L_psi > 0 and self.L_R > 0

    def __bool__(self):
        return self.ample


def nakai_quantities(t: int, k: int, j: int, granular: bool = True) -> NakaiReport:
    """Nakai data for L_j = (k-1) K - (k/2 + j) H|_H on H2, no range checks on t."""
    nu = phi_m(2, t) // 2
    co = derive_surface_coeffs("H2", t)
    lat = pic_lattice("H2", co_mu(t), Fraction(nu))
    L = pluri_class(co, Fraction(k), Fraction(j), canonical_weight=Fraction(k - 1))
    # Aggregate closed forms: with A the (Sigma+Psi) coefficient, e = k + 2j,
    # L.R_ab = 2e, L.Sigma_a = 6A - 2 nu e, L^2 = 12 A^2 - 2 nu^2 e^2.
    A = L["Sigma"]
    L2 = lat.pairing(L, L)
    l_r = -2 * L["R"]
    l_sigma = 6 * A + nu * 2 * L["R"]
    l_psi = 6 * A + nu * 2 * L["R"]
    agrees = True
    if granular:
        G = GranularLattice.build(co_mu(t), nu)
        Lg = G.from_aggregate(L)
        agrees = (G.pairing(Lg, Lg) == L2
                  and all(G.pairing(Lg, G.sigma_alpha(a)) == l_sigma for a in range(nu))
                  and all(G.pairing(Lg, G.psi_beta(b)) == l_psi for b in range(nu))
                  and all(G.pairing(Lg, {("R", a, b): 1}) == l_r
                          for a in range(nu) for b in range(nu)))
    return NakaiReport(t, k, j, L2, l_sigma, l_psi, l_r, agrees)


def co_mu(t: int) -> Fraction:
    return t * Fraction(phi_m(2, t), 2)


def nakai_check(t: int, k: int, j: int) -> NakaiReport:
    if t < 7 or t % 2 == 0:
        raise InvalidArgument(f"nakai_check needs odd t >= 7, got {t}")
    if k % 2 or k < 2:
        raise InvalidArgument("k must be even and positive")
    if not 0 <= j < k // 2:
        raise InvalidArgument(f"j must satisfy 0 <= j < k/2, got j = {j}")
    return nakai_quantities(t, k, j)


def nakai_validity_scan(ts=range(3, 16, 2), ks=(4, 6, 8)) -> dict[int, bool]:
    """For each t, whether L_j passes Nakai for every k in ks and every j < k/2."""
    return {t: all(nakai_quantities(t, k, j, granular=False).ample
                   for k in ks for j in range(k // 2)) for t in ts}


# -- H1 ampleness -----------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """k * k_coeff + j * j_coeff + const, coefficients polynomials in t."""

    k_coeff: Poly
    j_coeff: Poly
    const: Poly

    def at(self, t, k, j) -> Fraction:
        return self.k_coeff(t) * k + self.j_coeff(t) * j + self.const(t)


def h1_ampleness_form() -> LinearForm:
    """Per nu: (k t/4 - k + j t/6) - b_1, which must be positive."""
    co = derive_surface_coeffs("H1")
    sh = -(K / 2 + JV) * co.a + K * co.b   # coefficient of (Sigma + Psi) in the pluricanonical class
    minus_k = -co.b
    k_coeff = Poly([0, Fraction(1, 4)], "t") - 1
    j_coeff = Poly([0, Fraction(1, 6)], "t")
    form = LinearForm(k_coeff, j_coeff, minus_k if isinstance(minus_k, Poly) else Poly([minus_k], "t"))
    # Cross-check the hand-written k, j coefficients against the class itself.
    for kk, jj, tt in ((2, 0, 7), (4, 1, 9), (6, 2, 11)):
        val = sh
        for var, x in (("j", jj), ("k", kk), ("t", tt)):
            val = val.subs(var, x) if isinstance(val, Poly) else val
        if val + form.const(tt) != form.at(tt, kk, jj):
            raise AssertionError("ampleness form does not match the class")
    return form


def h1_ample_for(t: int) -> bool:
    """Symbolic argument: both slopes are positive, so the minimum over even
    k >= 2, 0 <= j < k/2 sits at k = 2, j = 0."""
    f = h1_ampleness_form()
    return f.k_coeff(t) > 0 and f.j_coeff(t) >= 0 and f.at(t, 2, 0) > 0
