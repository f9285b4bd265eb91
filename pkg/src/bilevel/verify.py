"""Matrix-level and oracle verification suite behind ``bilevel verify``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import arith, boundary, dimensions, symplectic as sp
from .exact import FAULHABER, Poly, poly_sum_range

DEFAULT_TS = (5, 7, 9, 15)
CONJUGATION_PAIRS = ((9, 1), (9, 3), (9, 9), (15, 3), (15, 5))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def torsion_checks(ts) -> list[Check]:
    out = [Check("zeta^2 = xi^2 = 1", sp.ZETA @ sp.ZETA == sp.IDENTITY and sp.XI @ sp.XI == sp.IDENTITY),
           Check("zeta, xi symplectic", sp.is_symplectic(sp.ZETA) and sp.is_symplectic(sp.XI))]
    for t in ts:
        ok = all(sp.member(x, sp.GAMMA_BIL, t) for x in (sp.ZETA, sp.XI))
        core = not any(sp.member(x, sp.GAMMA_NAT, t) for x in (sp.ZETA, sp.XI))
        kinds = (sp.classify_torsion(sp.ZETA, t), sp.classify_torsion(sp.XI, t))
        out.append(Check(f"t={t}: zeta, xi in bilevel group, not in core", ok and core))
        out.append(Check(f"t={t}: torsion types", kinds == ("zeta", "xi"), str(kinds)))
    return out


def charpoly_checks(ts, rng: random.Random, samples: int = 20) -> list[Check]:
    out = []
    for t in ts:
        uni, split = sp.unipotent_charpoly(t), sp.split_charpoly(t)
        bad = []
        for _ in range(samples):
            M = sp.random_member(sp.GAMMA_NAT, t, rng)
            if sp.charpoly_mod(M, t) != uni or sp.charpoly_mod(sp.ZETA @ M, t) != split:
                bad.append(M)
        out.append(Check(f"t={t}: charpoly (1-x)^4 on core, (1-x)^2(1+x)^2 on zeta coset",
                         not bad, f"{samples} samples, {len(bad)} failures"))
    return out


def _fixed_locus_grid():
    vals = [Fraction(0), Fraction(1, 2), Fraction(-1, 3)]
    for a, c in itertools.product(vals, repeat=2):
        for tau2 in (sp.QComplex(0), sp.QComplex(c, Fraction(1, 2)), sp.QComplex(c, 0)):
            yield sp.SiegelPoint(sp.QComplex(a, 2), tau2, sp.QComplex(c, 3))
        # 2 tau2 + tau3 = 0 with positive definite imaginary part
        yield sp.SiegelPoint(sp.QComplex(a, 2), sp.QComplex(c, -1), sp.QComplex(-2 * c, 2))


def fixed_locus_checks() -> list[Check]:
    pts = list(_fixed_locus_grid())
    bad_z = [Z for Z in pts if (sp.siegel_act(sp.ZETA, Z) == Z) != (Z.tau2 == 0)]
    bad_x = [Z for Z in pts if (sp.siegel_act(sp.XI, Z) == Z) != (2 * Z.tau2 + Z.tau3 == 0)]
    on_z = sum(Z.tau2 == 0 for Z in pts)
    on_x = sum(2 * Z.tau2 + Z.tau3 == 0 for Z in pts)
    return [
        Check("zeta fixes Z iff tau2 = 0", not bad_z, f"{len(pts)} points, {on_z} on the locus"),
        Check("xi fixes Z iff 2 tau2 + tau3 = 0", not bad_x, f"{len(pts)} points, {on_x} on the locus"),
    ]


def conjugation_suite(pairs) -> list[Check]:
    out = []
    for t, r in pairs:
        rep = sp.conjugation_checks(t, r)
        for item, ok in sorted(rep.by_item().items()):
            fails = [c for c in rep.items if c.item == item and not c.passed]
            detail = f"{len(fails)} of {sum(c.item == item for c in rep.items)} fail"
            if fails and fails[0].detail:
                detail += f"; e.g. {fails[0].label}: {fails[0].detail}"
            out.append(Check(f"conjugation (t={t}, r={r}) item ({item})", ok, detail))
    return out


def project_lev_checks(t: int, rng: random.Random, samples: int = 100) -> list[Check]:
    hom_bad = 0
    for _ in range(samples):
        M = sp.random_member(sp.GAMMA_LEV, t, rng)
        N = sp.random_member(sp.GAMMA_LEV, t, rng)
        if sp.project_lev(M @ N, t) != sp.mat2_mul_mod(sp.project_lev(M, t), sp.project_lev(N, t), t):
            hom_bad += 1
    one = ((1, 0), (0, 1))
    ker_bad = 0
    kernel_hits = 0
    for _ in range(samples):
        M = sp.random_member(sp.GAMMA_NAT, t, rng)
        if sp.project_lev(M, t) != one:
            ker_bad += 1
        L = sp.random_member(sp.GAMMA_LEV, t, rng)
        if sp.project_lev(L, t) == one:
            kernel_hits += 1
            if not sp.member(L, sp.GAMMA_NAT, t):
                ker_bad += 1
    return [
        Check(f"t={t}: project_lev is multiplicative", hom_bad == 0, f"{samples} pairs"),
        Check(f"t={t}: kernel of project_lev is the core", ker_bad == 0,
              f"{samples} core samples, {kernel_hits} level samples in the kernel"),
    ]


def faulhaber_checks(upto: int = 25) -> list[Check]:
    out = []
    for d in range(len(FAULHABER)):
        bad = [n for n in range(upto) if FAULHABER[d](n) != sum(Fraction(j) ** d for j in range(n))]
        out.append(Check(f"Faulhaber degree {d}", not bad))
    k = Poly.variable("k")
    p = dimensions.jacobi_kernel()
    closed = poly_sum_range(p, k)
    bad = [n for n in range(1, 15) if closed.subs("k", n) != sum(p.subs("k", n)(w) for w in range(n))]
    out.append(Check("sum_{w<k} (kw/2 + w^2/6) closed form", not bad))
    out.append(Check("k^3 coefficient 11/36", dimensions.kernel_k3_coefficient() == Fraction(11, 36)))
    return out


def oracle_checks() -> list[Check]:
    out = []
    bad = [(m, r) for m in (1, 2, 4) for r in range(1, 13)
           if arith.phi_m(m, r) != len(arith.enumerate_Phi_m(m, r))]
    out.append(Check("phi_m against enumeration, r <= 12", not bad, str(bad) if bad else ""))
    bad = [t for t in (3, 5, 7) if arith.sl2_order(t) != arith.sl2_order_oracle(t)]
    out.append(Check("|SL(2, Z_t)| against enumeration, t <= 7", not bad))
    for t in (3, 5, 9):
        oracle = boundary.count_boundary_oracle(t).counts
        out.append(Check(f"boundary counts t={t}: closed form against orbit oracle",
                         oracle == boundary.count_boundary_closed(t), str(oracle)))
    bad = [(t, r) for t, r in ((3, 1), (3, 3), (5, 1), (5, 5))
           if dimensions.index_gamma_tr(t, r) != dimensions.index_gamma_tr_oracle(t, r)]
    out.append(Check("[Gamma(1) : Gamma(t, r)] against enumeration", not bad))
    bad = [r for r in (3, 5, 7) if arith.modular_curve_census(r).genus != arith.genus_X(r)]
    out.append(Check("genus of X(r) against a cycle census, r <= 7", not bad))
    bad = [t for t in range(3, 40, 2) if dimensions.dim_term(t) != dimensions.dim_term_from_cuspforms(t)]
    out.append(Check("leading cusp-form term, two routes, t < 40", not bad))
    return out


def run(ts=None, seed: int = 0, pairs=None) -> list[Check]:
    rng = random.Random(seed)
    ts = tuple(ts) if ts else DEFAULT_TS
    if pairs is None:
        if ts == DEFAULT_TS:
            pairs = CONJUGATION_PAIRS
        else:
            pairs = tuple((t, r) for t in ts for r in arith.divisors(t))
    checks = []
    checks += torsion_checks(ts)
    checks += charpoly_checks(ts, rng)
    checks += fixed_locus_checks()
    checks += conjugation_suite(pairs)
    checks += project_lev_checks(5, rng)
    checks += faulhaber_checks()
    checks += oracle_checks()
    return checks
