"""The general-type inequality, per-t certificates, scans and the audit report.

All quantities are coefficients of nu^2 k^3. ``paper`` mode evaluates the
printed inequality verbatim; ``derived`` mode swaps in the recomputed
Omega_1 + Omega_2 and the divisor-count route for Omega_infinity.
A negative value means the method is inconclusive, never that the space
fails to be of general type.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import arith, boundary, dimensions, surfaces, symplectic
from .errors import InvalidArgument, UnsupportedModulus
from .exact import Poly, fmt, rational_from_json, rational_to_json

SCHEMA_VERSION = "1"
MODES = ("paper", "derived")
CERTIFIED = "general_type_certified"
INCONCLUSIVE = "inconclusive"
CSV_COLUMNS = ("t", "mode", "dim_term", "omega1", "omega2", "omega_inf", "ineq_value", "verdict")
AUDIT_RANGE = (3, 99)

# Sources for the H-obstructions: printed quadratics or the recomputation
# under one of the genus relations in surfaces.GENUS_RELATIONS.
H_SOURCES = ("printed", "derived", "derived_standard", "derived_sl_index")
INF_SOURCES = ("paper", "derived")


def _require_odd(t: int) -> None:
    if not isinstance(t, int) or t < 3:
        raise UnsupportedModulus(f"t must be an odd integer >= 3, got {t!r}")
    if t % 2 == 0:
        raise UnsupportedModulus(f"t = {t} is even; use the even-t corollary")


@lru_cache(maxsize=None)
def _omega_H(i: int, source: str) -> Poly:
    if source == "printed":
        return surfaces.omega_H_printed(i)
    if source == "derived":
        return surfaces.omega_H_derived(i, "printed")
    if source == "derived_standard":
        return surfaces.omega_H_derived(i, "standard")
    if source == "derived_sl_index":
        return surfaces.omega_H_derived(i, "sl_index")
    raise InvalidArgument(f"unknown obstruction source {source!r}")


def _omega_inf(t: int, source: str) -> Fraction:
    if source == "paper":
        return dimensions.omega_inf_paper(t)
    if source == "derived":
        return dimensions.omega_inf_derived(t)
    raise InvalidArgument(f"unknown boundary source {source!r}")


def _defaults(mode: str) -> tuple[str, str, str]:
    if mode == "paper":
        return "printed", "printed", "paper"
    if mode == "derived":
        return "derived", "derived", "derived"
    raise InvalidArgument(f"unknown mode {mode!r}")


def terms(t: int, mode: str = "paper", *, omega1: str | None = None,
          omega2: str | None = None, omega_inf: str | None = None) -> dict[str, Fraction]:
    _require_odd(t)
    d1, d2, dinf = _defaults(mode)
    out = {
        "dim_term": dimensions.dim_term(t),
        "omega1": _omega_H(1, omega1 or d1)(t),
        "omega2": _omega_H(2, omega2 or d2)(t),
        "omega_inf": _omega_inf(t, omega_inf or dinf),
    }
    out["ineq_value"] = out["dim_term"] - out["omega1"] - out["omega2"] - out["omega_inf"]
    return out


def ineq_value(t: int, mode: str = "paper", **overrides) -> Fraction:
    return terms(t, mode, **overrides)["ineq_value"]


def ineq_display(t: int) -> Fraction:
    """The printed inequality, typed in term by term as displayed."""
    _require_odd(t)
    return (Fraction(1, 320) * arith.euler_product(t, 2, 1) * t**4
            - Fraction(481, 864) * t * t + Fraction(7, 12) * t + Fraction(43, 24)
            - dimensions.omega_inf_paper(t))


MODE_NOTES = {
    "paper": [
        "omega2: printed quadratic is twice the recomputed one",
        "omega_inf: printed divisor terms differ from the divisor-count route by r^2/(2t)",
    ],
    "derived": [
        "omega2: b2 from the printed genus relation mu - nu/2",
        "omega_inf: divisor-count route, nu = phi_2(t)/2",
    ],
}


@dataclass
class Certificate:
    t: int
    mode: str
    dim_term: Fraction
    omega1: Fraction
    omega2: Fraction
    omega_inf: Fraction
    ineq_value: Fraction
    verdict: str
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.check()

    def check(self) -> None:
        if self.ineq_value != self.dim_term - self.omega1 - self.omega2 - self.omega_inf:
            raise AssertionError(f"certificate for t = {self.t} fails its own arithmetic")
        want = CERTIFIED if self.ineq_value > 0 else INCONCLUSIVE
        if self.verdict != want:
            raise AssertionError(f"certificate for t = {self.t} has verdict {self.verdict}")

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def to_dict(self) -> dict:
        self.check()
        out = {"schema_version": SCHEMA_VERSION, "t": self.t, "mode": self.mode}
        for k in ("dim_term", "omega1", "omega2", "omega_inf", "ineq_value"):
            out[k] = rational_to_json(getattr(self, k))
        out["verdict"] = self.verdict
        out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise InvalidArgument(f"unsupported schema version {d.get('schema_version')!r}")
        vals = {k: rational_from_json(d[k])
                for k in ("dim_term", "omega1", "omega2", "omega_inf", "ineq_value")}
        return cls(int(d["t"]), d["mode"], verdict=d["verdict"], notes=list(d.get("notes", [])),
                   **vals)

    def csv_row(self) -> list[str]:
        return [str(self.t), self.mode, fmt(self.dim_term), fmt(self.omega1), fmt(self.omega2),
                fmt(self.omega_inf), fmt(self.ineq_value), self.verdict]


def certify(t: int, mode: str = "paper") -> Certificate:
    v = terms(t, mode)
    verdict = CERTIFIED if v["ineq_value"] > 0 else INCONCLUSIVE
    return Certificate(t, mode, v["dim_term"], v["omega1"], v["omega2"], v["omega_inf"],
                       v["ineq_value"], verdict, list(MODE_NOTES[mode]))


# -- scans ------------------------------------------------------------------


def factor_shape(t: int) -> str:
    f = arith.factorize(t)
    if len(f) == 1:
        e = f[0][1]
        return {1: "prime", 2: "prime_square"}.get(e, "prime_cube_plus")
    if len(f) == 2 and f[0][1] == f[1][1] == 1:
        return "two_primes"
    return "other"


@dataclass
class ScanRow:
    t: int
    factor_shape: str
    verdicts: dict[str, str]
    values: dict[str, Fraction]

    def to_dict(self) -> dict:
        return {"t": self.t, "factor_shape": self.factor_shape, "verdicts": dict(self.verdicts),
                "ineq_values": {m: rational_to_json(v) for m, v in self.values.items()}}


def _scan_one(args) -> ScanRow:
    t, modes = args
    certs = {m: certify(t, m) for m in modes}
    return ScanRow(t, factor_shape(t), {m: c.verdict for m, c in certs.items()},
                   {m: c.ineq_value for m, c in certs.items()})


def scan(lo: int, hi: int, modes=("paper",), jobs: int = 1) -> list[ScanRow]:
    if lo > hi:
        raise InvalidArgument(f"empty range {lo}..{hi}")
    for m in modes:
        _defaults(m)
    ts = [t for t in range(max(lo, 3), hi + 1) if t % 2]
    work = [(t, tuple(modes)) for t in ts]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_scan_one, work, chunksize=8))
    return [_scan_one(w) for w in work]


def certified_set(rows: list[ScanRow], mode: str = "paper") -> list[int]:
    return [r.t for r in rows if r.verdicts[mode] == CERTIFIED]


# -- even t -----------------------------------------------------------------


@dataclass
class EvenVerdict:
    t: int
    odd_part: int
    verdict: str
    reason: str

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "t": self.t, "odd_part": self.odd_part,
                "verdict": self.verdict, "reason": self.reason}


def odd_part(t: int) -> int:
    while t % 2 == 0:
        t //= 2
    return t


def even_corollary(t: int, mode: str = "paper") -> EvenVerdict:
    """Covering argument: certified iff the odd part b >= 17 is certified."""
    if not isinstance(t, int) or t < 2 or t % 2:
        raise InvalidArgument(f"even_corollary needs an even t >= 2, got {t!r}; use certify")
    b = odd_part(t)
    if b < 17:
        return EvenVerdict(t, b, INCONCLUSIVE, f"odd part {b} < 17")
    c = certify(b, mode)
    if c.certified:
        return EvenVerdict(t, b, CERTIFIED, f"covers level {b}, certified with value {fmt(c.ineq_value)}")
    return EvenVerdict(t, b, INCONCLUSIVE, f"odd part {b} is not certified")


# -- dominance bound --------------------------------------------------------


DOMINANCE = Poly([-(Fraction(481, 864) + Fraction(11, 36)), Fraction(-11, 108), Fraction(1, 320)], "t")


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    value_at_39: Fraction
    value_at_40: Fraction
    vertex: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def dominance_bound(width: Fraction = Fraction(1, 100)) -> RootInterval:
    """Isolate the larger root of t^2/320 - 11t/108 - 745/864 by bisection."""
    q = DOMINANCE
    c0, c1, c2 = (q.coefficient(i) for i in range(3))
    vertex = -c1 / (2 * c2)
    # q is increasing beyond the vertex; walk integer steps to a sign change.
    lo = Fraction(int(vertex))
    while q(lo + 1) <= 0:
        lo += 1
    hi = lo + 1
    if not (q(lo) <= 0 < q(hi)):
        raise AssertionError("no sign change found")
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if q(mid) > 0:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi, q(Fraction(39)), q(Fraction(40)), vertex)


# -- discrepancy report -----------------------------------------------------


@dataclass
class Finding:
    key: str
    title: str
    values: dict[str, object]
    verdict_changes: list[int] | None
    statement: str

    def to_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return rational_to_json(v)
            if isinstance(v, int) and not isinstance(v, bool):
                return rational_to_json(v)
            if isinstance(v, dict):
                return {str(k): enc(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [enc(x) for x in v]
            return v
        return {"key": self.key, "title": self.title, "values": enc(self.values),
                "verdict_changes": self.verdict_changes, "statement": self.statement}


def _flips(**overrides) -> list[int]:
    lo, hi = AUDIT_RANGE
    out = []
    for t in range(lo, hi + 1, 2):
        a = ineq_value(t, "paper") > 0
        b = ineq_value(t, "paper", **overrides) > 0
        if a != b:
            out.append(t)
    return out


def _flip_text(flips: list[int]) -> str:
    lo, hi = AUDIT_RANGE
    if not flips:
        return f"no scan verdict on [{lo}, {hi}] changes"
    return f"scan verdicts on [{lo}, {hi}] change at t = {', '.join(map(str, flips))}"


def prime_polynomial() -> Poly:
    """The inequality specialised to prime t, as a polynomial in t."""
    T = Poly.variable("t")
    dim = (T**4 + T**2) / 320
    h = _omega_H(1, "printed") + _omega_H(2, "printed")
    boundary_sum = T**2 * Fraction(11, 36) + T * Fraction(11, 36)
    return dim - h - boundary_sum


PRINTED_PRIME_POLYNOMIAL = Poly(
    [Fraction(43, 24), Fraction(5, 18), Fraction(-7433, 8640), 0, Fraction(1, 320)], "t")


def _primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 3), hi + 1) if len(arith.factorize(p)) == 1
            and arith.factorize(p)[0][1] == 1]


def discrepancy_report(t: int) -> list[Finding]:
    _require_odd(t)
    lo, hi = AUDIT_RANGE
    out: list[Finding] = []

    # (a) prime-case constant
    derived = prime_polynomial()
    printed = PRINTED_PRIME_POLYNOMIAL
    primes = _primes(lo, hi)
    mismatched = [p for p in primes if derived(p) != ineq_value(p, "paper")]
    if mismatched:
        raise AssertionError(f"prime polynomial disagrees with the inequality at {mismatched}")
    sign_changes = [p for p in primes if (derived(p) > 0) != (printed(p) > 0)]
    out.append(Finding(
        "prime_constant", "t^2 coefficient of the prime-case polynomial",
        {"printed": printed.coefficient(2), "recomputed": derived.coefficient(2),
         "difference": printed.coefficient(2) - derived.coefficient(2),
         "t_coefficient": derived.coefficient(1), "constant": derived.coefficient(0)},
        sign_changes,
        f"the printed -7433/8640 should read {fmt(derived.coefficient(2))}; "
        f"t and constant terms agree; " + (
            f"no verdict changes at odd primes in [{lo}, {hi}]" if not sign_changes
            else f"verdicts change at primes {sign_changes}")))

    # (b) Omega_2
    p2, d2 = _omega_H(2, "printed"), _omega_H(2, "derived")
    flips = _flips(omega2="derived")
    out.append(Finding(
        "omega2_ratio", "Omega_2 printed against recomputed",
        {"printed": repr(p2), "recomputed": repr(d2),
         "ratio_recomputed_over_printed": {s: d2(s) / p2(s) for s in (7, 15, 25, t)}},
        flips,
        "the recomputed sum of (1/2) L_j^2 is exactly half the printed quadratic "
        "(the printed expansion drops the 1/2); " + _flip_text(flips)))

    # (c) Omega_inf
    ratios = dimensions.omega_inf_ratios(t)
    flips = _flips(omega_inf="derived")
    out.append(Finding(
        "omega_inf_ratios", "Omega_infinity per divisor: divisor-count route over printed",
        {"t": t, "paper_terms": dimensions.omega_inf_paper_terms(t),
         "derived_terms": dimensions.omega_inf_derived_terms(t), "ratios": ratios,
         "paper_total": dimensions.omega_inf_paper(t),
         "derived_total": dimensions.omega_inf_derived(t)},
        flips,
        "each ratio equals r^2/(2t); the totals differ by exactly a factor 1/2 "
        "because the terms for r and t/r swap; " + _flip_text(flips)))

    # (d) normalisation of mu, nu and genus
    census = arith.modular_curve_census(5)
    flips_b2 = _flips(omega2="derived_standard")
    flips_b1 = _flips(omega1="derived_sl_index")
    out.append(Finding(
        "genus_normalization", "mu, nu and genus normalisations",
        {"mu_paper(5)": arith.mu_paper(5), "nu_paper(5)": arith.nu_paper(5),
         "nu_cusps(5)": arith.nu_cusps(5), "genus_X(5)": arith.genus_X(5),
         "genus_printed_formula(5)": arith.genus_X_printed(5),
         "census_genus(5)": census.genus, "census_cusps(5)": census.cusps,
         "omega2_with_standard_genus_of_X(2t)": repr(_omega_H(2, "derived_standard")),
         "omega1_with_sl_index_b1": repr(_omega_H(1, "derived_sl_index")),
         "b2_flips": flips_b2, "b1_flips": flips_b1},
        sorted(set(flips_b2) | set(flips_b1)),
        "the printed mu is |SL(2, Z_r)|, twice the PSL index, so the printed genus "
        "formula gives genus -1 for X(5); the inequality is normalised by nu^2 k^3 and "
        "uses nu = phi_2(t)/2 throughout. For the H2 fibre the printed 2g - 2 = mu - nu/2 "
        "disagrees with the genus of X(2t), which gives mu - 3 nu. Sensitivity rows: b2 from mu - 3 nu: "
        + _flip_text(flips_b2) + "; b1 from the SL-index normalisation: " + _flip_text(flips_b1)))

    # (e) phi_2 product identity
    ident = dimensions.phi2_product_identity(t)
    out.append(Finding(
        "phi2_identity", "phi_2(r) phi_2(h) against t^2 prod_{p | (r,h)} (1 - p^-2)",
        {"by_divisor": {r: {"lhs": a, "rhs": b} for r, (a, b) in ident.items()}},
        None,
        "the identity holds only after multiplying the right side by phi_2(t)/t^2; "
        "certification uses the printed boundary sum, so no verdict depends on it"))

    # (f) g3 display
    out.append(Finding(
        "g3_display", "printed g3(m, n) is not symplectic",
        {"printed_symplectic": symplectic.is_symplectic(symplectic.g3_printed(1, 1)),
         "corrected_symplectic": symplectic.is_symplectic(symplectic.g3(1, 1))},
        None,
        "row 3 should be (0, 0, 1, -m); the corrected matrix fixes (0,0,0,1) and is used"))

    # (g) conjugation order and the Heisenberg item
    heis = {}
    if t <= 45:
        for r in arith.divisors(t):
            if 1 < r < t:
                rep = symplectic.conjugation_checks(t, r, grid=1)
                heis[r] = rep.by_item().get("b", True)
    out.append(Finding(
        "conjugation_b", "Q_r g3(rm, tn) Q_r^-1 in the bilevel group (nonstandard r)",
        {"t": t, "holds_by_divisor": heis},
        None,
        "with lines as row vectors the relevant conjugate is Q g Q^-1; the (2,4) entry "
        "is 2h(h-1)tn, in t^2 Z only when t | 2h(h-1)n. The boundary dimension count "
        "does not depend on it"))

    # (h) positivity convention for boundary lines
    v, w = (0, 1, 1, 0), (0, 1, t - 1, 0)
    out.append(Finding(
        "boundary_positivity", "full-vector positivity splits one orbit",
        {"v": list(v), "w": list(w),
         "printed_criterion_same": boundary.paper_criterion(v, w, t),
         "orbit_same": boundary.same_orbit(v, w, t)},
        None,
        "(v1, v3) must be compared up to sign; the count of boundary divisors is unaffected"))

    # containment between modes
    rows = scan(lo, hi, modes=MODES)
    paper_set = set(certified_set(rows, "paper"))
    derived_set = set(certified_set(rows, "derived"))
    out.append(Finding(
        "mode_containment", "derived against paper certified sets",
        {"paper_only": sorted(paper_set - derived_set),
         "derived_only": sorted(derived_set - paper_set)},
        sorted(paper_set ^ derived_set),
        "derived certifies a superset of paper" if paper_set <= derived_set
        else "derived does not contain paper"))
    return out
