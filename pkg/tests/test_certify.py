import json
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest
from hypothesis import given, strategies as st

from bilevel import certify as ct
from bilevel.errors import InvalidArgument, UnsupportedModulus

odd_t = st.integers(1, 99).map(lambda n: 2 * n + 1)


def _primes_of(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _direct(t):
    """The displayed inequality typed in independently of the package."""
    prod = Fraction(1)
    for p in _primes_of(t):
        prod *= 1 + Fraction(1, p * p)
    val = Fraction(1, 320) * prod * t**4 - Fraction(481, 864) * t * t + Fraction(7, 12) * t + Fraction(43, 24)
    for r in range(1, t + 1):
        if t % r:
            continue
        h = t // r
        c = Fraction(1)
        for p in _primes_of(r):
            if h % p == 0:
                c *= 1 - Fraction(1, p * p)
        val -= Fraction(11, 36 * r) * t * t * c
    return val


FROZEN = {9: Fraction(-2405, 48), 15: Fraction(-1341, 32), 17: Fraction(8305, 432)}


@pytest.mark.parametrize("t,value", sorted(FROZEN.items()))
def test_frozen_spot_values(t, value):
    assert _direct(t) == value
    assert ct.ineq_value(t) == value


@given(odd_t)
def test_main_path_matches_direct_display(t):
    assert ct.ineq_value(t, "paper") == _direct(t)
    assert ct.ineq_display(t) == _direct(t)


def test_even_t_is_rejected():
    with pytest.raises(UnsupportedModulus, match="even"):
        ct.ineq_value(16)
    with pytest.raises(UnsupportedModulus):
        ct.certify(16)


@pytest.mark.parametrize("t,verdict", [(25, ct.CERTIFIED), (27, ct.CERTIFIED), (7, ct.INCONCLUSIVE)])
def test_certify_examples(t, verdict):
    assert ct.certify(t).verdict == verdict


@given(odd_t, st.sampled_from(ct.MODES))
def test_certificate_identity_and_round_trip(t, mode):
    c = ct.certify(t, mode)
    assert c.ineq_value == c.dim_term - c.omega1 - c.omega2 - c.omega_inf
    assert (c.verdict == ct.CERTIFIED) == (c.ineq_value > 0)
    d = json.loads(json.dumps(c.to_dict()))
    assert ct.Certificate.from_dict(d) == c


def test_certificate_rejects_tampering():
    c = ct.certify(17)
    d = c.to_dict()
    d["omega1"] = {"num": "0", "den": "1"}
    with pytest.raises(AssertionError):
        ct.Certificate.from_dict(d)
    d = c.to_dict()
    d["schema_version"] = "0"
    with pytest.raises(InvalidArgument):
        ct.Certificate.from_dict(d)


def test_certificate_schema():
    schema = json.loads(resources.files("bilevel").joinpath("schema/certificate.schema.json").read_text())
    for t in (9, 17):
        jsonschema.validate(ct.certify(t).to_dict(), schema)


def test_csv_row_order():
    row = ct.certify(17).csv_row()
    assert row == ["17", "paper", "8381/32", "6841/864", "10171/72", "187/2", "8305/432",
                   "general_type_certified"]
    assert ct.CSV_COLUMNS[-1] == "verdict"


def test_scan_classification():
    rows = ct.scan(3, 39)
    assert ct.certified_set(rows) == list(range(17, 40, 2))
    assert ct.certified_set(ct.scan(3, 15)) == []
    assert [r.t for r in ct.scan(41, 99)] == ct.certified_set(ct.scan(41, 99))


def test_scan_parallel_is_deterministic():
    a = ct.scan(3, 61, modes=ct.MODES)
    b = ct.scan(3, 61, modes=ct.MODES, jobs=3)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_scan_rejects_empty_range():
    with pytest.raises(InvalidArgument):
        ct.scan(9, 3)


@pytest.mark.parametrize("t,shape", [(17, "prime"), (25, "prime_square"), (27, "prime_cube_plus"),
                                     (81, "prime_cube_plus"), (15, "two_primes"), (45, "other"),
                                     (105, "other")])
def test_factor_shape(t, shape):
    assert ct.factor_shape(t) == shape


@pytest.mark.parametrize("t,verdict", [(34, ct.CERTIFIED), (32, ct.INCONCLUSIVE),
                                       (30, ct.INCONCLUSIVE), (68, ct.CERTIFIED)])
def test_even_corollary(t, verdict):
    assert ct.even_corollary(t).verdict == verdict


def test_even_corollary_rejects_odd():
    with pytest.raises(InvalidArgument):
        ct.even_corollary(17)


@given(st.integers(1, 6), st.sampled_from([17, 19, 21, 25, 27, 45, 99]))
def test_covering_never_downgrades(a, b):
    assert ct.even_corollary(2**a * b).verdict == ct.certify(b).verdict == ct.CERTIFIED


def test_dominance_bound():
    b = ct.dominance_bound()
    assert 39 < b.lo < b.hi < 40
    assert b.width < Fraction(1, 100)
    assert b.value_at_39 < 0 < b.value_at_40
    assert ct.DOMINANCE(b.lo) <= 0 < ct.DOMINANCE(b.hi)


def test_prime_polynomial():
    p = ct.prime_polynomial()
    assert p.coefficient(2) == Fraction(-7423, 8640)
    assert p.coefficient(1) == Fraction(5, 18)
    assert p.coefficient(0) == Fraction(43, 24)
    assert p.coefficient(4) == Fraction(1, 320)
    for q in (3, 5, 7, 11, 13, 97):
        assert p(q) == ct.ineq_value(q)


def test_derived_mode_values():
    assert ct.ineq_value(9, "derived") == Fraction(-43, 3)
    assert ct.ineq_value(15, "derived") == Fraction(6487, 96)
    rows = ct.scan(3, 99, modes=ct.MODES)
    assert set(ct.certified_set(rows)) <= set(ct.certified_set(rows, "derived"))


def test_discrepancy_report_contents():
    findings = {f.key: f for f in ct.discrepancy_report(15)}
    for key in ("prime_constant", "omega2_ratio", "omega_inf_ratios", "genus_normalization"):
        assert findings[key].verdict_changes is not None
    pc = findings["prime_constant"]
    assert pc.values["printed"] == Fraction(-7433, 8640)
    assert pc.values["difference"] == Fraction(-1, 864)
    assert pc.verdict_changes == []
    assert set(findings["omega2_ratio"].values["ratio_recomputed_over_printed"].values()) == {Fraction(1, 2)}
    assert findings["omega_inf_ratios"].values["ratios"] == {
        1: Fraction(1, 30), 3: Fraction(3, 10), 5: Fraction(5, 6), 15: Fraction(15, 2)}
    g = findings["genus_normalization"].values
    assert g["genus_X(5)"] == 0 and g["genus_printed_formula(5)"] == -1
    json.dumps([f.to_dict() for f in findings.values()])
