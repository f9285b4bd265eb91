import csv
import io
import json
from fractions import Fraction

import pytest

from bilevel import certify as ct
from bilevel.cli import main
from bilevel.exact import rational_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_json(capsys):
    code, out, _ = run(capsys, "certify", "17", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] == "1" and doc["seed"] == 0
    assert doc["ineq_value"] == {"num": "8305", "den": "432"}
    assert doc["verdict"] == "general_type_certified"
    doc.pop("seed")
    assert ct.Certificate.from_dict(doc) == ct.certify(17)


def test_global_flags_before_command(capsys):
    code, out, _ = run(capsys, "--format", "json", "--seed", "7", "certify", "9")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 7
    assert rational_from_json(doc["ineq_value"]) == Fraction(-2405, 48)


def test_certify_table_wording(capsys):
    code, out, _ = run(capsys, "certify", "9")
    assert code == 0
    assert "inconclusive" in out and "does not say" in out


def test_certify_even_is_usage_error(capsys):
    code, _, err = run(capsys, "certify", "16")
    assert code == 2
    assert "bilevel even 16" in err


def test_unknown_command(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_boundary_oracle(capsys):
    code, out, _ = run(capsys, "boundary", "9", "--oracle")
    assert code == 0
    assert "oracle: MATCH" in out
    code, out, _ = run(capsys, "boundary", "9", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "count", "sample_representative"]
    assert [(r[0], r[1]) for r in rows[1:]] == [("1", "36"), ("3", "16"), ("9", "36")]


def test_boundary_oracle_guard(capsys):
    code, _, err = run(capsys, "boundary", "47", "--oracle")
    assert code == 2 and "guard" in err


def test_scan_csv_and_summary(capsys):
    code, out, _ = run(capsys, "scan", "3", "39", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [int(r["t"]) for r in rows if r["verdict"] == "general_type_certified"] == list(range(17, 40, 2))
    code, out, _ = run(capsys, "scan", "3", "39", "--format", "json", "--jobs", "2")
    doc = json.loads(out)
    assert doc["summary"]["matches_classification"]


def test_certify_csv_columns(capsys):
    _, out, _ = run(capsys, "certify", "17", "--format", "csv")
    header = out.splitlines()[0].split(",")
    assert tuple(header) == ct.CSV_COLUMNS


def test_bound_and_even(capsys):
    code, out, _ = run(capsys, "bound")
    assert code == 0 and "(39, 40): yes" in out
    code, out, _ = run(capsys, "even", "34", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "general_type_certified"
    code, _, _ = run(capsys, "even", "17")
    assert code == 2


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", "5", "--format", "json")
    doc = json.loads(out)["invariants"]
    assert code == 0
    assert rational_from_json(doc["index bil"]) == 93600
    assert rational_from_json(doc["cusp-form leading term"]) == Fraction(65, 6)


def test_discrepancies_json(capsys):
    code, out, _ = run(capsys, "discrepancies", "15", "--format", "json")
    doc = json.loads(out)
    keys = [f["key"] for f in doc["findings"]]
    assert code == 0
    assert {"prime_constant", "omega2_ratio", "omega_inf_ratios", "genus_normalization"} <= set(keys)


def test_verify_small_run_reports_seed(capsys):
    code, out, _ = run(capsys, "verify", "--t", "5,7", "--seed", "3")
    assert "seed: 3" in out
    assert code == 0


def test_verify_bad_list(capsys):
    code, _, _ = run(capsys, "verify", "--t", "5,x")
    assert code == 2
