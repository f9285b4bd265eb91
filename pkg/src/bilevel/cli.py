"""Command-line front end: ``bilevel <command> ... [--format table|json|csv]``.

Exit codes: 0 success, 1 a verification or classification check failed,
2 usage error (including unsupported moduli).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import arith, boundary, certify as cert, dimensions, verify as ver
from .errors import InvalidArgument, ResourceLimit
from .exact import fmt, rational_to_json

SCHEMA_VERSION = cert.SCHEMA_VERSION
FORMATS = ("table", "json", "csv")


class UsageError(Exception):
    pass


# -- rendering --------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (int, Fraction)):
        return fmt(x)
    return str(x)


def _table(headers, rows) -> str:
    cells = [[_cell(h) for h in headers]] + [[_cell(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    w.writerows([[_cell(x) for x in r] for r in rows])
    return buf.getvalue().rstrip("\n")


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return rational_to_json(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _emit(args, payload: dict, headers, rows, text_extra: str = "") -> None:
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "seed": args.seed}
        doc.update(_jsonable(payload))
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print(_csv(headers, rows))
    else:
        print(_table(headers, rows))
        if text_extra:
            print(text_extra)


def _odd(t: int) -> int:
    if t < 3 or t % 2 == 0:
        raise UsageError(f"t = {t}: need an odd t >= 3" + ("; for even t use `bilevel even`" if t % 2 == 0 else ""))
    return t


# -- commands ---------------------------------------------------------------


def cmd_invariants(args) -> int:
    t = _odd(args.t)
    chain = dimensions.index_chain(t)
    vals = [
        ("phi_1(t)", arith.phi_m(1, t)),
        ("phi_2(t)", arith.phi_m(2, t)),
        ("phi_4(t)", arith.phi_m(4, t)),
        ("nu (working, phi_2/2)", dimensions.nu(t)),
        ("nu_paper (phi_2)", arith.nu_paper(t)),
        ("nu_cusps", arith.nu_cusps(t)),
        ("mu_paper |SL(2,Z_t)|", arith.mu_paper(t)),
        ("genus X(t)", arith.genus_X(t)),
        ("index lev", chain.index_lev),
        ("index nat/lev", chain.index_nat_over_lev),
        ("index bil", chain.index_bil),
        ("cusp-form leading term", dimensions.cuspform_leading(t)),
        ("dim term (nu^2 k^3)", dimensions.dim_term(t)),
    ]
    for r in arith.divisors(t):
        vals.append((f"[Gamma(1):Gamma({t},{r})]", dimensions.index_gamma_tr(t, r)))
    _emit(args, {"t": t, "invariants": {k: v for k, v in vals}},
          ["quantity", "value"], vals)
    return 0


def cmd_boundary(args) -> int:
    t = _odd(args.t)
    closed = boundary.count_boundary_closed(t)
    samples = None
    status = 0
    oracle_counts = None
    if args.oracle:
        try:
            table = boundary.count_boundary_oracle(t)
        except ResourceLimit as e:
            raise UsageError(str(e)) from e
        oracle_counts = table.counts
        samples = table.samples
        if oracle_counts != closed:
            status = 1
    rows = boundary.orbit_rows(t, closed, samples)
    payload = {"t": t, "counts": closed, "total": sum(closed.values()),
               "representatives": {r: s for r, _, s in rows}}
    extra = f"total: {sum(closed.values())}"
    if oracle_counts is not None:
        payload["oracle"] = {"counts": oracle_counts, "match": status == 0}
        extra += "\noracle: " + ("MATCH" if status == 0 else f"MISMATCH {oracle_counts}")
    _emit(args, payload, ["r", "count", "sample_representative"], rows, extra)
    return status


def cmd_certify(args) -> int:
    t = args.t
    if t % 2 == 0:
        raise UsageError(f"t = {t} is even; use `bilevel even {t}` (covering by the odd part)")
    c = cert.certify(_odd(t), args.mode)
    if args.format == "json":
        doc = c.to_dict()
        doc["seed"] = args.seed
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print(_csv(cert.CSV_COLUMNS, [c.csv_row()]))
    else:
        rows = [(k, getattr(c, k)) for k in cert.CSV_COLUMNS[2:]]
        note = ("" if c.certified else
                "inconclusive: the inequality is a sufficient condition only; "
                "this does not say the space fails to be of general type")
        print(_table(["term", "value"], [("t", t), ("mode", c.mode)] + rows))
        for n in c.notes:
            print(f"note: {n}")
        if note:
            print(note)
    return 0


def _classification_ok(rows, mode: str) -> bool:
    return all((r.t >= 17) == (r.verdicts[mode] == cert.CERTIFIED) for r in rows)


def cmd_scan(args) -> int:
    if args.lo > args.hi:
        raise UsageError(f"empty range {args.lo}..{args.hi}")
    rows = cert.scan(args.lo, args.hi, modes=(args.mode,), jobs=args.jobs)
    certified = cert.certified_set(rows, args.mode)
    ok = _classification_ok(rows, args.mode)
    summary = {"certified": certified,
               "inconclusive": [r.t for r in rows if r.t not in certified],
               "matches_classification": ok}
    # the t >= 17 classification is a statement about paper mode only
    status = 0 if ok or args.mode != "paper" else 1
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "scan", "seed": args.seed,
               "mode": args.mode, "rows": [r.to_dict() for r in rows], "summary": summary}
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print(_csv(["t", "factor_shape", "mode", "ineq_value", "verdict"],
                   [(r.t, r.factor_shape, args.mode, r.values[args.mode], r.verdicts[args.mode])
                    for r in rows]))
    else:
        print(_table(["t", "shape", "ineq_value", "verdict"],
                     [(r.t, r.factor_shape, r.values[args.mode], r.verdicts[args.mode]) for r in rows]))
        print(f"certified: {certified}")
        print("classification (certified iff t >= 17): " + ("OK" if ok else "DIFFERS"))
    return status


def cmd_verify(args) -> int:
    ts = None
    if args.t:
        try:
            ts = [_odd(int(x)) for x in args.t.split(",") if x.strip()]
        except ValueError as e:
            raise UsageError(f"bad --t list {args.t!r}") from e
    checks = ver.run(ts, seed=args.seed)
    failed = [c for c in checks if not c.passed]
    rows = [("PASS" if c.passed else "FAIL", c.name, c.detail) for c in checks]
    _emit(args, {"checks": [c.to_dict() for c in checks], "passed": not failed},
          ["status", "check", "detail"], rows,
          f"seed: {args.seed}\n{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_discrepancies(args) -> int:
    findings = cert.discrepancy_report(_odd(args.t))
    if args.format == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": "discrepancies", "seed": args.seed,
               "t": args.t, "findings": [f.to_dict() for f in findings]}
        print(json.dumps(doc, indent=2))
        return 0
    rows = [(f.key, f.title, "-" if f.verdict_changes is None else (f.verdict_changes or "none"))
            for f in findings]
    if args.format == "csv":
        print(_csv(["key", "title", "verdict_changes"], rows))
        return 0
    for f in findings:
        print(f"[{f.key}] {f.title}")
        for k, v in f.values.items():
            print(f"    {k}: {_render_value(v)}")
        changes = "-" if f.verdict_changes is None else (f.verdict_changes or "none")
        print(f"    verdict changes on [3, 99]: {changes}")
        print(f"    {f.statement}")
    return 0


def _render_value(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_render_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_render_value(x) for x in v) + "]"
    return _cell(v)


def cmd_bound(args) -> int:
    b = cert.dominance_bound()
    ok = 39 < b.lo and b.hi < 40
    rows = [("root lower", b.lo), ("root upper", b.hi), ("width", b.width),
            ("q(39)", b.value_at_39), ("q(40)", b.value_at_40), ("vertex", b.vertex)]
    _emit(args, {"root_interval": [b.lo, b.hi], "q39": b.value_at_39, "q40": b.value_at_40,
                 "vertex": b.vertex, "in_39_40": ok},
          ["quantity", "value"], rows,
          f"larger root in (39, 40): {'yes' if ok else 'no'}")
    return 0 if ok else 1


def cmd_even(args) -> int:
    try:
        v = cert.even_corollary(args.t, args.mode)
    except InvalidArgument as e:
        raise UsageError(str(e)) from e
    if args.format == "json":
        doc = v.to_dict()
        doc["seed"] = args.seed
        print(json.dumps(doc, indent=2))
    else:
        rows = [(v.t, v.odd_part, v.verdict, v.reason)]
        out = _csv if args.format == "csv" else _table
        print(out(["t", "odd_part", "verdict", "reason"], rows))
    return 0


# -- parser -----------------------------------------------------------------


def _common(sub: bool) -> argparse.ArgumentParser:
    # Subparsers use SUPPRESS so flags given before the command are kept.
    d = (lambda x: argparse.SUPPRESS) if sub else (lambda x: x)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=d("table"))
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomised checks (default 0)")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for scan")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(sub=True)
    p = argparse.ArgumentParser(prog="bilevel", parents=[_common(sub=False)],
                                description="Exact checks for the bilevel general-type inequality.")
    sp = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_):
        s = sp.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("invariants", cmd_invariants, "arithmetic invariants and indices for t")
    s.add_argument("t", type=int)
    s = add("boundary", cmd_boundary, "boundary divisor counts per t-divisor")
    s.add_argument("t", type=int)
    s.add_argument("--oracle", action="store_true", help="also count orbits by enumeration")
    s = add("certify", cmd_certify, "evaluate the inequality for odd t")
    s.add_argument("t", type=int)
    s.add_argument("--mode", choices=cert.MODES, default="paper")
    s = add("scan", cmd_scan, "certify every odd t in a range")
    s.add_argument("lo", type=int)
    s.add_argument("hi", type=int)
    s.add_argument("--mode", choices=cert.MODES, default="paper")
    s = add("verify", cmd_verify, "matrix-level and oracle verification suite")
    s.add_argument("--t", default=None, help="comma-separated odd t values")
    s = add("discrepancies", cmd_discrepancies, "audit of printed constants against recomputation")
    s.add_argument("t", type=int)
    add("bound", cmd_bound, "isolate the larger root of the dominance quadratic")
    s = add("even", cmd_even, "even t via the odd part")
    s.add_argument("t", type=int)
    s.add_argument("--mode", choices=cert.MODES, default="paper")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except (UsageError, InvalidArgument) as e:
        print(f"bilevel {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
