"""Command-line interface.

Three commands:

* ``analyze`` — full unknotting-number-one report for one alternating
  knot, given as a PD code, a DT code, or a name from the bundled table.
* ``batch`` — the same report for every knot in a table file (default:
  the bundled table of prime alternating knots up to 9 crossings), with
  an agreement summary against the table's reference column.
* ``certify`` — reduction certificate for an almost-alternating unknot
  diagram, or replay of a previously saved certificate file.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget
exhausted (result inconclusive).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .diagram import Diagram, DiagramError, parse_diagram, parse_dt, parse_pd
from .markers import (
    Certificate,
    certify_almost_alternating_unknot,
    decide_unknotting,
    replay_certificate,
)
from .oracle import crossing_change_sweep

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class TableRow:
    name: str
    dt: str  # space-separated DT code
    det: int | None
    sig: int | None
    u: str | None  # "1" or "2+" when present

    @property
    def u_is_one(self) -> bool | None:
        if self.u is None:
            return None
        return self.u == "1"


def load_table(path: str | None = None) -> list[TableRow]:
    """Parse a knot table: one knot per line,
    ``name dt_code [det] [signature] [u]`` with a comma-separated DT
    code; ``#`` starts a comment and blank lines are skipped."""
    if path is None:
        text = (
            resources.files("unknotone")
            .joinpath("data/alternating_knots.txt")
            .read_text()
        )
    else:
        with open(path) as fh:
            text = fh.read()
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2:
            raise DiagramError(f"table line {lineno}: need name and DT code")
        name, dt = parts[0], parts[1].replace(",", " ")
        det = int(parts[2]) if len(parts) > 2 else None
        sig = int(parts[3]) if len(parts) > 3 else None
        u = parts[4] if len(parts) > 4 and parts[4] != "-" else None
        rows.append(TableRow(name, dt, det, sig, u))
    return rows


def _parse_input(args) -> Diagram:
    given = [x for x in (args.pd, args.dt, args.table) if x is not None]
    if len(given) != 1:
        raise SystemExit2(EXIT_USAGE,
                          "give exactly one of --pd, --dt, --table")
    if args.pd is not None:
        return parse_pd(args.pd)
    if args.dt is not None:
        return parse_dt(args.dt)
    for row in load_table(getattr(args, "table_file", None)):
        if row.name == args.table:
            return parse_dt(row.dt)
    raise DiagramError(f"no knot named {args.table!r} in the table")


class SystemExit2(Exception):
    def __init__(self, code, message):
        self.code = code
        self.message = message


def _report_to_json(report: dict) -> dict:
    out = dict(report)
    out["certificates"] = {
        str(c): cert.to_json_obj()
        for c, cert in report["certificates"].items()
    }
    out["crossing_signs"] = {
        str(c): s for c, s in report["crossing_signs"].items()
    }
    return out


def _print_report(name: str, report: dict, args, out=sys.stdout):
    u = report["u_is_one"]
    verdict = {True: "u=1", False: "u=1 false", None: "inconclusive"}[u]
    line = (
        f"{name}: {verdict}  crossings={report['crossings']}"
        f" det={report['determinant']} sig={report['signature']}"
    )
    if u:
        signs = report["crossing_signs"]
        pretty = ",".join(
            f"{c}{'+' if signs[c] > 0 else '-'}"
            for c in report["unknotting_crossings"]
        )
        line += f"  unknotting crossings: {pretty}"
    print(line, file=out)
    if args.all_embeddings:
        for emb in report["embeddings"]:
            print(
                f"  embedding side={emb['side']} sigma={tuple(emb['sigma'])}"
                f" marked={emb['marked_crossings']}",
                file=out,
            )
    for c, cert in sorted(report["certificates"].items()):
        kinds = [m.kind for m in cert.moves]
        print(
            f"  certificate[{c}]: {len(kinds)} moves -> C_{cert.terminal}"
            f" ({', '.join(kinds)})",
            file=out,
        )


def _oracle_diff(diagram: Diagram, report: dict, out=sys.stdout) -> bool:
    sweep = sorted(crossing_change_sweep(diagram))
    ours = report["unknotting_crossings"]
    agree = sweep == ours
    print(
        f"  oracle sweep: {sweep} -> "
        + ("agreement" if agree else f"MISMATCH (lattice: {ours})"),
        file=out,
    )
    return agree


def cmd_analyze(args) -> int:
    try:
        d = _parse_input(args)
    except DiagramError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    name = args.table or "knot"
    try:
        report = decide_unknotting(d, budget=args.budget)
    except DiagramError as exc:
        print(f"cannot analyze: {exc}", file=sys.stderr)
        return EXIT_INVALID
    agree = True
    if args.json:
        obj = {
            "schema_version": SCHEMA_VERSION,
            "command": "analyze",
            "input": {"name": name, "crossings": d.n},
            "report": _report_to_json(report),
        }
        if args.oracle:
            sweep = sorted(crossing_change_sweep(d))
            obj["oracle_sweep"] = sweep
            agree = sweep == report["unknotting_crossings"]
            obj["oracle_agreement"] = agree
        json.dump(obj, sys.stdout, indent=2)
        print()
    else:
        _print_report(name, report, args)
        if args.oracle:
            agree = _oracle_diff(d, report)
    if not report["complete"]:
        return EXIT_BUDGET
    return EXIT_OK if agree else EXIT_INVALID


def _batch_worker(item):
    name, dt, budget = item
    d = parse_dt(dt)
    report = decide_unknotting(d, budget=budget)
    return name, _report_to_json(report)


def _parse_range(spec: str | None):
    if spec is None:
        return None
    try:
        lo, hi = spec.split(":")
        return (int(lo) if lo else 0, int(hi) if hi else 10 ** 9)
    except ValueError:
        raise SystemExit2(EXIT_USAGE, f"bad --range {spec!r}; use LO:HI")


def cmd_batch(args) -> int:
    try:
        rows = load_table(args.file)
    except (OSError, DiagramError) as exc:
        print(f"cannot read table: {exc}", file=sys.stderr)
        return EXIT_INVALID
    rng = _parse_range(args.range)
    if rng is not None:
        rows = [r for r in rows if rng[0] <= len(r.dt.split()) <= rng[1]]
    items = [(r.name, r.dt, args.budget) for r in rows]
    results = []
    if args.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_worker, items))
    else:
        results = [_batch_worker(it) for it in items]
    agree = checked = 0
    incomplete = False
    json_reports = []
    for row, (name, report) in zip(rows, results):
        u = report["u_is_one"]
        incomplete = incomplete or not report["complete"]
        ref = row.u_is_one
        status = ""
        if ref is not None and u is not None:
            checked += 1
            agree += u == ref
            status = "  [agree]" if u == ref else "  [DISAGREE]"
        if args.json:
            json_reports.append(
                {"name": name, "reference_u": row.u, "report": report}
            )
        else:
            verdict = {True: "u=1", False: "u=1 false",
                       None: "inconclusive"}[u]
            print(f"{name}: {verdict}  det={report['determinant']}"
                  f" sig={report['signature']}"
                  f" crossings={sorted(report['unknotting_crossings'])}"
                  f"{status}")
    summary = {
        "knots": len(rows),
        "reference_checked": checked,
        "reference_agreement": agree,
    }
    if args.json:
        json.dump(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "batch",
                "reports": json_reports,
                "summary": summary,
            },
            sys.stdout,
            indent=2,
        )
        print()
    elif checked:
        print(f"reference agreement: {agree}/{checked}")
    if incomplete:
        return EXIT_BUDGET
    return EXIT_OK if agree == checked else EXIT_INVALID


def cmd_certify(args) -> int:
    if args.replay:
        return _replay_file(args.replay)
    try:
        if args.pd is not None:
            d = parse_pd(args.pd)
        elif args.dt is not None:
            d = parse_dt(args.dt)
        else:
            raise SystemExit2(EXIT_USAGE, "give --pd, --dt, or --replay")
    except DiagramError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        cert = certify_almost_alternating_unknot(d, budget=args.budget)
    except DiagramError as exc:
        print(f"cannot certify: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cert is None:
        print("no certificate found within budget", file=sys.stderr)
        return EXIT_BUDGET
    if args.json:
        json.dump(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "certify",
                "input": {"pd": args.pd, "dt": args.dt},
                "certificate": cert.to_json_obj(),
            },
            sys.stdout,
            indent=2,
        )
        print()
    else:
        print(f"certificate: {len(cert.moves)} moves -> C_{cert.terminal}")
        for mv in cert.moves:
            print(f"  {mv.kind} {mv.site}")
    return EXIT_OK


def _replay_file(path: str) -> int:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read certificate file: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if obj.get("schema_version") != SCHEMA_VERSION:
        print("unsupported schema version", file=sys.stderr)
        return EXIT_INVALID
    inp = obj.get("input", {})
    try:
        if inp.get("pd"):
            d = parse_diagram(inp["pd"])
        elif inp.get("dt"):
            d = parse_dt(inp["dt"])
        else:
            print("certificate file lacks an input diagram", file=sys.stderr)
            return EXIT_INVALID
        cert = Certificate.from_json_obj(obj["certificate"])
        final, m = replay_certificate(d, cert)
    except (DiagramError, KeyError) as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if m is None or m != cert.terminal:
        print(f"replay did not confirm terminal C_{cert.terminal}",
              file=sys.stderr)
        return EXIT_INVALID
    print(f"replay confirmed: {len(cert.moves)} moves -> C_{m}")
    return EXIT_OK


def _add_input_flags(p, table=True):
    p.add_argument("--pd", help="PD code, e.g. PD[X(1,4,2,5),...]")
    p.add_argument("--dt", help="DT code, e.g. '4 6 8 2'")
    if table:
        p.add_argument("--table", help="knot name from the bundled table")
        p.add_argument("--table-file", dest="table_file",
                       help="use this table file instead of the bundled one")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="unknotone",
        description="Unknotting number one for alternating knots, with "
        "certificates.",
    )
    sub = ap.add_subparsers(dest="command")

    pa = sub.add_parser("analyze", help="analyze a single knot")
    _add_input_flags(pa)
    pa.add_argument("--json", action="store_true")
    pa.add_argument("--oracle", action="store_true",
                    help="also run the exhaustive crossing-change sweep "
                    "and diff the crossing sets")
    pa.add_argument("--budget", type=int, default=10 ** 7)
    pa.add_argument("--all-embeddings", action="store_true",
                    help="print every lattice embedding found")

    pb = sub.add_parser("batch", help="analyze every knot in a table")
    pb.add_argument("file", nargs="?", default=None,
                    help="table file (default: bundled table)")
    pb.add_argument("--range", help="crossing-number range LO:HI")
    pb.add_argument("--json", action="store_true")
    pb.add_argument("--budget", type=int, default=10 ** 7)
    pb.add_argument("--jobs", type=int, default=1,
                    help="parallel worker processes")

    pc = sub.add_parser("certify",
                        help="certify an almost-alternating unknot diagram")
    _add_input_flags(pc, table=False)
    pc.add_argument("--json", action="store_true")
    pc.add_argument("--budget", type=int, default=20000)
    pc.add_argument("--replay", metavar="FILE",
                    help="replay a saved certificate JSON file")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "analyze": cmd_analyze,
        "batch": cmd_batch,
        "certify": cmd_certify,
    }
    if args.command is None:
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return handlers[args.command](args)
    except SystemExit2 as exc:
        print(exc.message, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
