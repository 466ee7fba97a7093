"""Command-line entry point: ``mttlab <command> ...``.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for unreadable or invalid input (a JSON failure summary goes to stderr and
nothing goes to stdout or the output file).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .checks import bridge_verdict
from .errors import MTTError
from .homcx import evaluate, format_poly
from .models import DEMOS, gen_obstruction_demo, gen_single_degree, gen_two_degree
from .mtt import MTTDatum, inherited_package, interaction_polynomial
from .serialize import (datum_to_json, diff_data, dumps, package_to_json, parse_datum,
                        render_diff_md, render_package_csv, render_package_md,
                        render_verdict_csv, render_verdict_md, report_to_json)
from .suites import SUITES, run_suites

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Failure(Exception):
    def __init__(self, summary: dict):
        super().__init__(summary.get("message", ""))
        self.summary = summary


def _load(path) -> MTTDatum:
    try:
        return parse_datum(path)
    except MTTError as e:
        raise _Failure({
            "error": type(e).__name__,
            "file": str(path),
            "message": str(e),
            "diagnostics": [{"kind": d.kind, "field": d.field, "message": d.message}
                            for d in e.diagnostics],
        }) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    D = _load(args.file)
    _emit(dumps({"valid": True, "nodes": list(D.nodes), "channels": D.r * D.r}), args.output)
    return EXIT_OK


def cmd_compute(args) -> int:
    D = _load(args.file)
    if args.channel:
        i, j = args.channel
        if not (1 <= i <= D.r and 1 <= j <= D.r):
            raise _Failure({"error": "IndexError",
                            "message": f"channel ({i}, {j}) outside 1..{D.r}"})
        P = interaction_polynomial(D, i, j)
        out = {"channel": [i, j], "P": format_poly(P), "coefficients": P.to_json(),
               "w_tot": evaluate(P, 1), "w_chi": evaluate(P, -1)}
        _emit(dumps(out), args.output)
        return EXIT_OK
    pkg = inherited_package(D)
    if args.format == "md":
        text = render_package_md(pkg, D.nodes)
    elif args.format == "csv":
        text = render_package_csv(pkg)
    else:
        text = dumps(package_to_json(pkg))
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    datum = None if args.random else _load(args.file)
    suites = args.suite or ["all"]
    results = run_suites(suites, args.seed, args.trials, datum)
    report = {
        "source": "random" if args.random else Path(args.file).name,
        "seed": args.seed,
        "trials": args.trials,
        "suites": [r.to_json() for r in results],
        "passed": sum(r.passed for r in results),
        "failed": sum(r.failed for r in results),
        "ok": all(r.ok for r in results),
    }
    _emit(dumps(report), args.output)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_demo(args) -> int:
    name = args.name
    if name == "single-degree":
        data = [gen_single_degree(args.d, args.m0)]
    elif name == "two-degree":
        data = [gen_two_degree(args.a, args.b, args.m)]
    elif name == "obstruction":
        data = list(gen_obstruction_demo())
    else:
        data = [DEMOS[name]()]
    texts = [dumps(datum_to_json(D)) for D in data]
    if len(texts) == 1:
        _emit(texts[0], args.output)
        return EXIT_OK
    if not args.output:
        _emit(dumps({"first": json.loads(texts[0]), "second": json.loads(texts[1])}), None)
        return EXIT_OK
    first = Path(args.output)
    second = Path(args.second) if args.second else first.with_name(
        f"{first.stem}-b{first.suffix}")
    first.write_text(texts[0])
    second.write_text(texts[1])
    return EXIT_OK


def cmd_report(args) -> int:
    D = _load(args.file)
    if args.diff:
        E = _load(args.diff)
        diffs = diff_data(D, E, inherited_package(D), inherited_package(E))
        if args.format == "json":
            text = dumps([{"field": f, "first": a, "second": b} for f, a, b in diffs])
        else:
            text = render_diff_md(diffs)
        _emit(text, args.output)
        return EXIT_OK
    pkg = inherited_package(D)
    reports = bridge_verdict(D)
    if args.format == "md":
        text = render_package_md(pkg, D.nodes) + "\n## Bridge verdicts\n\n" + \
            render_verdict_md(reports)
    elif args.format == "csv":
        text = render_verdict_csv(reports)
    else:
        text = dumps({"package": package_to_json(pkg),
                      "verdicts": [report_to_json(r) for r in reports]})
    _emit(text, args.output)
    return EXIT_OK if all(r.bridge_consistent for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mttlab",
                                description="Exact mediated triangle transport computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and fully validate a datum file")
    v.add_argument("file")
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("compute", help="interaction polynomials or the inherited package")
    c.add_argument("file")
    sel = c.add_mutually_exclusive_group()
    sel.add_argument("--channel", nargs=2, type=int, metavar=("I", "J"),
                     help="one channel, 1-based")
    sel.add_argument("--all", action="store_true",
                     help="the whole inherited package (default)")
    c.add_argument("--format", choices=("json", "md", "csv"), default="json")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compute)

    r = sub.add_parser("verify", help="run seeded property suites")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?")
    src.add_argument("--random", action="store_true", help="generate a fresh datum per trial")
    r.add_argument("--suite", action="append", choices=SUITES + ("all",),
                   help="repeatable; default all")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=20)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", help="write a generated datum")
    d.add_argument("name", choices=sorted(DEMOS))
    d.add_argument("-o", "--output")
    d.add_argument("--second", help="obstruction only: path of the second datum "
                                    "(default: <output stem>-b<suffix>)")
    d.add_argument("--d", type=int, default=1, help="single-degree: multiplicity")
    d.add_argument("--m0", type=int, default=0, help="single-degree: degree")
    d.add_argument("--a", type=int, default=1, help="two-degree: coefficient of q^m")
    d.add_argument("--b", type=int, default=1, help="two-degree: coefficient of q^(m+1)")
    d.add_argument("--m", type=int, default=0, help="two-degree: lower degree")
    d.set_defaults(func=cmd_demo)

    rp = sub.add_parser("report", help="inherited package and bridge verdicts")
    rp.add_argument("file")
    rp.add_argument("--format", choices=("json", "md", "csv"), default="json")
    rp.add_argument("--diff", metavar="OTHER",
                    help="instead, list the differences between two data and their packages")
    rp.add_argument("-o", "--output")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "verify" and args.trials < 0:
        parser.error("--trials must be nonnegative")
    try:
        return args.func(args)
    except _Failure as f:
        sys.stderr.write(dumps(f.summary))
        return EXIT_INPUT
    except MTTError as e:
        sys.stderr.write(dumps({"error": type(e).__name__, "message": str(e)}))
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
