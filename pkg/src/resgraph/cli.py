"""Command line entry point.

Exit codes: 0 success, 1 reproduction mismatch, 2 input error,
3 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import report
from .census import (
    DEFAULT_CAP,
    FLAGS,
    enumerate_graphs,
    reproduce_arng,
    reproduce_ding,
    row_violations,
)
from .dsl import parse_document
from .errors import InputError, InternalCheckError, OutOfRange, ResgraphError
from .graph import WeightedDualGraph
from .quotient import graph_from_pd, star_decompose

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _read(path: str) -> WeightedDualGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise OutOfRange(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text).graph


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return " ".join(f"{k}={_fmt(v)}" for k, v in value.items())
    if isinstance(value, list):
        return ", ".join(map(_fmt, value)) if value else "(none)"
    return str(value)


def _print_fields(rep: dict, keys: Sequence[str]) -> None:
    width = max(map(len, keys))
    for k in keys:
        print(f"{k:<{width}}  {_fmt(rep.get(k))}")


def cmd_check(args) -> int:
    G = _read(args.file)
    print(f"ok: {G.n} vertices, {len(G.edges)} edges, "
          f"{'tree' if G.is_tree() else 'not a tree'}, "
          f"negative definite: {_fmt(G.negative_definite)}")
    return EXIT_OK


_CLASSIFY_KEYS = ("negative_definite", "minimal", "rational", "p_f", "fundamental_cycle",
                  "e", "gorenstein", "nearly_gorenstein", "criteria", "structural_case",
                  "witnesses", "trace_cycle", "trace_colength", "almost_reduced",
                  "ade_pattern", "trace_is_ulrich")


def cmd_classify(args) -> int:
    rep = report.classify_report(_read(args.file))
    if args.json:
        print(report.dumps(rep))
        return EXIT_OK
    _print_fields(rep, _CLASSIFY_KEYS)
    q = rep["quotient"]
    if q is not None:
        print(f"{'quotient':<17}  log-terminal={_fmt(q['log_terminal'])} "
              f"chain={_fmt(q['chain'])} ding={_fmt(q['ding_item'])}")
    for err in rep["errors"]:
        print(f"note: {err['code']}: {err['message']}")
    return EXIT_OK


def cmd_quotient(args) -> int:
    rep = report.quotient_report(_read(args.file))
    if args.json:
        print(report.dumps(rep))
        return EXIT_OK
    keys = [k for k in ("chain", "log_terminal", "discrepancies", "ding_item",
                        "previously_missing", "end_curve_colength") if k in rep]
    _print_fields(rep, keys)
    if rep.get("pd_divisor"):
        D = rep["pd_divisor"]
        tag = "  (central weight != 2: display convention extended)" if D["extension"] else ""
        print(f"D = {D['display']}   deg D = {D['degree']}{tag}")
    for err in rep["errors"]:
        print(f"note: {err['code']}: {err['message']}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    rows = enumerate_graphs(args.max_vertices, args.max_weight,
                            trees_only=not args.all_graphs,
                            predicates=args.predicate or (), workers=args.workers,
                            cap=args.cap)
    counts: Counter = Counter()
    violations = []
    out_rows = []
    for row in rows:
        counts["graphs"] += 1
        for flag in FLAGS:
            counts[flag] += getattr(row, flag)
        for v in row_violations(row):
            violations.append(f"{row.key}: {v}")
        if args.json:
            out_rows.append(row.as_dict())
    if args.json:
        print(report.dumps({"schema_version": report.SCHEMA_VERSION,
                            "max_vertices": args.max_vertices,
                            "max_weight": args.max_weight,
                            "trees_only": not args.all_graphs,
                            "predicates": sorted(args.predicate or ()),
                            "counts": dict(counts), "violations": violations,
                            "rows": out_rows}))
    else:
        for k in ("graphs",) + FLAGS:
            print(f"{k:<18} {counts[k]}")
        for v in violations:
            print(f"violation: {v}")
    return EXIT_INTERNAL if violations else EXIT_OK


def cmd_reproduce(args) -> int:
    if args.which == "arng":
        rep = reproduce_arng(args.max_vertices, args.max_weight, cap=args.cap)
    else:
        rep = reproduce_ding(args.k_max, args.s_max)
    d = rep.as_dict()
    if args.json:
        print(report.dumps(d))
    else:
        for k, v in d.items():
            if isinstance(v, list) and len(v) > 12:
                v = v[:12] + [f"... {len(v) - 12} more"]
            print(f"{k:<24} {_fmt(v)}")
        print("result                   " + ("match" if rep.ok else "MISMATCH"))
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _fraction(text: str) -> tuple[int, int]:
    try:
        q, p = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected q/p, got {text!r}") from None
    return q, p


def cmd_from_pd(args) -> int:
    G = graph_from_pd(args.center, args.branch)
    if args.json:
        print(report.dumps(report.classify_report(G)))
        return EXIT_OK
    sd = star_decompose(G) if len(args.branch) >= 3 else None
    arms = " ".join("[" + " ".join(str(-w) for w in br.weights) + "]"
                    for br in (sd.branches if sd else ()))
    if sd:
        print(f"star {-args.center} : {arms}")
    else:
        from .dsl import emit

        print(emit(G), end="")
    deg = args.center - sum(Fraction(p, q) for q, p in args.branch)
    print(f"# deg D = {deg}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="resgraph",
                                 description="Invariants of weighted resolution graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and validate a graph file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="cycles, multiplicity and NG criteria")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quotient", help="star data, PD divisor and quotient tests")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("enumerate", help="classify all weighted trees up to isomorphism")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--max-weight", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--trees-only", action="store_true", default=True)
    g.add_argument("--all-graphs", action="store_true")
    p.add_argument("--predicate", action="append", choices=FLAGS,
                   help="keep rows with this flag set (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reproduce", help="rerun a classification over a bounded census")
    p.add_argument("which", choices=("arng", "ding"))
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--s-max", type=int, default=8)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("from-pd", help="star graph of a PD divisor")
    p.add_argument("--center", type=int, required=True, help="central weight b")
    p.add_argument("--branch", type=_fraction, action="append", required=True,
                   metavar="q/p")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_from_pd)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResgraphError as exc:
        if getattr(args, "json", False):
            print(report.dumps(report.error_report(exc)))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        if isinstance(exc, InternalCheckError):
            return EXIT_INTERNAL
        return EXIT_INPUT if isinstance(exc, InputError) else EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
