"""Command-line entry point.

Exit codes: 0 success/accepted, 1 analysis-negative (rejected trace, false
predicate, collision), 2 usage or parse error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .core import render_trace
from .denotational import sigma_d
from .dsl import ParseError, SourceDocument, parse_document, parse_trace, render_interaction
from .harness import run_equivalence
from .operational import accepts, evades, next_steps, prune, sigma_o_up_to, terminates

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3

DEFAULT_MAX_LEN = 6
LARGE_MAX_LEN = 10


class UsageError(Exception):
    pass


def _load(args) -> SourceDocument:
    if args.expr is not None:
        text, name = args.expr, "<expr>"
    elif args.file is None:
        raise UsageError("give an .isd file or --expr")
    elif args.file == "-":
        text, name = sys.stdin.read(), "<stdin>"
    else:
        name = args.file
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        return parse_document(text)
    except ParseError as exc:
        raise UsageError(f"{name}:{exc}") from None


def cmd_fmt(args, out) -> int:
    doc = _load(args)
    out.write(render_interaction(doc.interaction) + "\n")
    return OK


def cmd_traces(args, out) -> int:
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    if args.max_len > LARGE_MAX_LEN and not args.allow_large:
        raise UsageError(f"--max-len above {LARGE_MAX_LEN} needs --allow-large")
    doc = _load(args)
    if args.semantics == "den":
        traces = sigma_d(doc.interaction, args.max_len)
    else:
        traces = sigma_o_up_to(doc.interaction, args.max_len)
    for t in traces:
        out.write(render_trace(t) + "\n")
    return OK


def _traces_to_check(args, doc: SourceDocument) -> list:
    if args.trace is not None:
        lines = [(1, args.trace)]
    else:
        try:
            with open(args.trace_file, encoding="utf-8") as fh:
                lines = [(n, line) for n, line in enumerate(fh, 1) if line.strip()]
        except OSError as exc:
            raise UsageError(f"cannot read {args.trace_file}: {exc.strerror}") from None
    traces = []
    for n, line in lines:
        try:
            t = parse_trace(line.rstrip("\n"), line=n)
        except ParseError as exc:
            raise UsageError(f"trace {exc}") from None
        if doc.explicit_header:
            bad = [a for a in t if not doc.signature.admits(a)]
            if bad:
                raise UsageError(f"trace line {n}: action {bad[0]} is not declared in the header")
        traces.append(t)
    return traces


def cmd_check(args, out) -> int:
    doc = _load(args)
    status = OK
    for t in _traces_to_check(args, doc):
        verdict = accepts(doc.interaction, t)
        out.write(f"{'accepted' if verdict.accepted else 'rejected'} {render_trace(t)}\n")
        if not verdict.accepted:
            status = NEGATIVE
        elif args.witness:
            for step in verdict.witness:
                out.write(f"  {step}\n")
    return status


def cmd_frontier(args, out) -> int:
    doc = _load(args)
    for step in next_steps(doc.interaction):
        out.write(f"{step}\n")
    return OK


def cmd_prune(args, out) -> int:
    doc = _load(args)
    pruned = prune(doc.interaction, args.lifeline)
    if pruned is None:
        out.write(f"collision: {render_interaction(doc.interaction)} does not evade {args.lifeline}\n")
        return NEGATIVE
    out.write(render_interaction(pruned) + "\n")
    return OK


def cmd_eval(args, out) -> int:
    doc = _load(args)
    if args.query == "terminates":
        value = terminates(doc.interaction)
    else:
        if not args.lifeline:
            raise UsageError("--query evades needs --lifeline")
        value = evades(doc.interaction, args.lifeline)
    out.write(f"{'true' if value else 'false'}\n")
    return OK if value else NEGATIVE


def cmd_equiv(args, out) -> int:
    if args.cases < 1:
        raise UsageError("--cases must be >= 1")
    if args.max_depth < 0 or args.max_len < 0:
        raise UsageError("--max-depth and --max-len must be >= 0")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    start = time.perf_counter()
    equivalent = 0
    discrepancies = []
    for case in run_equivalence(args.seed, args.cases, args.max_depth, args.max_len, args.jobs):
        if case.ok:
            equivalent += 1
            if args.verbose:
                out.write(f"case {case.index}: ok ({case.traces} traces) {case.term}\n")
        else:
            discrepancies.append(case.discrepancy)
            out.write(f"case {case.index}: DISCREPANCY {json.dumps(case.discrepancy.to_dict())}\n")
    elapsed = time.perf_counter() - start
    out.write(f"{equivalent}/{args.cases} equivalent\n")
    print(f"equiv: {elapsed:.2f}s", file=sys.stderr)
    return OK if not discrepancies else INTERNAL


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", nargs="?", help="interaction document (.isd), '-' for stdin")
    p.add_argument("-e", "--expr", help="interaction text given inline instead of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intlang", description="Interaction language semantics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fmt", help="print the canonical form of a term")
    _add_source(p)
    p.set_defaults(func=cmd_fmt)

    p = sub.add_parser("traces", help="enumerate accepted traces up to a length")
    _add_source(p)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--semantics", choices=("op", "den"), default="op")
    p.add_argument("--allow-large", action="store_true", help=f"permit --max-len above {LARGE_MAX_LEN}")
    p.set_defaults(func=cmd_traces)

    p = sub.add_parser("check", help="decide trace membership")
    _add_source(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--trace", help="trace text, e.g. l1!m1.l2?m1 or eps")
    group.add_argument("--trace-file", help="file with one trace per line")
    p.add_argument("--witness", action="store_true", help="print the execution steps of accepted traces")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("frontier", help="list the immediate execution steps")
    _add_source(p)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("prune", help="prune a term w.r.t. a lifeline")
    _add_source(p)
    p.add_argument("--lifeline", required=True)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("eval", help="evaluate the termination or evasion predicate")
    _add_source(p)
    p.add_argument("--query", choices=("terminates", "evades"), required=True)
    p.add_argument("--lifeline")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", help="differential test of operational vs denotational semantics")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--max-depth", type=int, default=4)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true", help="print every case, not only discrepancies")
    p.set_defaults(func=cmd_equiv)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"intlang {args.command}: {exc}", file=sys.stderr)
        return USAGE
    except RecursionError:
        print(f"intlang {args.command}: term too deep", file=sys.stderr)
        return INTERNAL
    except Exception as exc:  # invariant violations surface as exit 3
        print(f"intlang {args.command}: internal error: {exc!r}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
