"""Command line interface.

Exit codes: 0 success (consistent, model found, answer given), 1 negative
verdict (inconsistent, no model, not a model), 2 usage or input error,
3 empty probability range for some cluster.

JSON output (``--json``) always has the keys ``kind``, ``results`` (a list
of ``{"cluster": [...], "lo": "p/q", "hi": "p/q"}``) and ``witness`` (a map
from ``v1 .. vN`` to counts).  Probabilities are exact fraction strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .compiler import CompileLimitError, compile_program
from .consistency import build_system, check_consistency
from .core import ProgramError
from .herbrand import PER_PREDICATE, STRICT
from .oracle import (
    UnmappedConstantError,
    format_interpretation,
    is_model,
    parse_interpretation,
    search_models,
)
from .query import DEFINITE, INDUCTIVE, EmptyIntersectionError, Query, answer
from .syntax import (
    ParseError,
    format_compiled,
    format_interval,
    parse_compiled,
    parse_program,
    parse_query,
)

OK, NEGATIVE, USAGE, EMPTY_RANGE = 0, 1, 2, 3


def _emit_json(kind: str, results=(), witness=None, **extra) -> None:
    doc = {"kind": kind, "results": list(results), "witness": witness or {}}
    doc.update(extra)
    print(json.dumps(doc, indent=2))


def cmd_check(args) -> int:
    program = parse_program(Path(args.file).read_text())
    report = check_consistency(program, args.mode, workers=args.workers)
    witness = {}
    if report.consistent:
        witness = {f"v{i}": str(n) for i, n in enumerate(report.witness_counts, 1)}
    if args.json:
        _emit_json(
            report.verdict,
            witness=witness,
            mode=report.mode,
            model=str(report.witness_model) if report.witness_model else None,
            models_checked=len(report.trace),
        )
    else:
        print(report.verdict)
        if report.consistent:
            print(f"model: {report.witness_model}")
            print("witness: " + " ".join(f"{k}={v}" for k, v in witness.items()))
    if args.dump_constraints:
        # the witness model's system, or every refuted model's when there is none
        if report.consistent:
            print(report.witness_system.render())
        for model, status in report.trace if not report.consistent else ():
            print(f"% model {model}: {status}")
            print(build_system(program, model, args.mode).render())
    return OK if report.consistent else NEGATIVE


def cmd_compile(args) -> int:
    program = parse_program(Path(args.file).read_text())
    start = time.perf_counter()
    comp = compile_program(program, max_depth=args.max_depth, prune_vacuous=not args.no_prune)
    elapsed = time.perf_counter() - start
    for i, n in enumerate(comp.history):
        print(f"iteration {i}: {n} clauses")
    print(f"{len(comp.derived)} derived clauses in {elapsed:.2f}s", file=sys.stderr)
    Path(args.output).write_text(format_compiled(comp))
    return OK


def _load_compiled(path: str, max_depth: Optional[int]):
    text = Path(path).read_text()
    comp = parse_compiled(text)
    if not comp.derived and "derived" not in text:
        comp = compile_program(comp.source, max_depth=max_depth)
    return comp


def cmd_query(args) -> int:
    comp = _load_compiled(args.file, args.max_depth)
    prop, subject = parse_query(args.query)
    try:
        ans = answer(comp, Query(prop, subject))
    except EmptyIntersectionError as e:
        print(f"error: {e}", file=sys.stderr)
        return EMPTY_RANGE
    if args.json:
        results = [
            {
                "cluster": [str(f) for f in r.cluster],
                "lo": str(r.range.lo),
                "hi": str(r.range.hi),
            }
            for r in ans.results
        ]
        extra = {"probability": str(ans.probability)} if ans.kind == DEFINITE else {}
        _emit_json(ans.kind, results, **extra)
    elif ans.kind == DEFINITE:
        print(ans.probability)
    elif ans.kind == INDUCTIVE:
        for r in ans.results:
            names = ", ".join(map(str, r.cluster))
            print(f"{format_interval(r.range)} via {{{names}}}")
    else:
        print("no-evidence")
    return OK


def cmd_oracle_search(args) -> int:
    program = parse_program(Path(args.file).read_text())
    found = search_models(program, args.max_domain)
    if found is None:
        print(f"no model with at most {args.max_domain} elements")
        return NEGATIVE
    print(format_interpretation(found), end="")
    return OK


def cmd_oracle_check(args) -> int:
    program = parse_program(Path(args.file).read_text())
    interp = parse_interpretation(Path(args.interpretation).read_text())
    try:
        ok = is_model(interp, program)
    except UnmappedConstantError as e:
        print(f"error: constant {e.args[0]} is not mapped to an element", file=sys.stderr)
        return USAGE
    print("model" if ok else "not a model")
    return OK if ok else NEGATIVE


def _depth(text: str) -> Optional[int]:
    return None if text == "none" else int(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="empdb", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide consistency")
    p.add_argument("file")
    p.add_argument("--mode", choices=[PER_PREDICATE, STRICT], default=STRICT)
    p.add_argument("--dump-constraints", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("compile", help="close the empirical clauses under chaining")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--max-depth", type=_depth, default=1, help="formula nesting bound, or 'none'")
    p.add_argument("--no-prune", action="store_true", help="keep clauses the rules already guarantee")
    p.set_defaults(run=cmd_compile)

    p = sub.add_parser("query", help="answer F(c) against a program or compiled artifact")
    p.add_argument("file")
    p.add_argument("query")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-depth", type=_depth, default=1)
    p.set_defaults(run=cmd_query)

    p = sub.add_parser("oracle", help="brute-force checks on finite interpretations")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("search", help="look for a small model")
    q.add_argument("file")
    q.add_argument("--max-domain", type=int, required=True)
    q.set_defaults(run=cmd_oracle_search)
    q = osub.add_parser("check", help="test an interpretation against a program")
    q.add_argument("file")
    q.add_argument("interpretation")
    q.set_defaults(run=cmd_oracle_check)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.run(args)
    except ProgramError as e:
        for v in e.violations:
            print(f"error: {v}", file=sys.stderr)
    except (ParseError, OSError, ValueError, CompileLimitError) as e:
        print(f"error: {e}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
