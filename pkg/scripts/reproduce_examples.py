#!/usr/bin/env python3
"""Run the bundled example programs end to end and print what the engine says."""

from __future__ import annotations

import argparse
from pathlib import Path

from empdb.compiler import compile_program
from empdb.consistency import check_consistency
from empdb.herbrand import PER_PREDICATE, STRICT
from empdb.oracle import format_interpretation, materialize
from empdb.query import DEFINITE, INDUCTIVE, Query, answer
from empdb.syntax import format_interval, parse_program, parse_query

ROOT = Path(__file__).resolve().parent.parent / "programs"

QUERIES = {
    "elephants.emp": ["Elephant(clyde)", "~White(clyde)", "Grey(clyde)", "Grey(jill)", "Grey(bob)"],
    "monk_seals.emp": ["Female(joe)", "Female(sue)"],
    "joe_male.emp": ["Female(joe)", "Monk_seal(joe)"],
    "divergence.emp": [],
}


def show_answer(comp, text: str) -> str:
    prop, subject = parse_query(text)
    ans = answer(comp, Query(prop, subject))
    if ans.kind == DEFINITE:
        return str(ans.probability)
    if ans.kind == INDUCTIVE:
        return "; ".join(
            f"{format_interval(r.range)} via {{{', '.join(map(str, r.cluster))}}}" for r in ans.results
        )
    return "no-evidence"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--constraints", action="store_true", help="print each witness system")
    args = ap.parse_args()
    for name, queries in QUERIES.items():
        program = parse_program((ROOT / name).read_text())
        print(f"== {name}")
        for mode in (PER_PREDICATE, STRICT):
            r = check_consistency(program, mode)
            print(f"  {mode:>6}: {r.verdict}  witness={r.witness_counts}")
            if args.constraints and r.witness_system is not None:
                print("    " + r.witness_system.render().replace("\n", "\n    "))
        strict = check_consistency(program, STRICT)
        if strict.consistent:
            interp = materialize(strict.witness_model, strict.witness_counts, program)
            print("  materialized model:")
            print("    " + format_interpretation(interp).rstrip().replace("\n", "\n    "))
            comp = compile_program(program)
            print(f"  closure sizes per iteration: {comp.history}")
            for q in queries:
                print(f"  {q:<18} {show_answer(comp, q)}")


if __name__ == "__main__":
    main()
