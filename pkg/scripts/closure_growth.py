#!/usr/bin/env python3
"""How the chaining closure grows with the formula-depth bound, with and
without dropping clauses the unary rules already guarantee."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from empdb.compiler import CompileLimitError, compile_program
from empdb.syntax import parse_program

ROOT = Path(__file__).resolve().parent.parent / "programs"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("program", nargs="?", default=str(ROOT / "elephants.emp"))
    ap.add_argument("--depths", default="0,1,2")
    ap.add_argument("--max-clauses", type=int, default=2000)
    args = ap.parse_args()
    program = parse_program(Path(args.program).read_text())
    print(f"{'depth':>5} {'prune':>5} {'clauses':>8} {'seconds':>8}  per-iteration")
    for depth in (int(d) for d in args.depths.split(",")):
        for prune in (True, False):
            t = time.perf_counter()
            try:
                comp = compile_program(
                    program, max_depth=depth, prune_vacuous=prune, max_clauses=args.max_clauses
                )
                size, hist = str(len(comp.clauses)), " ".join(map(str, comp.history))
            except CompileLimitError as e:
                size, hist = f">{args.max_clauses}", str(e)
            print(f"{depth:>5} {str(prune):>5} {size:>8} {time.perf_counter() - t:>8.2f}  {hist}")


if __name__ == "__main__":
    main()
