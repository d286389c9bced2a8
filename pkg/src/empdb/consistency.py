"""Consistency checking: one feasibility problem per Herbrand model of the ground context."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .constraints import ConstraintSystem, con_E, model_constraints, rule_constraint
from .core import Program, check
from .herbrand import STRICT, HerbrandModel, check_mode, enumerate_models, split_context
from .solver import FeasibilityResult, feasible

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class ConsistencyReport:
    verdict: str
    mode: str
    witness_model: Optional[HerbrandModel] = None
    witness_counts: Optional[tuple[int, ...]] = None
    witness_system: Optional[ConstraintSystem] = None
    trace: tuple[tuple[HerbrandModel, str], ...] = ()
    trace_truncated: bool = False
    n_models: int = 0

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def build_system(program: Program, model: HerbrandModel, mode: str = STRICT) -> ConstraintSystem:
    """Empirical constraints, then unary rules, then the model's count bounds."""
    preds = program.predicates
    rules, _ = split_context(program.context)
    system = con_E(program.empirical, preds)
    system = system.extend(rule_constraint(r, preds) for r in rules)
    return system.extend(model_constraints(model, preds, mode))


def herbrand_models(program: Program, mode: str = STRICT) -> list[HerbrandModel]:
    rules, ground = split_context(program.context)
    return enumerate_models(ground, rules, mode, program.predicates)


def check_consistency(
    program: Program,
    mode: str = STRICT,
    *,
    workers: int = 1,
    trace_cap: int = 64,
) -> ConsistencyReport:
    """Decide consistency of ``program``.

    Models are checked in enumeration order; with ``workers > 1`` they are
    solved concurrently but the reported witness is still the first feasible
    model in that order.
    """
    check_mode(mode)
    check(program)
    models = herbrand_models(program, mode)
    if not models:
        return ConsistencyReport(INCONSISTENT, mode, n_models=0)

    def solve(m: HerbrandModel) -> tuple[ConstraintSystem, FeasibilityResult]:
        sys = build_system(program, m, mode)
        return sys, feasible(sys)

    trace: list[tuple[HerbrandModel, str]] = []
    hit = None
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(solve, models))
        for m, (sys, res) in zip(models, results):
            trace.append((m, res.status))
            if res.feasible and hit is None:
                hit = (m, sys, res)
        # keep only the prefix a sequential run would have produced
        if hit is not None:
            trace = trace[: models.index(hit[0]) + 1]
    else:
        for m in models:
            sys, res = solve(m)
            trace.append((m, res.status))
            if res.feasible:
                hit = (m, sys, res)
                break

    truncated = len(trace) > trace_cap
    trace = trace[:trace_cap]
    if hit is None:
        return ConsistencyReport(
            INCONSISTENT, mode, trace=tuple(trace), trace_truncated=truncated, n_models=len(models)
        )
    m, sys, res = hit
    return ConsistencyReport(
        CONSISTENT,
        mode,
        witness_model=m,
        witness_counts=res.witness,
        witness_system=sys,
        trace=tuple(trace),
        trace_truncated=truncated,
        n_models=len(models),
    )
