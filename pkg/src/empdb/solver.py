"""Exact feasibility of partition-count constraint systems.

Phase-1 simplex over :class:`fractions.Fraction` with Bland's rule.  A
rational point is turned into an integer one by clearing denominators, which
is valid for the systems the engine emits (homogeneous interval and rule
constraints plus lower bounds with positive right-hand sides).  Anything
else falls back to a bounded branch-and-bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .constraints import EQ, GE, LE, ConstraintSystem, LinearConstraint

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"


class DegenerateSystemError(ValueError):
    """A constraint references a variable outside ``0 .. num_vars - 1``."""


class SolverLimitError(RuntimeError):
    """Branch-and-bound exceeded its node budget without a verdict."""


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    witness: Optional[tuple[int, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def as_mapping(self) -> dict[int, int]:
        """Witness keyed by 1-based partition index."""
        if self.witness is None:
            return {}
        return {i + 1: v for i, v in enumerate(self.witness)}

    def render(self) -> str:
        if self.witness is None:
            return self.status
        return " ".join(f"v{i}={v}" for i, v in self.as_mapping().items())


def _check_ranges(sys: ConstraintSystem) -> None:
    for c in sys.constraints:
        for i, _ in c.coeffs:
            if not 0 <= i < sys.num_vars:
                raise DegenerateSystemError(
                    f"constraint '{c.render()}' references v{i + 1}, "
                    f"but the system has {sys.num_vars} variables"
                )


def relaxation(num_vars: int, constraints: Sequence[LinearConstraint]) -> Optional[list[Fraction]]:
    """A non-negative rational solution, or None when none exists."""
    rows: list[list[Fraction]] = []
    rels: list[str] = []
    rhs: list[Fraction] = []
    for c in constraints:
        row = [Fraction(0)] * num_vars
        for i, a in c.coeffs:
            row[i] = a
        b, rel = c.rhs, c.relation
        if b < 0:
            row = [-a for a in row]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        rows.append(row)
        rels.append(rel)
        rhs.append(b)

    m = len(rows)
    n_slack = sum(1 for r in rels if r != EQ)
    n_art = sum(1 for r in rels if r != LE)
    width = num_vars + n_slack + n_art
    table = []
    basis = []
    artificial = set()
    s_col = num_vars
    a_col = num_vars + n_slack
    for row, rel, b in zip(rows, rels, rhs):
        t = row + [Fraction(0)] * (n_slack + n_art) + [b]
        if rel == LE:
            t[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if rel == GE:
                t[s_col] = Fraction(-1)
                s_col += 1
            t[a_col] = Fraction(1)
            basis.append(a_col)
            artificial.add(a_col)
            a_col += 1
        table.append(t)

    # reduced costs of "minimise the sum of artificials"; last entry is -objective
    cost = [Fraction(1) if j in artificial else Fraction(0) for j in range(width)] + [Fraction(0)]
    for i in range(m):
        if basis[i] in artificial:
            cost = [c - t for c, t in zip(cost, table[i])]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = table[i][enter]
            if a > 0:
                ratio = table[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur for a bounded-below objective
            raise AssertionError("phase-1 objective unbounded")
        piv = table[leave][enter]
        prow = [x / piv for x in table[leave]]
        table[leave] = prow
        for i in range(m):
            if i != leave and table[i][enter] != 0:
                f = table[i][enter]
                table[i] = [x - f * y for x, y in zip(table[i], prow)]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, prow)]
        basis[leave] = enter

    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * num_vars
    for i, j in enumerate(basis):
        if j < num_vars:
            x[j] = table[i][-1]
    return x


def _lcm_scale(x: Sequence[Fraction]) -> tuple[int, ...]:
    scale = 1
    for v in x:
        scale = math.lcm(scale, v.denominator)
    return tuple(int(v * scale) for v in x)


def _branch_and_bound(sys: ConstraintSystem, node_limit: int) -> Optional[tuple[int, ...]]:
    """Depth-first search over per-variable bounds; one bound pair per variable at most."""
    stack: list[dict[int, tuple[Optional[int], Optional[int]]]] = [{}]
    nodes = 0
    while stack:
        bounds = stack.pop()
        nodes += 1
        if nodes > node_limit:
            raise SolverLimitError(f"branch-and-bound exceeded {node_limit} nodes")
        extra = []
        for i, (lo, hi) in bounds.items():
            if lo is not None:
                extra.append(LinearConstraint(((i, 1),), GE, lo, "branch"))
            if hi is not None:
                extra.append(LinearConstraint(((i, 1),), LE, hi, "branch"))
        x = relaxation(sys.num_vars, sys.constraints + tuple(extra))
        if x is None:
            continue
        frac = next((i for i, v in enumerate(x) if v.denominator != 1), None)
        if frac is None:
            return tuple(int(v) for v in x)
        v = x[frac]
        lo, hi = bounds.get(frac, (None, None))
        stack.append({**bounds, frac: (math.ceil(v), hi)})
        stack.append({**bounds, frac: (lo, math.floor(v))})
    return None


def feasible(sys: ConstraintSystem, node_limit: int = 2000) -> FeasibilityResult:
    """Decide whether ``sys`` has a non-negative integer solution."""
    _check_ranges(sys)
    x = relaxation(sys.num_vars, sys.constraints)
    if x is None:
        return FeasibilityResult(INFEASIBLE)
    witness = _lcm_scale(x)
    if not sys.satisfied_by(witness):
        witness = _branch_and_bound(sys, node_limit)
        if witness is None:
            return FeasibilityResult(INFEASIBLE)
    assert sys.satisfied_by(witness)
    return FeasibilityResult(FEASIBLE, witness)
