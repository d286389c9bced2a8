"""Herbrand models of the ground part of a context.

A small backtracking search with unit propagation over ground atoms
``(predicate, constant)``.  Bases here are tiny (a handful of named
individuals), so no clause learning.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import ContextClause, Literal

GroundAtom = tuple[str, str]

# Two ways to bound partition counts by the named constants: one lower bound
# per predicate and polarity (the "paper" mode on the command line), or one
# per distinct truth assignment of the constants ("strict").
PER_PREDICATE = "paper"
STRICT = "strict"
MODES = (PER_PREDICATE, STRICT)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


@dataclass(frozen=True)
class HerbrandModel:
    true_atoms: frozenset[GroundAtom]
    base: tuple[GroundAtom, ...]

    def holds(self, atom: GroundAtom) -> bool:
        return atom in self.true_atoms

    @property
    def predicates(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(p for p, _ in self.base))

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(sorted({c for _, c in self.base}))

    def __str__(self) -> str:
        atoms = sorted(self.true_atoms, key=self.base.index)
        return "{" + ", ".join(f"{p}({c})" for p, c in atoms) + "}"


@dataclass(frozen=True)
class ConstantSignature:
    """The truth values a model gives one constant on the ground-context predicates."""

    assignment: tuple[tuple[str, bool], ...]
    constants: tuple[str, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.constants)

    def __str__(self) -> str:
        vals = ", ".join(f"{p}={int(v)}" for p, v in self.assignment)
        return f"{'/'.join(self.constants)} -> ({vals})"


def split_context(
    context: Iterable[ContextClause],
) -> tuple[tuple[ContextClause, ...], tuple[ContextClause, ...]]:
    """Return ``(unary_rules, ground_clauses)``."""
    context = tuple(context)
    rules = tuple(c for c in context if not c.is_ground)
    ground = tuple(c for c in context if c.is_ground)
    return rules, ground


def ground_base(
    ground_clauses: Iterable[ContextClause], predicate_order: Sequence[str] | None = None
) -> tuple[GroundAtom, ...]:
    preds: dict[str, None] = {}
    consts: set[str] = set()
    for c in ground_clauses:
        for l in c.literals():
            preds.setdefault(l.predicate)
            consts.add(l.term)
    order = list(preds)
    if predicate_order is not None:
        rank = {p: i for i, p in enumerate(predicate_order)}
        order.sort(key=lambda p: rank.get(p, len(rank)))
    return tuple((p, c) for p in order for c in sorted(consts))


# -- clause search -------------------------------------------------------------

Clause = tuple[tuple[int, bool], ...]


def _to_clause(c: ContextClause, index: dict[GroundAtom, int]) -> Clause:
    lits = [(index[(c.head.predicate, c.head.term)], c.head.positive)]
    lits += [(index[(l.predicate, l.term)], not l.positive) for l in c.body]
    return tuple(lits)


def _propagate(clauses: Sequence[Clause], assign: list) -> bool:
    """Unit propagation in place; False on conflict."""
    changed = True
    while changed:
        changed = False
        for clause in clauses:
            unassigned = None
            n_unassigned = 0
            satisfied = False
            for atom, sign in clause:
                v = assign[atom]
                if v is None:
                    n_unassigned += 1
                    unassigned = (atom, sign)
                elif v == sign:
                    satisfied = True
                    break
            if satisfied:
                continue
            if n_unassigned == 0:
                return False
            if n_unassigned == 1:
                atom, sign = unassigned
                assign[atom] = sign
                changed = True
    return True


def iter_assignments(
    clauses: Sequence[Clause], n_atoms: int, fixed: dict[int, bool] | None = None
) -> Iterator[tuple[bool, ...]]:
    """All total assignments of ``n_atoms`` atoms satisfying ``clauses``.

    Atoms are branched in index order, false before true, so the output is
    lexicographic in the assignment vector.
    """
    assign: list = [None] * n_atoms
    for a, v in (fixed or {}).items():
        assign[a] = v

    def rec(assign: list) -> Iterator[tuple[bool, ...]]:
        if not _propagate(clauses, assign):
            return
        try:
            a = assign.index(None)
        except ValueError:
            yield tuple(assign)
            return
        for v in (False, True):
            nxt = list(assign)
            nxt[a] = v
            yield from rec(nxt)

    yield from rec(assign)


def satisfiable(clauses: Sequence[Clause], n_atoms: int, fixed: dict[int, bool] | None = None) -> bool:
    return next(iter_assignments(clauses, n_atoms, fixed), None) is not None


# -- public ----------------------------------------------------------------


def enumerate_models(
    ground_clauses: Iterable[ContextClause],
    unary_rules: Iterable[ContextClause] = (),
    mode: str = STRICT,
    predicate_order: Sequence[str] | None = None,
) -> list[HerbrandModel]:
    """Herbrand models of the ground clauses, in deterministic order.

    In strict mode a model must also satisfy every instance of a unary rule
    at the constants of the base, when all of the instance's atoms lie in the
    base.  Rules touching predicates outside the base are left to the
    signature constraints downstream.
    """
    check_mode(mode)
    ground_clauses = tuple(ground_clauses)
    base = ground_base(ground_clauses, predicate_order)
    index = {a: i for i, a in enumerate(base)}
    clauses = [_to_clause(c, index) for c in ground_clauses]
    if mode == STRICT:
        for rule in unary_rules:
            for const in sorted({c for _, c in base}):
                inst = rule.instantiate(const)
                if all((l.predicate, l.term) in index for l in inst.literals()):
                    clauses.append(_to_clause(inst, index))
    models = []
    for assignment in iter_assignments(clauses, len(base)):
        true_atoms = frozenset(a for a, v in zip(base, assignment) if v)
        models.append(HerbrandModel(true_atoms, base))
    return models


def signatures(model: HerbrandModel) -> list[ConstantSignature]:
    """Group the model's constants by their assignment to the base predicates."""
    preds = model.predicates
    groups: dict[tuple, list[str]] = {}
    for const in model.constants:
        key = tuple((p, (p, const) in model.true_atoms) for p in preds)
        groups.setdefault(key, []).append(const)
    return [ConstantSignature(key, tuple(cs)) for key, cs in groups.items()]


def predicate_counts(model: HerbrandModel) -> dict[str, tuple[int, int]]:
    """Per base predicate: (#constants where true, #constants where false)."""
    pos: Counter = Counter()
    neg: Counter = Counter()
    for p, c in model.base:
        if (p, c) in model.true_atoms:
            pos[p] += 1
        else:
            neg[p] += 1
    return {p: (pos[p], neg[p]) for p in model.predicates}


def literal_holds(model: HerbrandModel, lit: Literal) -> bool:
    return model.holds((lit.predicate, lit.term)) == lit.positive
