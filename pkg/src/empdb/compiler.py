"""Program compilation: entailed implications and the chaining closure.

Formulas are compared by truth table, so two syntactically different but
equivalent formulas are the same formula here.  The first spelling met is
kept as the representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .core import (
    And,
    EmpiricalClause,
    Formula,
    Interval,
    Or,
    Program,
    negate,
    subformulas,
)
from .herbrand import split_context
from .propositional import mask_entails, rules_mask, truth_table

ZERO, ONE = Fraction(0), Fraction(1)


class CompileLimitError(RuntimeError):
    """The closure outgrew the configured iteration or clause budget."""


@dataclass
class ImplicationSet:
    """Pairs ``consequent <- antecedent`` entailed by the unary rules, over a scope.

    Membership is decided from truth tables on demand, so the set never has
    to be materialised.
    """

    predicates: tuple[str, ...]
    allowed: int
    scope: dict[int, Formula] = field(default_factory=dict)

    def canon(self, f: Formula) -> int:
        return truth_table(f, self.predicates)

    def add(self, f: Formula) -> int:
        c = self.canon(f)
        self.scope.setdefault(c, f)
        return c

    def entails(self, antecedent: int, consequent: int) -> bool:
        return mask_entails(self.allowed, antecedent, consequent)

    def __contains__(self, pair: tuple[Formula, Formula]) -> bool:
        consequent, antecedent = (self.canon(f) for f in pair)
        return (
            consequent in self.scope
            and antecedent in self.scope
            and self.entails(antecedent, consequent)
        )

    def consequents(self, antecedent: int) -> Iterator[int]:
        for c in self.scope:
            if self.entails(antecedent, c):
                yield c

    @property
    def pairs(self) -> set[tuple[Formula, Formula]]:
        return {
            (self.scope[c], self.scope[a])
            for a in self.scope
            for c in self.scope
            if self.entails(a, c)
        }

    def equivalent(self, a: int, b: int) -> bool:
        return self.entails(a, b) and self.entails(b, a)


def compute_impl(
    context: Iterable, scope: Iterable[Formula], predicates: tuple[str, ...]
) -> ImplicationSet:
    rules, _ = split_context(context)
    impl = ImplicationSet(predicates, rules_mask(rules, predicates))
    for f in scope:
        impl.add(f)
    return impl


# -- clause keys ---------------------------------------------------------------

Key = tuple[int, int, Fraction, Fraction]


@dataclass(frozen=True)
class _Chained:
    head: int
    body: int
    lo: Fraction
    hi: Fraction

    @property
    def key(self) -> Key:
        return (self.head, self.body, self.lo, self.hi)


def _allowed_interval(lo: Fraction, hi: Fraction) -> bool:
    assert lo <= hi, (lo, hi)
    return (lo, hi) not in ((ZERO, ZERO), (ONE, ONE))


class _Closure:
    """Working state of the chaining fixpoint.

    ``depth`` counts how many conjunction/disjunction steps built a formula
    out of the program's own formulas; negation is free.  Clauses whose head
    or body would exceed ``max_depth`` are not generated.  A clause is also
    skipped when the unary rules alone already guarantee it (``vacuous``)
    or when a clause with the same head and body and a tighter interval is
    already present.
    """

    def __init__(self, impl: ImplicationSet, max_depth: Optional[int], prune_vacuous: bool):
        self.impl = impl
        self.preds = impl.predicates
        self.full = (1 << (1 << len(self.preds))) - 1
        self.rep: dict[int, Formula] = {}
        self.depth: dict[int, int] = {}
        self.max_depth = max_depth
        self.prune_vacuous = prune_vacuous
        self.clauses: list[_Chained] = []
        self.intervals: dict[tuple[int, int], list[tuple[Fraction, Fraction]]] = {}

    def formula(self, f: Formula, depth: int = 0) -> int:
        c = truth_table(f, self.preds)
        self.rep.setdefault(c, f)
        self.depth[c] = min(self.depth.get(c, depth), depth)
        return c

    def combined(self, c: int, f: Formula, depth: int) -> Optional[int]:
        """Register a derived formula; None if it is too deep."""
        if self.max_depth is not None and self.depth.get(c, depth) > self.max_depth:
            return None
        self.rep.setdefault(c, f)
        self.depth[c] = min(self.depth.get(c, depth), depth)
        return c

    def vacuous(self, c: _Chained) -> bool:
        allowed = self.impl.allowed
        hb = c.head & c.body & allowed
        nb = ~c.head & c.body & allowed
        if not hb and not nb:
            return True
        lo_ok = c.lo == 0 or not nb
        hi_ok = c.hi == 1 or not hb
        return lo_ok and hi_ok

    def subsumed(self, c: _Chained) -> bool:
        for lo, hi in self.intervals.get((c.head, c.body), ()):
            if c.lo <= lo and hi <= c.hi:
                return True
        return False

    def clause(self, cl: EmpiricalClause) -> _Chained:
        return _Chained(self.formula(cl.head), self.formula(cl.body_formula), cl.lo, cl.hi)

    def to_clause(self, c: _Chained) -> EmpiricalClause:
        return EmpiricalClause(Interval(c.lo, c.hi), self.rep[c.head], (self.rep[c.body],))

    def admit(self, c: _Chained) -> bool:
        if self.subsumed(c):
            return False
        if self.prune_vacuous and self.vacuous(c):
            return False
        self.intervals.setdefault((c.head, c.body), []).append((c.lo, c.hi))
        self.clauses.append(c)
        return True

    def derive(self, t: list[_Chained]) -> Iterator[_Chained]:
        """One round of the five chaining constructions over ``t``."""
        rep, depth = self.rep, self.depth
        by_body: dict[int, list[_Chained]] = {}
        for cl in t:
            by_body.setdefault(cl.body, []).append(cl)

        # widen by implication: F1 <- F2 in impl, [c1, c2] F2 <- F3  =>  [c1, 1] F1 <- F3
        for cl in t:
            if not _allowed_interval(cl.lo, ONE):
                continue
            for f1 in list(self.impl.consequents(cl.head)):
                yield _Chained(f1, cl.body, cl.lo, ONE)

        # complement: [c1, c2] ~F1 <- F2  =>  [1 - c2, 1 - c1] F1 <- F2
        for cl in t:
            neg = self.full ^ cl.head
            self.combined(neg, negate(rep[cl.head]), depth[cl.head])
            lo, hi = ONE - cl.hi, ONE - cl.lo
            if _allowed_interval(lo, hi):
                yield _Chained(neg, cl.body, lo, hi)

        # conjoin and disjoin two heads over a shared body
        for body, group in by_body.items():
            for a, b in combinations(group, 2):
                if a.head == b.head:
                    continue
                d = 1 + max(depth[a.head], depth[b.head])
                c = self.combined(a.head & b.head, And(rep[a.head], rep[b.head]), d)
                lo, hi = max(ZERO, a.lo + b.lo - ONE), min(a.hi, b.hi)
                if c is not None and _allowed_interval(lo, hi):
                    yield _Chained(c, body, lo, hi)
                c = self.combined(a.head | b.head, Or(rep[a.head], rep[b.head]), d)
                lo, hi = max(a.lo, b.lo), min(ONE, a.hi + b.hi)
                if c is not None and _allowed_interval(lo, hi):
                    yield _Chained(c, body, lo, hi)

        # merge bodies: [c] F1 <- F2, [d] F3 <- F4  =>  [0, min(1, c2 + d2)] (F1 & F3) <- (F2 | F4)
        for x in t:
            for y in t:
                if x.head == y.body or x.body == y.body or x.body == y.head:
                    continue
                hi = min(ONE, x.hi + y.hi)
                if not _allowed_interval(ZERO, hi):
                    continue
                dh = 1 + max(depth[x.head], depth[y.head])
                db = 1 + max(depth[x.body], depth[y.body])
                head = self.combined(x.head & y.head, And(rep[x.head], rep[y.head]), dh)
                body = self.combined(x.body | y.body, Or(rep[x.body], rep[y.body]), db)
                if head is not None and body is not None:
                    yield _Chained(head, body, ZERO, hi)


@dataclass(frozen=True)
class CompiledProgram:
    source: Program
    clauses: tuple[EmpiricalClause, ...]
    impl: ImplicationSet = field(compare=False)
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def predicates(self) -> tuple[str, ...]:
        return self.source.predicates

    @property
    def derived(self) -> tuple[EmpiricalClause, ...]:
        return self.clauses[len(self.source.empirical) :]

    def as_program(self) -> Program:
        """The source context together with the closed clause set."""
        return self.source.with_empirical(self.clauses)


def chain_step(t: Iterable[EmpiricalClause], impl: ImplicationSet) -> set[EmpiricalClause]:
    """Everything one unpruned round of chaining derives from ``t``."""
    closure = _Closure(impl, max_depth=None, prune_vacuous=False)
    for c, f in impl.scope.items():
        closure.formula(f)
    chained = [closure.clause(cl) for cl in t]
    return {closure.to_clause(c) for c in closure.derive(chained)}


def compile_program(
    program: Program,
    *,
    max_depth: Optional[int] = 1,
    prune_vacuous: bool = True,
    max_iterations: int = 64,
    max_clauses: int = 20_000,
) -> CompiledProgram:
    """Close the empirical clauses under chaining, to a fixpoint.

    ``max_depth=None`` and ``prune_vacuous=False`` give the unrestricted
    closure, which is only practical for one or two predicates.
    """
    preds = program.predicates
    rules, _ = split_context(program.context)
    impl = ImplicationSet(preds, rules_mask(rules, preds))
    closure = _Closure(impl, max_depth, prune_vacuous)

    for r in rules:
        for lit in r.literals():
            for f in subformulas(lit.formula()):
                closure.formula(f)
    for cl in program.empirical:
        for f in (cl.head, *cl.body):
            for sub in subformulas(f):
                closure.formula(sub)
    for cl in program.empirical:
        c = closure.clause(cl)
        closure.intervals.setdefault((c.head, c.body), []).append((c.lo, c.hi))
        closure.clauses.append(c)
    for c, f in closure.rep.items():
        impl.scope.setdefault(c, f)

    history = [len(closure.clauses)]
    for _ in range(max_iterations):
        before = len(closure.clauses)
        for c in list(closure.derive(list(closure.clauses))):
            if closure.admit(c) and len(closure.clauses) > max_clauses:
                raise CompileLimitError(
                    f"closure exceeded {max_clauses} clauses in iteration {len(history)}"
                )
        if len(closure.clauses) == before:
            break
        for c in closure.clauses[before:]:
            impl.scope.setdefault(c.head, closure.rep[c.head])
            impl.scope.setdefault(c.body, closure.rep[c.body])
        history.append(len(closure.clauses))
    else:
        raise CompileLimitError(f"no fixpoint within {max_iterations} iterations")

    n = len(program.empirical)
    clauses = program.empirical + tuple(closure.to_clause(c) for c in closure.clauses[n:])
    return CompiledProgram(program, clauses, impl, tuple(history))
