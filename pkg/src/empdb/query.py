"""Query answering: deduce from the context, otherwise induce from the
most specific applicable reference classes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import networkx as nx

from .compiler import CompiledProgram, ImplicationSet
from .core import ContextClause, EmpiricalClause, Formula, Interval, atoms_of
from .herbrand import iter_assignments
from .propositional import atom_mask, positions, rules_mask, truth_table

YES, NO, UNKNOWN = "yes", "no", "unknown"
DEFINITE, INDUCTIVE, NO_EVIDENCE = "definite", "inductive", "no-evidence"


@dataclass(frozen=True)
class Query:
    property: Formula
    subject: str

    def __str__(self) -> str:
        return f"{self.property}({self.subject})"


@dataclass(frozen=True)
class ClusterRange:
    cluster: tuple[Formula, ...]
    range: Interval
    clauses: tuple[EmpiricalClause, ...]


@dataclass(frozen=True)
class QueryAnswer:
    kind: str
    probability: Optional[int] = None
    results: tuple[ClusterRange, ...] = ()


class EmptyIntersectionError(ValueError):
    """The clauses of one cluster admit no common probability."""

    def __init__(self, cluster: tuple[Formula, ...], clauses: tuple[EmpiricalClause, ...]):
        self.cluster, self.clauses = cluster, clauses
        names = ", ".join(map(str, cluster))
        listing = "; ".join(map(str, clauses))
        super().__init__(f"empty probability range for cluster {{{names}}}: {listing}")


class ContextReasoner:
    """Propositional reasoning about named individuals under a context.

    The ground clauses plus every unary rule instantiated at every constant
    of the context (and at the queried individual) form a finite
    propositional theory; a formula holds of ``d`` when it holds in every
    model of that theory.
    """

    def __init__(self, context: Iterable[ContextClause], predicates: tuple[str, ...]):
        self.context = tuple(context)
        self.predicates = predicates
        self.rules = tuple(c for c in self.context if c.is_unary_rule)
        self.ground = tuple(c for c in self.context if c.is_ground)
        self.allowed = rules_mask(self.rules, predicates)
        self.constants = sorted({l.term for c in self.ground for l in c.literals()})
        self._cache: dict[str, int] = {}

    @cached_property
    def _theory(self):
        atoms = [(p, c) for c in self.constants for p in self.predicates]
        index = {a: i for i, a in enumerate(atoms)}
        clauses = []
        for cl in self.ground + tuple(r.instantiate(c) for r in self.rules for c in self.constants):
            lits = [(index[(cl.head.predicate, cl.head.term)], cl.head.positive)]
            lits += [(index[(l.predicate, l.term)], not l.positive) for l in cl.body]
            clauses.append(tuple(lits))
        return atoms, index, clauses

    def achievable(self, d: str) -> int:
        """Partitions ``d`` can occupy in some model of the context."""
        if d in self._cache:
            return self._cache[d]
        atoms, index, clauses = self._theory
        k = len(self.predicates)
        if d not in self.constants:
            consistent = next(iter_assignments(clauses, len(atoms)), None) is not None
            mask = self.allowed if consistent else 0
        else:
            mask = 0
            for p in positions(self.allowed):
                fixed = {
                    index[(name, d)]: bool(atom_mask(k, j) >> p & 1)
                    for j, name in enumerate(self.predicates)
                }
                if next(iter_assignments(clauses, len(atoms), fixed), None) is not None:
                    mask |= 1 << p
        self._cache[d] = mask
        return mask

    def entails(self, formula: Formula, d: str) -> str:
        reach = self.achievable(d)
        table = truth_table(formula, self.predicates)
        if reach & ~table == 0:
            return YES
        if reach & table == 0:
            return NO
        return UNKNOWN


def context_entails(
    context: Iterable[ContextClause], predicates: tuple[str, ...], formula: Formula, d: str
) -> str:
    """``yes`` / ``no`` / ``unknown`` for whether the context decides ``formula(d)``.

    An unsatisfiable context entails everything and answers ``yes``.
    """
    return ContextReasoner(context, predicates).entails(formula, d)


def applicable_clauses(
    comp: CompiledProgram, q: Query, reasoner: Optional[ContextReasoner] = None
) -> list[EmpiricalClause]:
    preds = comp.predicates
    reasoner = reasoner or ContextReasoner(comp.source.context, preds)
    head = truth_table(q.property, preds)
    reach = reasoner.achievable(q.subject)
    return [
        cl
        for cl in comp.clauses
        if truth_table(cl.head, preds) == head
        and reach & ~truth_table(cl.body_formula, preds) == 0
    ]


def preferred_clusters(bodies: Iterable[Formula], impl: ImplicationSet) -> list[tuple[Formula, ...]]:
    """Groups of mutually implied bodies with nothing strictly more specific outside.

    An edge ``a -> b`` means ``a`` implies ``b`` under the unary rules, so
    ``a`` is at least as specific.  Clusters are the strongly connected
    components with no incoming edge from another component.
    """
    reps: dict[int, Formula] = {}
    for f in bodies:
        reps.setdefault(impl.canon(f), f)
    g = nx.DiGraph()
    g.add_nodes_from(reps)
    for a in reps:
        for b in reps:
            if a != b and impl.entails(a, b):
                g.add_edge(a, b)
    dag = nx.condensation(g)
    clusters = [
        sorted(dag.nodes[n]["members"]) for n in dag.nodes if dag.in_degree(n) == 0
    ]
    clusters.sort()
    return [tuple(reps[c] for c in cluster) for cluster in clusters]


def answer(comp: CompiledProgram, q: Query) -> QueryAnswer:
    preds = comp.predicates
    unknown = sorted(set(atoms_of(q.property)) - set(preds))
    if unknown:
        raise ValueError(f"query uses undeclared predicates: {', '.join(unknown)}")
    reasoner = ContextReasoner(comp.source.context, preds)
    verdict = reasoner.entails(q.property, q.subject)
    if verdict == YES:
        return QueryAnswer(DEFINITE, 1)
    if verdict == NO:
        return QueryAnswer(DEFINITE, 0)

    applicable = applicable_clauses(comp, q, reasoner)
    if not applicable:
        return QueryAnswer(NO_EVIDENCE)
    results = []
    for cluster in preferred_clusters((cl.body_formula for cl in applicable), comp.impl):
        canons = {truth_table(f, preds) for f in cluster}
        members = tuple(
            cl for cl in applicable if truth_table(cl.body_formula, preds) in canons
        )
        rng = Interval(0, 1)
        for cl in members:
            rng = rng.intersect(cl.interval)
        if rng.is_empty:
            raise EmptyIntersectionError(cluster, members)
        results.append(ClusterRange(cluster, rng, members))
    return QueryAnswer(INDUCTIVE, results=tuple(results))
