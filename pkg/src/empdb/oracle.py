"""Brute-force semantics on explicit finite interpretations.

Everything here works straight from the definitions: formulas are evaluated
element by element, ratios are compared as fractions, and partitions are
enumerated with :func:`itertools.product`.  Nothing from the constraint or
truth-table code is reused, so these functions can serve as test oracles.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    And,
    Atom,
    Bottom,
    ContextClause,
    EmpiricalClause,
    Formula,
    Not,
    Or,
    Program,
    Top,
)
from .herbrand import HerbrandModel


class UnmappedConstantError(KeyError):
    pass


class MaterializeError(ValueError):
    pass


@dataclass(frozen=True)
class Interpretation:
    """A finite domain ``0 .. domain_size - 1`` with constants and a valuation.

    ``valuation[e]`` is the set of predicates true of element ``e``.
    """

    domain_size: int
    constant_map: dict[str, int] = field(default_factory=dict)
    valuation: tuple[frozenset[str], ...] = ()

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("the domain must be nonempty")
        if len(self.valuation) != self.domain_size:
            raise ValueError("valuation must list every element")
        targets = list(self.constant_map.values())
        if len(set(targets)) != len(targets):
            raise ValueError("distinct constants must denote distinct elements")
        if any(not 0 <= e < self.domain_size for e in targets):
            raise ValueError("constant mapped outside the domain")

    def element(self, constant: str) -> int:
        try:
            return self.constant_map[constant]
        except KeyError:
            raise UnmappedConstantError(constant) from None


def holds(f: Formula, true_preds: frozenset[str]) -> bool:
    if isinstance(f, Atom):
        return f.name in true_preds
    if isinstance(f, Not):
        return not holds(f.arg, true_preds)
    if isinstance(f, And):
        return holds(f.left, true_preds) and holds(f.right, true_preds)
    if isinstance(f, Or):
        return holds(f.left, true_preds) or holds(f.right, true_preds)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    raise TypeError(f"not a formula: {f!r}")


def cardinality(interp: Interpretation, fs: Sequence[Formula]) -> int:
    return sum(1 for v in interp.valuation if all(holds(f, v) for f in fs))


def satisfies_empirical(interp: Interpretation, cl: EmpiricalClause) -> bool:
    denom = cardinality(interp, cl.body)
    if denom == 0:
        return True
    ratio = Fraction(cardinality(interp, (cl.head, *cl.body)), denom)
    return cl.lo <= ratio <= cl.hi


def _literal_holds(lit, true_preds: frozenset[str]) -> bool:
    return (lit.predicate in true_preds) == lit.positive


def _clause_holds(clause: ContextClause, value_of) -> bool:
    if all(_literal_holds(l, value_of(l)) for l in clause.body):
        return _literal_holds(clause.head, value_of(clause.head))
    return True


def satisfies_context(interp: Interpretation, context: Iterable[ContextClause]) -> bool:
    for clause in context:
        if clause.is_ground:
            ok = _clause_holds(clause, lambda l: interp.valuation[interp.element(l.term)])
            if not ok:
                return False
        elif clause.is_unary_rule:
            for v in interp.valuation:
                if not _clause_holds(clause, lambda l: v):
                    return False
        else:
            raise ValueError(f"ill-formed context clause: {clause}")
    return True


def is_model(interp: Interpretation, program: Program) -> bool:
    return satisfies_context(interp, program.context) and all(
        satisfies_empirical(interp, cl) for cl in program.empirical
    )


# -- partitions ------------------------------------------------------------------


def partitions(predicates: Sequence[str]) -> list[frozenset[str]]:
    """All 2^k cells, (1, 1, ...) first and (0, 0, ...) last."""
    return [
        frozenset(p for p, bit in zip(predicates, bits) if bit)
        for bits in product((True, False), repeat=len(predicates))
    ]


def partition_counts(interp: Interpretation, predicates: Sequence[str]) -> tuple[int, ...]:
    cells = partitions(predicates)
    known = set(predicates)
    counts = dict.fromkeys(cells, 0)
    for v in interp.valuation:
        counts[frozenset(v & known)] += 1
    return tuple(counts[c] for c in cells)


def from_counts(
    counts: Sequence[int], predicates: Sequence[str], constant_map: Optional[dict] = None
) -> Interpretation:
    valuation = []
    for cell, n in zip(partitions(predicates), counts):
        valuation.extend([cell] * n)
    return Interpretation(len(valuation), dict(constant_map or {}), tuple(valuation))


def materialize(model: HerbrandModel, counts: Sequence[int], program: Program) -> Interpretation:
    """Build an interpretation from a count vector, placing each constant of
    the Herbrand model in an element that agrees with it on the model's
    predicates."""
    if sum(counts) < 1:
        raise MaterializeError("all partition counts are zero; the domain would be empty")
    interp = from_counts(counts, program.predicates)
    taken: set[int] = set()
    cmap: dict[str, int] = {}
    preds = model.predicates
    for const in model.constants:
        want = {p for p in preds if (p, const) in model.true_atoms}
        for e, v in enumerate(interp.valuation):
            if e not in taken and {p for p in preds if p in v} == want:
                cmap[const] = e
                taken.add(e)
                break
        else:
            raise MaterializeError(
                f"no free element agrees with {const}'s assignment {sorted(want)}"
            )
    return Interpretation(interp.domain_size, cmap, interp.valuation)


# -- bounded search -------------------------------------------------------------


def _compositions(n_cells: int, total: int) -> Iterator[tuple[int, ...]]:
    """Vectors of ``n_cells`` non-negative ints summing to ``total``, lexicographically descending."""
    if n_cells == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n_cells - 1, total - first):
            yield (first,) + rest


def search_models(program: Program, max_domain: int) -> Optional[Interpretation]:
    """Some model with at most ``max_domain`` elements, or None.

    Count vectors are tried by domain size, then lexicographically; only
    vectors meeting the empirical clauses get a constant placement search.
    None does not prove inconsistency.
    """
    preds = program.predicates
    cells = partitions(preds)
    rules = [c for c in program.context if c.is_unary_rule]
    ground = [c for c in program.context if c.is_ground]
    live = [i for i, cell in enumerate(cells) if all(_clause_holds(r, lambda l: cell) for r in rules)]
    if not live:
        return None
    sums = []
    for cl in program.empirical:
        body = [i for i in live if all(holds(f, cells[i]) for f in cl.body)]
        both = [i for i in body if holds(cl.head, cells[i])]
        sums.append((body, both, cl.lo, cl.hi))
    constants = program.constants

    def placements(full: list[int]) -> Iterator[dict[str, int]]:
        occupied = [i for i in live if full[i] > 0]
        for choice in product(occupied, repeat=len(constants)):
            used: dict[int, int] = {}
            for i in choice:
                used[i] = used.get(i, 0) + 1
            if any(used[i] > full[i] for i in used):
                continue
            cell_of = dict(zip(constants, choice))
            if all(_clause_holds(g, lambda l: cells[cell_of[l.term]]) for g in ground):
                yield cell_of

    for size in range(max(1, len(constants)), max_domain + 1):
        for vec in _compositions(len(live), size):
            full = [0] * len(cells)
            for i, n in zip(live, vec):
                full[i] = n
            ok = True
            for body, both, lo, hi in sums:
                d = sum(full[i] for i in body)
                if d and not lo <= Fraction(sum(full[i] for i in both), d) <= hi:
                    ok = False
                    break
            if not ok:
                continue
            cell_of = next(placements(full), None)
            if cell_of is None:
                continue
            interp = from_counts(full, preds)
            starts = {}
            e = 0
            for i, n in enumerate(full):
                starts[i] = e
                e += n
            cmap = {}
            for const, i in cell_of.items():
                cmap[const] = starts[i]
                starts[i] += 1
            found = Interpretation(interp.domain_size, cmap, interp.valuation)
            assert is_model(found, program)
            return found
    return None


# -- text form ------------------------------------------------------------------


def format_interpretation(interp: Interpretation) -> str:
    """Elements print 1-based as ``d1 .. dN``; runs of equal valuations share a line."""
    lines = [f"domain {interp.domain_size}"]
    for const, e in sorted(interp.constant_map.items()):
        lines.append(f"const {const} = d{e + 1}")
    e = 0
    val = interp.valuation
    while e < len(val):
        end = e
        while end + 1 < len(val) and val[end + 1] == val[e]:
            end += 1
        if val[e]:
            span = f"d{e + 1}" if end == e else f"d{e + 1}..d{end + 1}"
            lines.append(f"{span}: {', '.join(sorted(val[e]))}")
        e = end + 1
    return "\n".join(lines) + "\n"


_SPAN = re.compile(r"d(\d+)(?:\.\.d(\d+))?\s*:\s*(.*)")


def parse_interpretation(text: str) -> Interpretation:
    size = None
    cmap: dict[str, int] = {}
    spans: list[tuple[int, int, frozenset[str]]] = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if m := re.fullmatch(r"domain\s+(\d+)", line):
            size = int(m.group(1))
        elif m := re.fullmatch(r"const\s+(\w+)\s*=\s*d(\d+)", line):
            cmap[m.group(1)] = int(m.group(2)) - 1
        elif m := _SPAN.fullmatch(line):
            a = int(m.group(1))
            b = int(m.group(2) or a)
            names = frozenset(x for x in re.split(r"[\s,]+", m.group(3)) if x)
            spans.append((a - 1, b - 1, names))
        else:
            raise ValueError(f"line {n}: cannot read {raw!r}")
    if size is None:
        raise ValueError("missing 'domain N' line")
    valuation = [frozenset()] * size
    for a, b, names in spans:
        if not 0 <= a <= b < size:
            raise ValueError(f"elements d{a + 1}..d{b + 1} outside a domain of {size}")
        for e in range(a, b + 1):
            valuation[e] = names
    return Interpretation(size, cmap, tuple(valuation))
