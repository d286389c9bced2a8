"""Abstract syntax for monadic empirical programs.

A program has a fixed, ordered list of unary predicate symbols, a two-valued
context (ground clauses and single-variable unary rules) and a set of
interval-annotated empirical clauses over complex predicates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Union

DEFAULT_MAX_PREDICATES = 16


# -- complex predicates ------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self) -> str:
        return f"~{self.arg}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} & {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"({self.left} | {self.right})"


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "false"


Formula = Union[Atom, Not, And, Or, Top, Bottom]

TRUE = Top()
FALSE = Bottom()


def conj(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    formulas = list(formulas)
    if not formulas:
        return TRUE
    return reduce(And, formulas)


def disj(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return FALSE
    return reduce(Or, formulas)


def negate(f: Formula) -> Formula:
    # strip a double negation so complemented heads stay readable
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def atoms_of(f: Formula) -> Iterator[str]:
    if isinstance(f, Atom):
        yield f.name
    elif isinstance(f, Not):
        yield from atoms_of(f.arg)
    elif isinstance(f, (And, Or)):
        yield from atoms_of(f.left)
        yield from atoms_of(f.right)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.arg)
    elif isinstance(f, (And, Or)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


# -- intervals ---------------------------------------------------------------


def to_fraction(value: Union[str, int, float, Fraction]) -> Fraction:
    """Exact rational from a literal; ``"0.45"`` becomes ``9/20``."""
    if isinstance(value, float):
        # go through repr so 0.45 means the decimal the user wrote
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", to_fraction(self.lo))
        object.__setattr__(self, "hi", to_fraction(self.hi))

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{fmt_fraction(self.lo)}, {fmt_fraction(self.hi)}]"

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def within(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


def fmt_fraction(x: Fraction) -> str:
    """Decimal rendering when the fraction terminates, ``p/q`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    n = abs(scaled.numerator)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{str(frac).rjust(digits, '0')}"


# -- context -----------------------------------------------------------------


def is_variable(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


@dataclass(frozen=True)
class Literal:
    """A signed unary atom ``[~]pred(term)``; ``term`` is a constant or variable."""

    predicate: str
    term: str
    positive: bool = True

    def __str__(self) -> str:
        return f"{'' if self.positive else '~'}{self.predicate}({self.term})"

    @property
    def is_ground(self) -> bool:
        return not is_variable(self.term)

    def formula(self) -> Formula:
        a = Atom(self.predicate)
        return a if self.positive else Not(a)


@dataclass(frozen=True)
class ContextClause:
    head: Literal
    body: tuple[Literal, ...] = ()

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."

    def literals(self) -> tuple[Literal, ...]:
        return (self.head,) + self.body

    @property
    def is_ground(self) -> bool:
        return all(l.is_ground for l in self.literals())

    @property
    def is_unary_rule(self) -> bool:
        terms = {l.term for l in self.literals()}
        return len(terms) == 1 and is_variable(next(iter(terms)))

    def instantiate(self, constant: str) -> "ContextClause":
        """Ground a unary rule at ``constant``."""
        if not self.is_unary_rule:
            raise ValueError(f"not a unary rule: {self}")

        def sub(l: Literal) -> Literal:
            return Literal(l.predicate, constant, l.positive)

        return ContextClause(sub(self.head), tuple(sub(l) for l in self.body))


# -- empirical clauses -------------------------------------------------------


@dataclass(frozen=True)
class EmpiricalClause:
    interval: Interval
    head: Formula
    body: tuple[Formula, ...] = ()

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @property
    def body_formula(self) -> Formula:
        return conj(self.body)

    def __str__(self) -> str:
        s = f"{self.interval} {self.head}(X)"
        if self.body:
            s += " :- " + ", ".join(f"{b}(X)" for b in self.body)
        return s + "."


# -- programs ----------------------------------------------------------------


@dataclass(frozen=True)
class Program:
    """An empirical program: declared predicates, context and empirical clauses.

    ``predicates`` is ordered; its order fixes the partition enumeration.
    """

    predicates: tuple[str, ...]
    context: tuple[ContextClause, ...] = ()
    empirical: tuple[EmpiricalClause, ...] = ()
    max_predicates: int = field(default=DEFAULT_MAX_PREDICATES, compare=False)

    @property
    def k(self) -> int:
        return len(self.predicates)

    @property
    def num_partitions(self) -> int:
        return 1 << self.k

    def index(self, predicate: str) -> int:
        return self.predicates.index(predicate)

    @property
    def constants(self) -> tuple[str, ...]:
        seen = dict.fromkeys(
            l.term for c in self.context for l in c.literals() if l.is_ground
        )
        return tuple(sorted(seen))

    @property
    def unary_rules(self) -> tuple[ContextClause, ...]:
        return tuple(c for c in self.context if c.is_unary_rule)

    @property
    def ground_clauses(self) -> tuple[ContextClause, ...]:
        return tuple(c for c in self.context if c.is_ground)

    def with_empirical(self, empirical: Iterable[EmpiricalClause]) -> "Program":
        return Program(self.predicates, self.context, tuple(empirical), self.max_predicates)


class ProgramError(ValueError):
    """A program violates the well-formedness conditions on its clauses."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


def validate(program: Program) -> list[str]:
    """Return human-readable violations; an empty list means well-formed."""
    out: list[str] = []
    preds = program.predicates
    if len(set(preds)) != len(preds):
        dupes = sorted({p for p in preds if preds.count(p) > 1})
        out.append(f"duplicate predicate declarations: {', '.join(dupes)}")
    if program.k > program.max_predicates:
        out.append(
            f"{program.k} predicates exceed the configured cap of "
            f"{program.max_predicates} (2^k partitions are enumerated)"
        )
    declared = set(preds)

    for c in program.context:
        for lit in c.literals():
            if lit.predicate not in declared:
                out.append(
                    f"context clause '{c}': undeclared predicate {lit.predicate} [undeclared]"
                )
        if not (c.is_ground or c.is_unary_rule):
            out.append(
                f"context clause '{c}': must be fully ground or use one shared "
                "variable in every literal [context-form]"
            )

    for cl in program.empirical:
        lo, hi = cl.lo, cl.hi
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            out.append(f"empirical clause '{cl}': bounds must lie in [0, 1] [interval]")
        if lo > hi:
            out.append(f"empirical clause '{cl}': lower bound exceeds upper bound [interval]")
        if (lo, hi) in ((0, 0), (1, 1)):
            out.append(f"empirical clause '{cl}': interval [{lo}, {hi}] is not allowed [interval]")
        for f in (cl.head, *cl.body):
            for name in atoms_of(f):
                if name not in declared:
                    out.append(
                        f"empirical clause '{cl}': undeclared predicate {name} [undeclared]"
                    )
    return out


def check(program: Program) -> Program:
    """Validate and return ``program``; raise :class:`ProgramError` otherwise."""
    violations = validate(program)
    if violations:
        raise ProgramError(violations)
    return program
