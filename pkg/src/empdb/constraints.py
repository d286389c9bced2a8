"""Linear constraints over partition cardinalities.

Variable ``v_i`` (rendered 1-based) counts the domain elements whose full
truth assignment is partition ``i``.  Every constraint is stored with all
variables on the left and a rational right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Atom, ContextClause, EmpiricalClause, fmt_fraction
from .herbrand import PER_PREDICATE, STRICT, HerbrandModel, check_mode, predicate_counts, signatures
from .propositional import (
    atom_mask,
    full_mask,
    positions,
    rule_table,
    satisfying_partitions,
    truth_table,
)

LE, GE, EQ = "<=", ">=", "="


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple[tuple[int, Fraction], ...]
    relation: str
    rhs: Fraction = Fraction(0)
    tag: str = field(default="", compare=False)

    def __post_init__(self):
        if self.relation not in (LE, GE, EQ):
            raise ValueError(f"bad relation {self.relation!r}")
        cleaned = tuple(sorted((int(i), Fraction(c)) for i, c in self.coeffs if c != 0))
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, Fraction], relation: str, rhs=0, tag: str = ""):
        return cls(tuple(coeffs.items()), relation, Fraction(rhs), tag)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def lhs(self, values: Sequence) -> Fraction:
        return sum((c * values[i] for i, c in self.coeffs), Fraction(0))

    def holds(self, values: Sequence) -> bool:
        lhs = self.lhs(values)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs

    def render(self) -> str:
        terms = []
        for i, c in self.coeffs:
            var = f"v{i + 1}"
            mag = abs(c)
            body = var if mag == 1 else f"{fmt_fraction(mag)}*{var}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        lhs = " ".join(terms) if terms else "0"
        return f"{lhs} {self.relation} {fmt_fraction(self.rhs)}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ConstraintSystem:
    num_vars: int
    constraints: tuple[LinearConstraint, ...] = ()
    header: tuple[str, ...] = field(default=(), compare=False)

    @property
    def provenance(self) -> tuple[str, ...]:
        return tuple(c.tag for c in self.constraints)

    def extend(self, more: Iterable[LinearConstraint]) -> "ConstraintSystem":
        return ConstraintSystem(self.num_vars, self.constraints + tuple(more), self.header)

    def satisfied_by(self, values: Sequence) -> bool:
        if len(values) != self.num_vars or any(v < 0 for v in values):
            return False
        return all(c.holds(values) for c in self.constraints)

    def violated(self, values: Sequence) -> list[LinearConstraint]:
        return [c for c in self.constraints if not c.holds(values)]

    def render(self) -> str:
        lines = [f"% {h}" for h in self.header]
        lines.append(f"% variables v1..v{self.num_vars}, all integer >= 0")
        for c in self.constraints:
            lines.append(f"{c.render()}    % {c.tag}" if c.tag else c.render())
        return "\n".join(lines)


def partition_header(predicates: Sequence[str]) -> tuple[str, ...]:
    """One comment line per partition naming the predicates true in it."""
    k = len(predicates)
    lines = ["partition order: " + ", ".join(predicates)]
    for p in range(1 << k):
        bits = "".join("0" if (p >> (k - 1 - j)) & 1 else "1" for j in range(k))
        lines.append(f"v{p + 1} = {bits}")
    return tuple(lines)


def _sum_text(mask: int) -> str:
    vs = [f"v{p + 1}" for p in positions(mask)]
    if not vs:
        return "0"
    return vs[0] if len(vs) == 1 else "(" + " + ".join(vs) + ")"


def con_clause(
    cl: EmpiricalClause, predicates: tuple[str, ...]
) -> tuple[LinearConstraint, LinearConstraint]:
    """Lower and upper constraints of one empirical clause, homogeneous form."""
    body = satisfying_partitions(cl.body, predicates)
    both = body & truth_table(cl.head, predicates)
    c1, c2 = cl.lo, cl.hi
    low: dict[int, Fraction] = {}
    up: dict[int, Fraction] = {}
    for p in positions(body):
        inside = 1 if (both >> p) & 1 else 0
        low[p] = c1 - inside
        up[p] = inside - c2
    b, hb = _sum_text(body), _sum_text(both)
    return (
        LinearConstraint.from_mapping(
            low, LE, 0, f"{cl} lower: {fmt_fraction(c1)}*{b} <= {hb}"
        ),
        LinearConstraint.from_mapping(
            up, LE, 0, f"{cl} upper: {hb} <= {fmt_fraction(c2)}*{b}"
        ),
    )


def nonempty_constraint(num_vars: int) -> LinearConstraint:
    return LinearConstraint.from_mapping(
        {i: 1 for i in range(num_vars)}, GE, 1, "domain is nonempty"
    )


def con_E(empirical: Iterable[EmpiricalClause], predicates: tuple[str, ...]) -> ConstraintSystem:
    n = 1 << len(predicates)
    cons: list[LinearConstraint] = []
    for cl in empirical:
        cons.extend(con_clause(cl, predicates))
    cons.append(nonempty_constraint(n))
    return ConstraintSystem(n, tuple(cons), partition_header(predicates))


def rule_constraint(rule: ContextClause, predicates: tuple[str, ...]) -> LinearConstraint:
    """Body-and-head count equals body count, i.e. no element breaks the rule."""
    broken = full_mask(len(predicates)) ^ rule_table(rule, predicates)
    return LinearConstraint.from_mapping(
        {p: 1 for p in positions(broken)}, EQ, 0, f"rule {rule}"
    )


def signature_mask(assignment: Iterable[tuple[str, bool]], predicates: tuple[str, ...]) -> int:
    """Partitions agreeing with a partial truth assignment."""
    k = len(predicates)
    mask = full_mask(k)
    for pred, value in assignment:
        a = atom_mask(k, predicates.index(pred))
        mask &= a if value else full_mask(k) ^ a
    return mask


def model_constraints(
    model: HerbrandModel, predicates: tuple[str, ...], mode: str = STRICT
) -> list[LinearConstraint]:
    """Lower bounds that let a partition-count vector host the model's constants."""
    check_mode(mode)
    k = len(predicates)
    out: list[LinearConstraint] = []
    if mode == PER_PREDICATE:
        for pred, (n_true, n_false) in predicate_counts(model).items():
            a = truth_table(Atom(pred), predicates)
            if n_true:
                out.append(
                    LinearConstraint.from_mapping(
                        {p: 1 for p in positions(a)}, GE, n_true, f"count of {pred}"
                    )
                )
            if n_false:
                out.append(
                    LinearConstraint.from_mapping(
                        {p: 1 for p in positions(full_mask(k) ^ a)},
                        GE,
                        n_false,
                        f"count of ~{pred}",
                    )
                )
        return out
    for sig in signatures(model):
        mask = signature_mask(sig.assignment, predicates)
        out.append(
            LinearConstraint.from_mapping(
                {p: 1 for p in positions(mask)}, GE, sig.multiplicity, f"signature {sig}"
            )
        )
    return out
