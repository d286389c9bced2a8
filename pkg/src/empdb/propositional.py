"""Truth tables of complex predicates over the 2^k partitions.

Partition positions are 0-based here (``p``); the user-facing index is
``p + 1``.  Partitions run over truth assignments in descending binary value
with the first-declared predicate as the most significant bit, so for
``(Monk_seal, Female)`` position 0 is (1, 1) and position 3 is (0, 0).

A truth table is a plain ``int`` used as a bitmask: bit ``p`` is set iff the
formula holds in partition ``p``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .core import And, Atom, Bottom, ContextClause, Formula, Not, Or, Top

TruthTable = int


def full_mask(k: int) -> TruthTable:
    return (1 << (1 << k)) - 1


@lru_cache(maxsize=None)
def atom_mask(k: int, j: int) -> TruthTable:
    """Partitions in which the ``j``-th declared predicate is true."""
    shift = k - 1 - j
    mask = 0
    for p in range(1 << k):
        if not (p >> shift) & 1:
            mask |= 1 << p
    return mask


def partition_members(predicates: Sequence[str], p: int) -> frozenset[str]:
    k = len(predicates)
    return frozenset(name for j, name in enumerate(predicates) if not (p >> (k - 1 - j)) & 1)


def partition_position(predicates: Sequence[str], true_preds: Iterable[str]) -> int:
    true_preds = set(true_preds)
    k = len(predicates)
    p = 0
    for j, name in enumerate(predicates):
        if name not in true_preds:
            p |= 1 << (k - 1 - j)
    return p


def positions(mask: TruthTable) -> list[int]:
    out = []
    p = 0
    while mask:
        if mask & 1:
            out.append(p)
        mask >>= 1
        p += 1
    return out


@lru_cache(maxsize=1 << 16)
def truth_table(f: Formula, predicates: tuple[str, ...]) -> TruthTable:
    k = len(predicates)
    if isinstance(f, Atom):
        try:
            return atom_mask(k, predicates.index(f.name))
        except ValueError:
            raise KeyError(f"undeclared predicate {f.name}") from None
    if isinstance(f, Not):
        return full_mask(k) ^ truth_table(f.arg, predicates)
    if isinstance(f, And):
        return truth_table(f.left, predicates) & truth_table(f.right, predicates)
    if isinstance(f, Or):
        return truth_table(f.left, predicates) | truth_table(f.right, predicates)
    if isinstance(f, Top):
        return full_mask(k)
    if isinstance(f, Bottom):
        return 0
    raise TypeError(f"not a formula: {f!r}")


def satisfying_partitions(fs: Iterable[Formula], predicates: tuple[str, ...]) -> TruthTable:
    """Partitions satisfying every formula of ``fs`` (all of them if empty)."""
    mask = full_mask(len(predicates))
    for f in fs:
        mask &= truth_table(f, predicates)
    return mask


def rule_table(rule: ContextClause, predicates: tuple[str, ...]) -> TruthTable:
    """Partitions in which the unary rule holds (body false or head true)."""
    body = satisfying_partitions((l.formula() for l in rule.body), predicates)
    head = truth_table(rule.head.formula(), predicates)
    return (full_mask(len(predicates)) ^ body) | head


def rules_mask(rules: Iterable[ContextClause], predicates: tuple[str, ...]) -> TruthTable:
    """Partitions consistent with every unary rule."""
    mask = full_mask(len(predicates))
    for r in rules:
        mask &= rule_table(r, predicates)
    return mask


def mask_entails(allowed: TruthTable, hypothesis: TruthTable, conclusion: TruthTable) -> bool:
    return hypothesis & allowed & ~conclusion == 0


def rule_theory_entails(
    rules: Iterable[ContextClause],
    hypothesis: Formula,
    conclusion: Formula,
    predicates: tuple[str, ...],
) -> bool:
    """Does ``hypothesis -> conclusion`` hold in every partition obeying ``rules``?"""
    allowed = rules_mask(rules, predicates)
    return mask_entails(
        allowed, truth_table(hypothesis, predicates), truth_table(conclusion, predicates)
    )
