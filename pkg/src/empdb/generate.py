"""Random programs and interpretations for property sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    And,
    Atom,
    ContextClause,
    EmpiricalClause,
    Formula,
    Interval,
    Literal,
    Not,
    Or,
    Program,
)
from .oracle import Interpretation, partitions

COARSE = tuple(Fraction(n, 4) for n in range(5))


@dataclass(frozen=True)
class GenConfig:
    max_predicates: int = 3
    max_constants: int = 2
    max_ground: int = 3
    max_rules: int = 2
    max_empirical: int = 3
    max_formula_depth: int = 1
    max_body: int = 2
    endpoints: tuple[Fraction, ...] = COARSE
    max_domain: int = 8


def random_formula(rng: random.Random, preds: tuple[str, ...], depth: int) -> Formula:
    if depth <= 0 or rng.random() < 0.5:
        f: Formula = Atom(rng.choice(preds))
    else:
        op = rng.choice((And, Or))
        f = op(random_formula(rng, preds, depth - 1), random_formula(rng, preds, depth - 1))
    return Not(f) if rng.random() < 0.3 else f


def random_interval(rng: random.Random, endpoints: tuple[Fraction, ...]) -> Interval:
    while True:
        lo, hi = sorted(rng.sample(endpoints, 2) if rng.random() < 0.8 else [rng.choice(endpoints)] * 2)
        if (lo, hi) not in ((0, 0), (1, 1)):
            return Interval(lo, hi)


def _literal(rng: random.Random, preds: tuple[str, ...], term: str) -> Literal:
    return Literal(rng.choice(preds), term, rng.random() < 0.6)


def random_program(rng: random.Random, cfg: GenConfig = GenConfig()) -> Program:
    k = rng.randint(1, cfg.max_predicates)
    preds = tuple(f"P{i}" for i in range(k))
    consts = [f"c{i}" for i in range(rng.randint(1, cfg.max_constants))]
    context = []
    for _ in range(rng.randint(1, cfg.max_ground)):
        body = tuple(
            _literal(rng, preds, rng.choice(consts)) for _ in range(rng.randint(0, 1))
        )
        context.append(ContextClause(_literal(rng, preds, rng.choice(consts)), body))
    for _ in range(rng.randint(0, cfg.max_rules)):
        body = tuple(_literal(rng, preds, "X") for _ in range(rng.randint(1, cfg.max_body)))
        context.append(ContextClause(_literal(rng, preds, "X"), body))
    empirical = []
    for _ in range(rng.randint(1, cfg.max_empirical)):
        head = random_formula(rng, preds, cfg.max_formula_depth)
        body = tuple(
            random_formula(rng, preds, cfg.max_formula_depth)
            for _ in range(rng.randint(0, cfg.max_body))
        )
        empirical.append(EmpiricalClause(random_interval(rng, cfg.endpoints), head, body))
    return Program(preds, tuple(context), tuple(empirical))


def random_interpretation(
    rng: random.Random, predicates: tuple[str, ...], constants: tuple[str, ...], max_domain: int = 8
) -> Interpretation:
    size = rng.randint(max(1, len(constants)), max_domain)
    cells = partitions(predicates)
    valuation = tuple(rng.choice(cells) for _ in range(size))
    elements = rng.sample(range(size), len(constants))
    return Interpretation(size, dict(zip(constants, elements)), valuation)


def perturb(rng: random.Random, interp: Interpretation, predicates: tuple[str, ...]) -> Interpretation:
    """Change one element's partition, or add or drop an unnamed element."""
    cells = partitions(predicates)
    val = list(interp.valuation)
    named = set(interp.constant_map.values())
    move = rng.random()
    free = [e for e in range(len(val)) if e not in named]
    if move < 0.5 or (move < 0.75 and not free):
        val[rng.randrange(len(val))] = rng.choice(cells)
    elif move < 0.75:
        drop = rng.choice(free)
        if len(val) == 1:
            return interp
        del val[drop]
        cmap = {c: e - (e > drop) for c, e in interp.constant_map.items()}
        return Interpretation(len(val), cmap, tuple(val))
    else:
        val.append(rng.choice(cells))
    return Interpretation(len(val), dict(interp.constant_map), tuple(val))
