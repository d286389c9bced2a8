import random

import pytest
from hypothesis import given, settings, strategies as st

from empdb.consistency import check_consistency, herbrand_models
from empdb.core import Atom, ContextClause, Literal, Not, Program
from empdb.generate import random_interpretation, random_program
from empdb.herbrand import PER_PREDICATE
from empdb.oracle import (
    Interpretation,
    MaterializeError,
    UnmappedConstantError,
    cardinality,
    format_interpretation,
    from_counts,
    is_model,
    materialize,
    parse_interpretation,
    partition_counts,
    satisfies_context,
    satisfies_empirical,
    search_models,
)

SEALS = ("Monk_seal", "Female")
SEAL, FEMALE = Atom("Monk_seal"), Atom("Female")


def test_cardinalities(seal_colony):
    assert cardinality(seal_colony, [SEAL]) == 10
    assert cardinality(seal_colony, [SEAL, FEMALE]) == 4
    assert cardinality(seal_colony, [FEMALE, Not(FEMALE)]) == 0


def test_empirical_satisfaction(monk_seals, seal_colony):
    cl = monk_seals.empirical[0]
    assert satisfies_empirical(seal_colony, cl)
    nobody = from_counts((0, 0, 3, 2), SEALS)
    assert satisfies_empirical(nobody, cl)
    half = from_counts((1, 1, 0, 0), SEALS)
    assert not satisfies_empirical(half, cl)


def test_context_satisfaction(monk_seals, seal_colony):
    assert satisfies_context(seal_colony, monk_seals.context)
    assert satisfies_context(seal_colony, ())
    outsider = Interpretation(20, {"joe": 15}, seal_colony.valuation)
    assert not satisfies_context(outsider, monk_seals.context)
    unmapped = Interpretation(20, {}, seal_colony.valuation)
    with pytest.raises(UnmappedConstantError):
        satisfies_context(unmapped, monk_seals.context)


def test_models(monk_seals, joe_male, seal_colony):
    assert is_model(seal_colony, monk_seals)
    assert is_model(seal_colony, joe_male)
    female_joe = Interpretation(20, {"joe": 0}, seal_colony.valuation)
    assert not is_model(female_joe, joe_male)
    assert is_model(seal_colony, Program(SEALS, (), ()))


def test_partition_counts(seal_colony):
    assert partition_counts(seal_colony, SEALS) == (4, 6, 0, 10)
    assert partition_counts(Interpretation(1, {}, (frozenset(SEALS),)), SEALS) == (1, 0, 0, 0)
    three = Interpretation(3, {}, (frozenset({"Monk_seal"}),) * 2 + (frozenset(),))
    assert partition_counts(three, SEALS) == (0, 2, 0, 1)


def test_materialize(joe_male, monk_seals, seal_colony):
    (m,) = herbrand_models(joe_male)
    interp = materialize(m, (4, 6, 0, 0), joe_male)
    e = interp.constant_map["joe"]
    assert interp.valuation[e] == frozenset({"Monk_seal"})
    assert is_model(interp, joe_male)
    with pytest.raises(MaterializeError):
        materialize(m, (0, 0, 0, 0), joe_male)
    empty = Program(SEALS, (), monk_seals.empirical)
    (m0,) = herbrand_models(empty)
    built = materialize(m0, (4, 6, 0, 10), empty)
    assert built.domain_size == 20
    assert partition_counts(built, SEALS) == partition_counts(seal_colony, SEALS)


def test_materialize_can_fail_with_per_predicate_counts(divergence):
    (m,) = herbrand_models(divergence, PER_PREDICATE)
    r = check_consistency(divergence, PER_PREDICATE)
    with pytest.raises(MaterializeError):
        materialize(m, r.witness_counts, divergence)


def test_search(monk_seals):
    found = search_models(monk_seals, 20)
    assert found is not None and is_model(found, monk_seals)
    assert search_models(monk_seals, 4) is None
    facts = tuple(ContextClause(Literal("A", "c", sign)) for sign in (True, False))
    contradiction = Program(("A",), facts, ())
    assert search_models(contradiction, 6) is None


def test_text_format(seal_colony):
    text = format_interpretation(seal_colony)
    assert text.splitlines()[:3] == ["domain 20", "const joe = d5", "d1..d4: Female, Monk_seal"]
    assert parse_interpretation(text) == seal_colony


def test_bad_interpretations():
    with pytest.raises(ValueError):
        Interpretation(2, {"a": 0, "b": 0}, (frozenset(), frozenset()))
    with pytest.raises(ValueError):
        Interpretation(0, {}, ())
    with pytest.raises(ValueError):
        parse_interpretation("domain 2\nd3: A\n")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_text_round_trip(seed):
    rng = random.Random(seed)
    p = random_program(rng)
    interp = random_interpretation(rng, p.predicates, p.constants)
    assert parse_interpretation(format_interpretation(interp)) == interp


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_search_results_are_models(seed):
    p = random_program(random.Random(seed))
    found = search_models(p, 5)
    if found is not None:
        assert is_model(found, p) and found.domain_size <= 5
