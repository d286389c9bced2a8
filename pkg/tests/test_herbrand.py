from itertools import product

from hypothesis import given, settings, strategies as st

from empdb.core import ContextClause, Literal
from empdb.herbrand import (
    PER_PREDICATE,
    STRICT,
    enumerate_models,
    ground_base,
    literal_holds,
    signatures,
    split_context,
)


def fact(pred, const, positive=True):
    return ContextClause(Literal(pred, const, positive))


def test_split_elephants(elephants):
    rules, ground = split_context(elephants.context)
    assert [str(r) for r in rules] == [
        "Elephant(X) :- Royal_elephant(X).",
        "Grey(X) :- ~White(X).",
    ]
    assert [str(g) for g in ground] == ["Royal_elephant(clyde).", "Elephant(jill)."]
    assert split_context(()) == ((), ())


def test_split_ground_only(joe_male):
    rules, ground = split_context(joe_male.context)
    assert rules == () and len(ground) == 2


def test_single_model_for_joe(joe_male):
    models = enumerate_models(joe_male.context, (), PER_PREDICATE, joe_male.predicates)
    assert [str(m) for m in models] == ["{Monk_seal(joe)}"]


def test_empty_ground_part_has_one_empty_model():
    (m,) = enumerate_models(())
    assert m.true_atoms == frozenset() and m.base == ()


def test_strict_mode_grounds_rules(divergence):
    rules, ground = split_context(divergence.context)
    assert len(enumerate_models(ground, rules, PER_PREDICATE)) == 1
    assert enumerate_models(ground, rules, STRICT) == []


def test_signatures_of_joe(joe_male):
    (m,) = enumerate_models(joe_male.context, (), STRICT, joe_male.predicates)
    (sig,) = signatures(m)
    assert sig.constants == ("joe",)
    assert dict(sig.assignment) == {"Monk_seal": True, "Female": False}


def test_identical_constants_share_a_signature():
    (m,) = enumerate_models([fact("A", "a"), fact("A", "b")])
    (sig,) = signatures(m)
    assert sig.multiplicity == 2


def test_elephant_models_by_brute_force(elephants):
    rules, ground = split_context(elephants.context)
    models = enumerate_models(ground, rules, PER_PREDICATE, elephants.predicates)
    # base: Royal_elephant and Elephant at clyde and jill; two atoms are fixed
    assert len(models) == 4
    for m in models:
        sigs = signatures(m)
        assert sum(s.multiplicity for s in sigs) == 2
        differ = m.holds(("Royal_elephant", "jill")) != m.holds(("Royal_elephant", "clyde")) or (
            m.holds(("Elephant", "jill")) != m.holds(("Elephant", "clyde"))
        )
        assert len(sigs) == (2 if differ else 1)
    strict = enumerate_models(ground, rules, STRICT, elephants.predicates)
    assert len(strict) == 2
    assert all(m.holds(("Elephant", "clyde")) for m in strict)


# -- properties ---------------------------------------------------------------

PREDS = ("A", "B")
CONSTS = ("a", "b")

ground_literal = st.builds(Literal, st.sampled_from(PREDS), st.sampled_from(CONSTS), st.booleans())
ground_clause = st.builds(ContextClause, ground_literal, st.lists(ground_literal, max_size=2).map(tuple))
rule_literal = st.builds(Literal, st.sampled_from(PREDS), st.just("X"), st.booleans())
rule = st.builds(ContextClause, rule_literal, st.lists(rule_literal, min_size=1, max_size=2).map(tuple))


def _clause_true(c, true_atoms):
    val = lambda l: ((l.predicate, l.term) in true_atoms) == l.positive
    return not all(val(l) for l in c.body) or val(c.head)


def _brute_models(ground, rules, strict):
    base = ground_base(ground, PREDS)
    consts = sorted({c for _, c in base})
    out = []
    for bits in product((False, True), repeat=len(base)):
        true_atoms = frozenset(a for a, b in zip(base, bits) if b)
        if not all(_clause_true(c, true_atoms) for c in ground):
            continue
        if strict:
            insts = [r.instantiate(c) for r in rules for c in consts]
            insts = [i for i in insts if all((l.predicate, l.term) in base for l in i.literals())]
            if not all(_clause_true(i, true_atoms) for i in insts):
                continue
        out.append(true_atoms)
    return out


@settings(max_examples=300, deadline=None)
@given(st.lists(ground_clause, max_size=4), st.lists(rule, max_size=2))
def test_enumeration_matches_brute_force(ground, rules):
    for mode, strict in ((PER_PREDICATE, False), (STRICT, True)):
        got = [m.true_atoms for m in enumerate_models(ground, rules, mode, PREDS)]
        assert got == _brute_models(ground, rules, strict)
        assert len(set(got)) == len(got)


@settings(max_examples=200, deadline=None)
@given(st.lists(ground_clause, max_size=4), st.lists(rule, max_size=2))
def test_models_satisfy_ground_clauses_and_strict_is_subset(ground, rules):
    loose = enumerate_models(ground, rules, PER_PREDICATE, PREDS)
    strict = enumerate_models(ground, rules, STRICT, PREDS)
    assert set(strict) <= set(loose)
    for m in loose:
        for c in ground:
            assert not all(literal_holds(m, l) for l in c.body) or literal_holds(m, c.head)
    assert len(loose) <= 2 ** len(ground_base(ground, PREDS))
