import random

from hypothesis import given, settings, strategies as st

from empdb.consistency import CONSISTENT, INCONSISTENT, check_consistency
from empdb.core import Atom, ContextClause, EmpiricalClause, Interval, Literal, Program
from empdb.generate import random_program
from empdb.herbrand import PER_PREDICATE, STRICT
from empdb.oracle import is_model, materialize, search_models


def test_joe_is_consistent(joe_male):
    for mode in (PER_PREDICATE, STRICT):
        r = check_consistency(joe_male, mode)
        assert r.verdict == CONSISTENT
        assert r.witness_system.satisfied_by(r.witness_counts)
        assert r.witness_system.satisfied_by((4, 6, 0, 0))


def test_monk_seal_program_is_consistent(monk_seals, seal_colony):
    assert check_consistency(monk_seals).consistent
    assert is_model(seal_colony, monk_seals)


def test_contradictory_facts():
    ctx = (ContextClause(Literal("A", "c")), ContextClause(Literal("A", "c", False)))
    p = Program(("A",), ctx, (EmpiricalClause(Interval(0, 0.5), Atom("A")),))
    r = check_consistency(p)
    assert r.verdict == INCONSISTENT and r.n_models == 0 and r.trace == ()


def test_divergence(divergence):
    assert check_consistency(divergence, PER_PREDICATE).consistent
    assert not check_consistency(divergence, STRICT).consistent


def test_parallel_run_reports_the_same_witness(elephants):
    one = check_consistency(elephants)
    many = check_consistency(elephants, workers=4)
    assert one == many


def test_trace_cap():
    rng = random.Random(3)
    for _ in range(200):
        p = random_program(rng)
        r = check_consistency(p, trace_cap=1)
        assert len(r.trace) <= 1
        if r.n_models > 1 and not r.consistent:
            assert r.trace_truncated
            return


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_sound_and_bounded_complete(seed):
    p = random_program(random.Random(seed))
    r = check_consistency(p)
    assert r.consistent == any(res == "feasible" for _, res in r.trace)
    if r.consistent:
        assert is_model(materialize(r.witness_model, r.witness_counts, p), p)
    if search_models(p, 6) is not None:
        assert r.consistent


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_removing_a_clause_keeps_consistency(seed):
    p = random_program(random.Random(seed))
    if check_consistency(p).consistent and p.empirical:
        assert check_consistency(p.with_empirical(p.empirical[1:])).consistent
