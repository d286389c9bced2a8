import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from empdb.consistency import build_system, herbrand_models
from empdb.constraints import EQ, GE, LE, ConstraintSystem, LinearConstraint, con_E
from empdb.generate import random_program
from empdb.herbrand import PER_PREDICATE
from empdb.solver import DegenerateSystemError, SolverLimitError, feasible, relaxation

F = Fraction


def test_joe_system_feasible(joe_male):
    (m,) = herbrand_models(joe_male, PER_PREDICATE)
    sys = build_system(joe_male, m, PER_PREDICATE)
    res = feasible(sys)
    assert res.feasible and sys.satisfied_by(res.witness)
    assert sys.satisfied_by((4, 6, 0, 0))


def test_trivially_infeasible():
    sys = ConstraintSystem(
        1,
        (
            LinearConstraint.from_mapping({0: 1}, GE, 1),
            LinearConstraint.from_mapping({0: 1}, LE, 0),  # 2 v1 <= v1
        ),
    )
    assert not feasible(sys).feasible


def test_monk_seal_system(monk_seals):
    sys = con_E(monk_seals.empirical, monk_seals.predicates)
    res = feasible(sys)
    assert res.feasible and sys.satisfied_by(res.witness)
    assert sys.satisfied_by((4, 6, 0, 10))
    assert res.render().startswith("v1=")


def test_out_of_range_variable_is_a_usage_error():
    sys = ConstraintSystem(2, (LinearConstraint.from_mapping({5: 1}, GE, 1),))
    with pytest.raises(DegenerateSystemError):
        feasible(sys)


def test_branch_and_bound_fallback():
    # 2 v1 = 1 + 2 v2 has rational solutions but no integer one
    sys = ConstraintSystem(2, (LinearConstraint.from_mapping({0: 2, 1: -2}, EQ, 1),))
    assert relaxation(2, sys.constraints) is not None
    with pytest.raises(SolverLimitError):
        feasible(sys, node_limit=50)
    bounded = sys.extend([LinearConstraint.from_mapping({0: 1, 1: 1}, LE, 10)])
    assert not feasible(bounded).feasible
    # v1 + v2 = 3, v1 >= 1.5 is fixed by branching
    sys = ConstraintSystem(
        2,
        (
            LinearConstraint.from_mapping({0: 1, 1: 1}, EQ, 3),
            LinearConstraint.from_mapping({0: 1}, GE, F(3, 2)),
        ),
    )
    res = feasible(sys)
    assert res.feasible and sys.satisfied_by(res.witness)


# -- against brute force --------------------------------------------------------


def _brute(sys, bound):
    for v in product(range(bound + 1), repeat=sys.num_vars):
        if sys.satisfied_by(v):
            return v
    return None


coarse = st.sampled_from([F(n, 4) for n in range(-8, 9)])


@st.composite
def small_systems(draw):
    n = draw(st.integers(1, 3))
    cons = []
    for _ in range(draw(st.integers(1, 4))):
        co = {i: draw(coarse) for i in range(n)}
        rel = draw(st.sampled_from([LE, GE, EQ]))
        cons.append(LinearConstraint.from_mapping(co, rel, draw(st.integers(0, 2))))
    cons.append(LinearConstraint.from_mapping({i: 1 for i in range(n)}, LE, 6))
    return ConstraintSystem(n, tuple(cons))


@settings(max_examples=300, deadline=None)
@given(small_systems())
def test_agrees_with_enumeration_on_bounded_systems(sys):
    res = feasible(sys, node_limit=10_000)
    brute = _brute(sys, 6)
    assert res.feasible == (brute is not None)
    if res.feasible:
        assert sys.satisfied_by(res.witness)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_engine_systems_scale(seed):
    p = random_program(random.Random(seed))
    for m in herbrand_models(p):
        sys = build_system(p, m)
        res = feasible(sys)
        if res.feasible:
            for n in (1, 2, 7, 100):
                assert sys.satisfied_by(tuple(n * x for x in res.witness))
