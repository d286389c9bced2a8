from fractions import Fraction

import pytest

from empdb.core import (
    And,
    Atom,
    ContextClause,
    EmpiricalClause,
    Interval,
    Literal,
    Not,
    Program,
    ProgramError,
    check,
    conj,
    fmt_fraction,
    negate,
    to_fraction,
    validate,
)

A, B = Atom("A"), Atom("B")


def test_elephant_program_is_well_formed(elephants):
    assert validate(elephants) == []


def test_forbidden_intervals_are_reported():
    for lo, hi in [(1, 1), (0, 0)]:
        p = Program(("A", "B"), (), (EmpiricalClause(Interval(lo, hi), A, (B,)),))
        violations = validate(p)
        assert len(violations) == 1 and "[interval]" in violations[0]


def test_rule_mixing_variable_and_constant_is_rejected():
    clause = ContextClause(Literal("A", "X"), (Literal("B", "c"),))
    violations = validate(Program(("A", "B"), (clause,), ()))
    assert len(violations) == 1 and "[context-form]" in violations[0]


def test_two_variables_rejected():
    clause = ContextClause(Literal("A", "X"), (Literal("B", "Y"),))
    assert any("[context-form]" in v for v in validate(Program(("A", "B"), (clause,), ())))


def test_undeclared_and_inverted_bounds():
    p = Program(("A",), (), (EmpiricalClause(Interval(Fraction(3, 4), Fraction(1, 4)), Atom("C")),))
    vs = validate(p)
    assert any("undeclared predicate C" in v for v in vs)
    assert any("exceeds" in v for v in vs)


def test_predicate_cap():
    names = tuple(f"P{i}" for i in range(5))
    assert validate(Program(names, (), (), max_predicates=4))
    assert not validate(Program(names, (), (), max_predicates=5))


def test_check_raises_with_violations():
    p = Program(("A",), (), (EmpiricalClause(Interval(1, 1), A),))
    with pytest.raises(ProgramError) as err:
        check(p)
    assert len(err.value.violations) == 1


def test_decimals_are_exact():
    assert to_fraction("0.45") == Fraction(9, 20)
    assert to_fraction(0.1) == Fraction(1, 10)
    assert Interval(0.4, 0.45) == Interval(Fraction(2, 5), Fraction(9, 20))


def test_fraction_formatting():
    assert fmt_fraction(Fraction(9, 20)) == "0.45"
    assert fmt_fraction(Fraction(1)) == "1"
    assert fmt_fraction(Fraction(1, 3)) == "1/3"


def test_interval_operations():
    i = Interval(0, Fraction(1, 10)).intersect(Interval(0, Fraction(19, 20)))
    assert i == Interval(0, Fraction(1, 10))
    assert Interval(Fraction(1, 2), Fraction(1, 4)).is_empty
    assert Fraction(1, 20) in i and Fraction(1, 5) not in i


def test_formula_helpers():
    assert negate(Not(A)) == A
    assert conj([]).__class__.__name__ == "Top"
    assert conj([A, B]) == And(A, B)
    assert str(Not(And(A, B))) == "~(A & B)"


def test_program_accessors(elephants):
    assert elephants.k == 4 and elephants.num_partitions == 16
    assert elephants.constants == ("clyde", "jill")
    assert len(elephants.unary_rules) == 2 and len(elephants.ground_clauses) == 2
    assert elephants.index("Elephant") == 2


def test_rule_instantiation():
    rule = ContextClause(Literal("Grey", "X"), (Literal("White", "X", False),))
    assert str(rule.instantiate("clyde")) == "Grey(clyde) :- ~White(clyde)."
