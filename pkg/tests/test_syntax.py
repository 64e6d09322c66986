from fractions import Fraction

import pytest
from hypothesis import given

from conftest import formulas, terms
from fjl.parser import parse_formula
from fjl.syntax import (
    App, FALSUM, GradedAtLeast, GradedExact, Implies, Justified, Neg,
    Prop, StrongConj, Sum, TruthConst, VERUM, Var, WeakConj, expand_sugar,
    is_primitive, print_formula, print_term, term_dag_size,
)

p, q = Prop("p"), Prop("q")
s, t = Var("s"), Var("t")


def test_parse_application_axiom_shape():
    f = parse_formula("s:(p -> q) -> (t:p -> s.t:q)")
    assert f == Implies(
        Justified(s, Implies(p, q)),
        Implies(Justified(t, p), Justified(App(s, t), q)))


def test_parse_falsum_implication():
    assert parse_formula("#0 -> p") == Implies(TruthConst(0), p)


def test_parse_graded_sugar_preserved():
    f = parse_formula("t:{>=2/3}p")
    assert f == GradedAtLeast(Fraction(2, 3), t, p)


def test_print_falsum_implication():
    assert print_formula(Implies(TruthConst(0), p)) == "#0 -> p"


def test_print_sum_justification_binds_tight():
    assert print_formula(Justified(Sum(s, t), p)) == "s+t:p"


def test_print_negated_justification():
    assert print_formula(Neg(Justified(t, TruthConst(0)))) == "~t:#0"


def test_expand_negation():
    assert expand_sugar(Neg(p)) == Implies(p, FALSUM)


def test_expand_graded_at_least():
    f = GradedAtLeast(Fraction(2, 3), t, p)
    assert expand_sugar(f) == Implies(TruthConst(Fraction(2, 3)), Justified(t, p))


def test_expand_graded_exact_through_weak_conjunction():
    # hand expansion: (#1 -> t:p) /\ (t:p -> #1), with X /\ Y as X & (X -> Y)
    f = GradedExact(Fraction(1), t, p)
    x = Implies(VERUM, Justified(t, p))
    y = Implies(Justified(t, p), VERUM)
    assert expand_sugar(f) == StrongConj(x, Implies(x, y))


def test_expand_weak_conjunction():
    assert expand_sugar(WeakConj(p, q)) == StrongConj(p, Implies(p, q))


def test_truth_values_outside_unit_interval_rejected():
    with pytest.raises(ValueError):
        TruthConst(Fraction(3, 2))
    with pytest.raises(ValueError):
        GradedAtLeast(Fraction(-1, 2), t, p)


def test_term_printing_groups_sums_under_application():
    assert print_term(App(Sum(Var("x1"), Var("x2")), t)) == "(x1+x2).t"
    assert print_term(Sum(App(Var("x1"), Var("x2")), t)) == "x1.x2+t"


def test_term_dag_size_counts_shared_subterms_once():
    u = App(s, t)
    assert term_dag_size(App(u, u)) == 4


@given(formulas)
def test_roundtrip(f):
    assert parse_formula(print_formula(f)) == f


@given(terms)
def test_term_roundtrip(u):
    from fjl.parser import parse_term
    assert parse_term(print_term(u)) == u


@given(formulas)
def test_expand_idempotent(f):
    g = expand_sugar(f)
    assert expand_sugar(g) == g


@given(formulas)
def test_expand_is_primitive(f):
    assert is_primitive(expand_sugar(f))
