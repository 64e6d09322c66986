import random
from fractions import Fraction

import pytest

from fjl.generate import SearchBudget, random_derivation
from fjl.lifting import (
    DegreeError, DegreeInterval, degree_interval, internalize, lift,
    provability_degree_lb, truth_degree_ub,
)
from fjl.logics import LogicConfig
from fjl.models import eval_formula, validate_model
from fjl.parser import parse_formula
from fjl.proofs import (
    Ax, Derivation, DerivationBuilder, FiniteCS, Gian, Hyp, MP, ProofError,
    Step, TotalCS, check_derivation,
)
from fjl.syntax import (
    App, Const, GradedExact, Implies, Prop, TruthConst, Var, expand_sugar,
    term_dag_size,
)

RPLJ = LogicConfig.from_name("RPLJ")
p, q = Prop("p"), Prop("q")


def fresh_cs():
    return TotalCS()


def test_lift_single_axiom_becomes_constant():
    cs = fresh_cs()
    body = parse_formula("(p & q) -> p")
    d = Derivation((), (Step(body, Ax("BL2")),))
    term, lifted = lift(d, cs, RPLJ)
    assert isinstance(term, Const)
    assert len(lifted.steps) == 1 and isinstance(lifted.steps[0].rule, Gian)
    assert check_derivation(lifted, RPLJ, cs).ok
    assert lifted.conclusion == expand_sugar(GradedExact(Fraction(1), term, body))


def test_lift_hypothesis_becomes_variable():
    cs = fresh_cs()
    d = Derivation((p,), (Step(p, Hyp(0)),))
    term, lifted = lift(d, cs, RPLJ)
    assert isinstance(term, Var)
    assert lifted.hypotheses == (expand_sugar(GradedExact(Fraction(1), term, p)),)
    assert check_derivation(lifted, RPLJ, cs).ok


def test_lift_modus_ponens_becomes_application():
    cs = fresh_cs()
    d = Derivation(
        (parse_formula("p -> q"), p),
        (Step(parse_formula("p -> q"), Hyp(0)),
         Step(p, Hyp(1)),
         Step(q, MP(1, 0))))
    term, lifted = lift(d, cs, RPLJ)
    assert isinstance(term, App)
    report = check_derivation(lifted, RPLJ, cs)
    assert report.ok, report.summary()
    assert lifted.conclusion == expand_sugar(GradedExact(Fraction(1), term, q))
    assert term_dag_size(term) <= len(d.steps)


def test_lift_fresh_variables_avoid_collisions():
    cs = fresh_cs()
    body = parse_formula("x1:p")
    d = Derivation((body,), (Step(body, Hyp(0)),))
    term, _ = lift(d, cs, RPLJ)
    assert term != Var("x1")


def test_lift_requires_total_cs():
    d = Derivation((), (Step(parse_formula("(p & q) -> p"), Ax("BL2")),))
    with pytest.raises(ProofError):
        lift(d, FiniteCS([]), RPLJ)


def test_lift_requires_graded_system():
    d = Derivation((), (Step(parse_formula("(p & q) -> p"), Ax("BL2")),))
    with pytest.raises(ProofError):
        lift(d, fresh_cs(), LogicConfig.from_name("BLJ"))


def test_lift_rejects_bad_input():
    d = Derivation((), (Step(p, Ax("BL2")),))
    with pytest.raises(ProofError):
        lift(d, fresh_cs(), RPLJ)


def test_internalize_axiom():
    cs = fresh_cs()
    body = parse_formula("#0 -> p")
    d = Derivation((), (Step(body, Ax("BL7")),))
    term, out = internalize(d, cs, RPLJ)
    assert out.conclusion == expand_sugar(GradedExact(Fraction(1), term, body))


def test_internalize_rejects_hypotheses():
    d = Derivation((p,), (Step(p, Hyp(0)),))
    with pytest.raises(ProofError):
        internalize(d, fresh_cs(), RPLJ)


def test_internalize_two_step_proof_gives_application_of_constants():
    cs = fresh_cs()
    b = DerivationBuilder(RPLJ, cs)
    b.th_k(p, q)          # BL2 and BL5b instances joined by modus ponens
    d = b.build()
    term, out = internalize(d, cs, RPLJ)
    assert isinstance(term, App)
    assert check_derivation(out, RPLJ, cs).ok


def test_nested_internalization_uses_specification_closure():
    cs = fresh_cs()
    body = parse_formula("(p & q) -> p")
    d = Derivation((), (Step(body, Ax("BL2")),))
    _, once = internalize(d, cs, RPLJ)
    term, twice = internalize(once, cs, RPLJ)
    assert check_derivation(twice, RPLJ, cs).ok
    assert twice.conclusion == expand_sugar(
        GradedExact(Fraction(1), term, once.conclusion))


def test_lift_fuzzed_derivations_recheck():
    for seed in range(25):
        rng = random.Random(seed)
        cs = fresh_cs()
        d = random_derivation(rng, RPLJ, cs, moves=5)
        assert check_derivation(d, RPLJ, cs).ok
        term, lifted = lift(d, cs, RPLJ)
        report = check_derivation(lifted, RPLJ, cs)
        assert report.ok, f"seed {seed}: {report.summary()}"
        assert lifted.conclusion == expand_sugar(
            GradedExact(Fraction(1), term, d.conclusion))
        assert term_dag_size(term) <= len(d.steps)


# ---------------------------------------------------------------------------
# Degrees

def test_lower_bound_hypothesis_at_grade_one():
    cs = fresh_cs()
    grade, witness = provability_degree_lb([p], p, cs, depth=2, config=RPLJ)
    assert grade == 1
    assert check_derivation(witness, RPLJ, cs).ok
    assert witness.conclusion == Implies(TruthConst(1), p)


def test_lower_bound_empty_theory_falls_back_to_zero():
    cs = fresh_cs()
    grade, witness = provability_degree_lb([], p, cs, depth=2, config=RPLJ)
    assert grade == 0
    assert check_derivation(witness, RPLJ, cs).ok
    assert witness.conclusion == Implies(TruthConst(0), p)


def test_lower_bound_justified_graded_chaining():
    cs = fresh_cs()
    T = [parse_formula("#3/4 -> s:(p -> q)"), parse_formula("#1/2 -> t:p")]
    goal = parse_formula("s.t:q")
    grade, witness = provability_degree_lb(T, goal, cs, depth=3, config=RPLJ)
    assert grade >= Fraction(1, 4)
    report = check_derivation(witness, RPLJ, cs)
    assert report.ok, report.summary()
    assert witness.conclusion == Implies(TruthConst(grade), expand_sugar(goal))


def test_lower_bound_monotone_in_depth():
    cs = fresh_cs()
    T = [parse_formula("#3/4 -> s:(p -> q)"), parse_formula("#1/2 -> t:p")]
    goal = parse_formula("s.t:q")
    grades = [provability_degree_lb(T, goal, fresh_cs(), depth=d, config=RPLJ)[0]
              for d in (0, 1, 2, 4)]
    assert all(a <= b for a, b in zip(grades, grades[1:]))


def test_upper_bound_truth_constant():
    value, witness = truth_degree_ub([], parse_formula("#1/3"), RPLJ, fresh_cs(),
                                     SearchBudget(trials=5))
    assert value == Fraction(1, 3) and witness is not None


def test_upper_bound_free_proposition_hits_zero():
    value, witness = truth_degree_ub([], p, RPLJ, fresh_cs(), SearchBudget(trials=5))
    assert value == 0
    model, world = witness
    assert eval_formula(model, world, p) == 0


def test_upper_bound_axiom_instance_stays_one():
    goal = parse_formula("(p & q) -> p")
    value, witness = truth_degree_ub([], goal, RPLJ, fresh_cs(),
                                     SearchBudget(trials=30))
    assert value == 1 and witness is None


def test_upper_bound_monotone_in_budget():
    T = [parse_formula("#1/2 -> p")]
    goal = parse_formula("p & p")
    small = truth_degree_ub(T, goal, RPLJ, fresh_cs(), SearchBudget(trials=0))[0]
    large = truth_degree_ub(T, goal, RPLJ, fresh_cs(), SearchBudget(trials=30))[0]
    assert large <= small


def test_degree_interval_pins_graded_hypothesis():
    cs = fresh_cs()
    iv = degree_interval([parse_formula("#1/2 -> p")], p, cs,
                         budget=SearchBudget(trials=20), config=RPLJ)
    assert (iv.lower, iv.upper) == (Fraction(1, 2), Fraction(1, 2))
    model, world = iv.upper_witness
    assert validate_model(model, RPLJ, cs, [p]).ok
    assert eval_formula(model, world, p) == Fraction(1, 2)


def test_degree_interval_invariant_guard():
    d = Derivation((), (Step(parse_formula("#0 -> p"), Ax("BL7")),))
    with pytest.raises(DegreeError):
        DegreeInterval(Fraction(2, 3), Fraction(1, 3), d, None)
