from fractions import Fraction

import pytest

from fjl.logics import LogicConfig
from fjl.models import eval_formula
from fjl.parser import parse_formula
from fjl.proofs import (
    Ax, BL_THEOREMS, Derivation, DerivationBuilder, EMPTY_CS, FiniteCS, Gian,
    GRADED_THEOREMS, Hyp, Ian, MP, ProofError, ShapeError, Step, TotalCS,
    build_gmp, build_jgmp, build_mon, check_cs, check_derivation,
    format_derivation, graded_dichotomy, graded_exact_one_equivalence,
    graded_exact_one_unwrap, graded_lower_zero, graded_refute_lower,
    graded_refute_upper, graded_upper_one, graded_weakening, parse_cs,
    parse_derivation, power_formula, theorem_conj_monotone, theorem_exchange,
    theorem_implication_weak_intro, theorem_prelinearity,
    theorem_strong_to_weak, theorem_unit, theorem_weak_projection,
    theorem_weakening,
)
from fjl.syntax import (
    Const, GradedExact, Implies, Prop, StrongConj, TruthConst, Var,
    expand_sugar,
)

RPLJ = LogicConfig.from_name("RPLJ")
BL = LogicConfig.from_name("BL")
BLJ = LogicConfig.from_name("BLJ")
p, q, r = Prop("p"), Prop("q"), Prop("r")
t = Var("t")


def test_checker_accepts_projection_from_hypothesis():
    conj = parse_formula("p & q")
    d = Derivation(
        hypotheses=(conj,),
        steps=(
            Step(conj, Hyp(0)),
            Step(parse_formula("(p & q) -> p"), Ax("BL2")),
            Step(p, MP(0, 1)),
        ))
    report = check_derivation(d, BL, EMPTY_CS)
    assert report.ok and report.conclusion == p


def test_checker_rejects_wrong_mp_shape():
    d = Derivation(
        hypotheses=(p, q),
        steps=(
            Step(p, Hyp(0)),
            Step(q, Hyp(1)),
            Step(r, MP(0, 1)),
        ))
    report = check_derivation(d, BL, EMPTY_CS)
    assert not report.ok and report.step == 2
    assert "implication" in report.reason


def test_checker_rejects_dangling_reference():
    d = Derivation((), (Step(p, MP(0, 1)),))
    report = check_derivation(d, BL, EMPTY_CS)
    assert not report.ok and "earlier" in report.reason


def test_checker_rejects_hypothesis_out_of_range():
    d = Derivation((), (Step(p, Hyp(3)),))
    report = check_derivation(d, BL, EMPTY_CS)
    assert not report.ok and "out of range" in report.reason


def test_checker_rejects_inactive_scheme():
    d = Derivation((), (Step(parse_formula("s:p -> s+t:p"), Ax("Sum1")),))
    assert not check_derivation(d, BL, EMPTY_CS).ok
    assert check_derivation(d, BLJ, EMPTY_CS).ok


def test_checker_rejects_axiom_mismatch():
    d = Derivation((), (Step(parse_formula("p -> p"), Ax("BL2")),))
    report = check_derivation(d, BL, EMPTY_CS)
    assert not report.ok and "not an instance" in report.reason


def test_gian_membership():
    body = parse_formula("(p & q) -> p")
    entry = GradedExact(Fraction(1), Const("c1"), body)
    cs = FiniteCS([entry])
    d = Derivation((), (Step(entry, Gian()),))
    assert check_derivation(d, RPLJ, cs).ok
    other = GradedExact(Fraction(1), Const("c2"), body)
    assert not check_derivation(Derivation((), (Step(other, Gian()),)), RPLJ, cs).ok
    # the same entry written in primitive normal form is also a member
    d2 = Derivation((), (Step(expand_sugar(entry), Gian()),))
    assert check_derivation(d2, RPLJ, cs).ok


def test_ian_and_gian_availability_by_logic():
    body = parse_formula("(p & q) -> p")
    plain_entry = parse_formula("c1:((p & q) -> p)")
    cs_plain = FiniteCS([plain_entry])
    d = Derivation((), (Step(plain_entry, Ian()),))
    assert check_derivation(d, BLJ, cs_plain).ok
    assert not check_derivation(d, RPLJ, cs_plain).ok
    graded_entry = GradedExact(Fraction(1), Const("c1"), body)
    d2 = Derivation((), (Step(graded_entry, Gian()),))
    assert not check_derivation(d2, BLJ, FiniteCS([graded_entry])).ok


def test_check_cs_downward_closure():
    inner = parse_formula("c1:((p & q) -> p)")
    outer = parse_formula("c2:c1:((p & q) -> p)")
    assert not check_cs(FiniteCS([outer]), BLJ).ok
    assert check_cs(FiniteCS([outer, inner]), BLJ).ok


def test_check_cs_body_must_be_axiom_instance():
    report = check_cs(FiniteCS([parse_formula("c1:p")]), BLJ)
    assert not report.ok and "axiom instance" in report.problems[0]


def test_check_cs_graded_chains():
    body = parse_formula("(p & q) -> p")
    inner = GradedExact(Fraction(1), Const("c1"), body)
    outer = GradedExact(Fraction(1), Const("c2"), inner)
    assert not check_cs(FiniteCS([outer]), RPLJ).ok
    assert check_cs(FiniteCS([outer, inner]), RPLJ).ok
    assert check_cs(TotalCS(), RPLJ).ok


def test_total_cs_membership_and_constants():
    cs = TotalCS()
    body = parse_formula("(p & q) -> p")
    entry = GradedExact(Fraction(1), Const("whatever_c"), body)
    assert cs.contains(entry, RPLJ)
    assert not cs.contains(body, RPLJ)
    name1 = cs.constant_for(body)
    assert name1 == cs.constant_for(body)
    assert name1 != cs.constant_for(parse_formula("(q & p) -> q"))
    assert name1.startswith("c")


def test_build_gmp_grades():
    d = build_gmp(parse_formula("#3/4 -> (p -> q)"), parse_formula("#1/2 -> p"))
    assert check_derivation(d, RPLJ, EMPTY_CS).ok
    assert d.conclusion == parse_formula("#1/4 -> q")
    unit = build_gmp(parse_formula("#1 -> (p -> q)"), parse_formula("#1 -> p"))
    assert unit.conclusion == parse_formula("#1 -> q")


def test_build_gmp_shape_mismatch():
    with pytest.raises(ShapeError):
        build_gmp(parse_formula("#3/4 -> (p -> q)"), parse_formula("#1/2 -> r"))
    with pytest.raises(ShapeError):
        build_gmp(parse_formula("p -> q"), parse_formula("#1/2 -> p"))


def test_build_jgmp():
    d = build_jgmp(parse_formula("s:{>=2/3}(p -> q)"), parse_formula("t:{>=2/3}p"))
    assert check_derivation(d, RPLJ, EMPTY_CS).ok
    assert d.conclusion == expand_sugar(parse_formula("s.t:{>=1/3}q"))


def test_build_mon_both_sides():
    base = parse_formula("s:{>=1/2}p")
    right = build_mon(base, "right", t)
    left = build_mon(base, "left", t)
    assert check_derivation(right, RPLJ, EMPTY_CS).ok
    assert right.conclusion == expand_sugar(parse_formula("s+t:{>=1/2}p"))
    assert left.conclusion == expand_sugar(parse_formula("t+s:{>=1/2}p"))


def test_builders_emit_only_primitive_rules():
    d = build_jgmp(parse_formula("s:{>=2/3}(p -> q)"), parse_formula("t:{>=2/3}p"))
    assert all(isinstance(s.rule, (Hyp, Ax, MP, Ian, Gian)) for s in d.steps)


def test_power_formula():
    assert power_formula(p, 1) == p
    assert power_formula(p, 3) == StrongConj(StrongConj(p, p), p)
    with pytest.raises(ValueError):
        power_formula(p, 0)


def test_power_formula_is_square_under_luka():
    from fjl.models import FittingModel
    from fjl.tnorms import TNormKind
    m = FittingModel(worlds=("w",), access=frozenset(),
                     tnorm=TNormKind.LUKASIEWICZ,
                     valuation={("w", "p"): Fraction(3, 4)}, evidence={})
    assert eval_formula(m, "w", power_formula(p, 2)) == Fraction(1, 2)


@pytest.mark.parametrize("key", sorted(BL_THEOREMS))
def test_bl_theorem_derivations_check(key):
    name, fn, arity = BL_THEOREMS[key]
    args = [p, q, r, Prop("u")][:arity]
    d = fn(*args)
    report = check_derivation(d, BL, EMPTY_CS)
    assert report.ok, f"{name}: {report.summary()}"


@pytest.mark.parametrize("key", sorted(GRADED_THEOREMS))
def test_graded_theorem_derivations_check(key):
    name, fn = GRADED_THEOREMS[key]
    if key in (1, 2, 6, 7):
        d = fn(t, p)
    elif key in (3, 4, 8):
        d = fn(t, p, Fraction(1, 3))
    else:
        d = fn(t, p, Fraction(1, 3), Fraction(2, 3))
    report = check_derivation(d, RPLJ, TotalCS())
    assert report.ok, f"{name}: {report.summary()}"


def test_graded_weakening_rejects_inverted_grades():
    with pytest.raises(ShapeError):
        graded_weakening(t, p, Fraction(2, 3), Fraction(1, 3))


def test_theorem_conclusions_have_the_documented_shapes():
    from fjl.syntax import Neg, WeakConj, WeakDisj, Equiv, GradedAtLeast, GradedAtMost, Justified
    assert theorem_unit().conclusion == expand_sugar(Neg(TruthConst(0)))
    assert theorem_weakening(p, q).conclusion == Implies(p, Implies(q, p))
    assert theorem_strong_to_weak(p, q).conclusion == \
        expand_sugar(Implies(StrongConj(p, q), WeakConj(p, q)))
    assert theorem_weak_projection(p, q).conclusion == \
        expand_sugar(Implies(WeakConj(p, q), p))
    assert theorem_implication_weak_intro(p, q).conclusion == \
        expand_sugar(Implies(Implies(p, q), Implies(p, WeakConj(p, q))))
    assert theorem_prelinearity(p, q).conclusion == \
        expand_sugar(WeakDisj(Implies(p, q), Implies(q, p)))
    assert graded_upper_one(t, p).conclusion == \
        expand_sugar(GradedAtMost(Fraction(1), t, p))
    assert graded_exact_one_equivalence(t, p).conclusion == \
        expand_sugar(Equiv(GradedAtLeast(Fraction(1), t, p),
                           GradedExact(Fraction(1), t, p)))
    assert graded_exact_one_unwrap(t, p).conclusion == \
        expand_sugar(Implies(GradedExact(Fraction(1), t, p), Justified(t, p)))
    assert graded_dichotomy(t, p, Fraction(1, 2)).conclusion == \
        expand_sugar(WeakDisj(GradedAtLeast(Fraction(1, 2), t, p),
                              GradedAtMost(Fraction(1, 2), t, p)))


def test_closed_theorems_are_semantically_valid():
    # checker soundness spot-check: closed conclusions take value 1
    from fjl.generate import ModelParams, random_model
    cs = TotalCS()
    conclusions = [
        theorem_exchange(p, q, r).conclusion,
        theorem_conj_monotone(p, q, r, Prop("u")).conclusion,
        graded_refute_upper(t, p, Fraction(1, 3)).conclusion,
        graded_refute_lower(t, p, Fraction(2, 3)).conclusion,
        graded_lower_zero(t, p).conclusion,
    ]
    for seed in range(30):
        m = random_model(seed, ModelParams(), RPLJ, cs)
        for f in conclusions:
            for w in m.worlds:
                assert eval_formula(m, w, f) == 1


def test_derivation_file_roundtrip():
    d = build_gmp(parse_formula("#3/4 -> (p -> q)"), parse_formula("#1/2 -> p"))
    text = format_derivation(d)
    back = parse_derivation(text, RPLJ)
    assert check_derivation(back, RPLJ, EMPTY_CS).ok
    assert back.conclusion == d.conclusion
    assert format_derivation(back) == text


def test_derivation_file_errors():
    with pytest.raises(ProofError):
        parse_derivation("STEP 2 p BY AX BL2\n")
    with pytest.raises(ProofError):
        parse_derivation("STEP 1 p BY NONSENSE\n")
    with pytest.raises(ProofError):
        parse_derivation("STEP 1 p BY AX BL2\nHYP q\n")


def test_cs_file_parsing():
    cs = parse_cs("# comment\nc1:((p & q) -> p)\n\n", BLJ)
    assert check_cs(cs, BLJ).ok
    assert cs.covers("c1", expand_sugar(parse_formula("(p & q) -> p")), BLJ)


def test_builder_rejects_bad_axiom():
    b = DerivationBuilder(BL, EMPTY_CS)
    with pytest.raises(ProofError):
        b.axiom("BL2", parse_formula("p -> p"))


def test_checker_soundness_on_fuzzed_closed_derivations():
    # accepted closed derivations have conclusions valid in every
    # generated valid model of the same logic and specification
    import random
    from fjl.generate import ModelParams, random_derivation, random_model
    for seed in range(15):
        cs = TotalCS()
        d = random_derivation(random.Random(seed), RPLJ, cs,
                              moves=4, max_hypotheses=0)
        assert check_derivation(d, RPLJ, cs).ok
        goal = expand_sugar(d.conclusion)
        for model_seed in range(5):
            m = random_model(1000 + seed * 10 + model_seed, ModelParams(), RPLJ, cs)
            from fjl.models import validate_model
            assert validate_model(m, RPLJ, cs, [goal]).ok
            for w in m.worlds:
                assert eval_formula(m, w, goal) == 1


def test_total_cs_assignment_is_thread_consistent():
    import threading
    cs = TotalCS()
    body = parse_formula("(p & q) -> p")
    seen = []

    def worker():
        seen.append(cs.constant_for(body))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    assert len(set(seen)) == 1
