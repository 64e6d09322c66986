"""Named, seeded property suites: every headline fact the workbench
relies on, packaged as a reproducible check.

Each suite returns a :class:`SuiteReport` that is bit-for-bit
deterministic for a fixed seed and configuration.  The registry at the
bottom is what the command line exposes.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .generate import (
    ModelParams, SearchBudget, find_countermodel, random_derivation,
    random_formula, random_model, random_scheme_instance, random_term,
)
from .lifting import degree_interval, lift
from .logics import LogicConfig, active_schemes
from .models import (
    FittingModel, crisp_eval, embed_rpl_valuation, eval_formula, eval_mkrtychev,
    validate_model,
)
from .parser import parse_formula
from .proofs import (
    EMPTY_CS, TotalCS, check_derivation, graded_dichotomy,
    graded_exact_one_equivalence, graded_exact_one_unwrap, graded_lower_zero,
    graded_refute_lower, graded_refute_upper, graded_upper_one,
    graded_weakening, theorem_conj_monotone, theorem_exchange,
    theorem_implication_weak_intro, theorem_prelinearity,
    theorem_strong_to_weak, theorem_unit, theorem_weak_projection,
    theorem_weakening,
)
from .syntax import (
    App, Formula, GradedAtLeast, GradedAtMost, GradedExact, Implies,
    Justified, ONE, Prop, StrongConj, Sum, TruthConst, ZERO, expand_sugar,
    justified_pairs, print_formula, term_dag_size,
)
from .tnorms import (
    TNormKind, check_adjunction, residuum_apply, tnorm_apply, unit_rationals,
)


@dataclass
class SuiteFailure:
    case: str
    message: str

    def __str__(self) -> str:
        return f"{self.case}: {self.message}"


@dataclass
class SuiteReport:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, case: str, message: str) -> None:
        self.failures.append(SuiteFailure(case, message))

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)})"
        head = f"suite {self.name}: {self.cases} cases, {status}, {self.seconds:.2f}s"
        tail = [f"  {f}" for f in self.failures[:20]]
        if len(self.failures) > 20:
            tail.append(f"  ... {len(self.failures) - 20} more")
        return "\n".join([head] + tail)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "ok": self.ok,
            "failures": [{"case": f.case, "message": f.message} for f in self.failures],
            "seconds": round(self.seconds, 3),
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report
    return wrapper


_RPLJ = LogicConfig.from_name("RPLJ")
_BLJ = LogicConfig.from_name("BLJ")


# ---------------------------------------------------------------------------
# Algebra suites

@_timed
def adjunction_suite(bound: int = 8, **_) -> SuiteReport:
    """x*z <= y iff z <= (x => y), exhaustively on the rational grid."""
    report = SuiteReport(f"adjunction(den<={bound})")
    for kind in TNormKind:
        grid = check_adjunction(kind, bound)
        report.cases += grid.triples
        for (x, y, z) in grid.violations:
            report.fail(f"{kind.code}", f"x={x} y={y} z={z}")
    return report


@_timed
def tnorm_laws_suite(bound: int = 6, **_) -> SuiteReport:
    """Commutativity, associativity, monotonicity and the unit, exactly."""
    report = SuiteReport(f"tnorm-laws(den<={bound})")
    grid = unit_rationals(bound)
    for kind in TNormKind:
        for x in grid:
            report.cases += 1
            if tnorm_apply(kind, ONE, x) != x:
                report.fail(kind.code, f"1 * {x} != {x}")
            for y in grid:
                report.cases += 1
                if tnorm_apply(kind, x, y) != tnorm_apply(kind, y, x):
                    report.fail(kind.code, f"commutativity at {x}, {y}")
        for x, y, z in itertools.product(grid, repeat=3):
            report.cases += 1
            left = tnorm_apply(kind, tnorm_apply(kind, x, y), z)
            right = tnorm_apply(kind, x, tnorm_apply(kind, y, z))
            if left != right:
                report.fail(kind.code, f"associativity at {x}, {y}, {z}")
            if x <= y and tnorm_apply(kind, x, z) > tnorm_apply(kind, y, z):
                report.fail(kind.code, f"monotonicity at {x} <= {y}, {z}")
    return report


@_timed
def residuum_monotonicity_suite(bound: int = 8, **_) -> SuiteReport:
    """The Lukasiewicz implication is antitone left, monotone right, and
    multiplicative across products."""
    report = SuiteReport(f"residuum-monotonicity(den<={bound})")
    kind = TNormKind.LUKASIEWICZ
    grid = unit_rationals(bound)
    for x, x2, y in itertools.product(grid, repeat=3):
        report.cases += 1
        if x2 <= x and residuum_apply(kind, x, y) > residuum_apply(kind, x2, y):
            report.fail("antitone-left", f"x'={x2} x={x} y={y}")
        if x <= x2 and residuum_apply(kind, y, x) > residuum_apply(kind, y, x2):
            report.fail("monotone-right", f"y={y} x={x} x'={x2}")
    for x, x2, y, y2 in itertools.product(grid, repeat=4):
        report.cases += 1
        left = tnorm_apply(kind, residuum_apply(kind, x, x2), residuum_apply(kind, y, y2))
        right = residuum_apply(kind, tnorm_apply(kind, x, y), tnorm_apply(kind, x2, y2))
        if left > right:
            report.fail("product-transfer", f"x={x} x'={x2} y={y} y'={y2}")
    return report


# ---------------------------------------------------------------------------
# Derivation suites

def _bl_theorem_instances(rng: random.Random) -> list:
    """One random instantiation of each stock theorem, with its derivation."""
    args = [random_formula(rng, _BLJ, 2) for _ in range(4)]
    a, b, c, d = args
    return [
        ("unit", theorem_unit()),
        ("weakening", theorem_weakening(a, b)),
        ("strong-to-weak", theorem_strong_to_weak(a, b)),
        ("weak-projection", theorem_weak_projection(a, b)),
        ("implication-weak-intro", theorem_implication_weak_intro(a, b)),
        ("exchange", theorem_exchange(a, b, c)),
        ("conj-monotone", theorem_conj_monotone(a, b, c, d)),
        ("prelinearity", theorem_prelinearity(a, b)),
    ]


def _graded_theorem_instances(rng: random.Random) -> list:
    t = random_term(rng, 1)
    a = random_formula(rng, _RPLJ, 2)
    r = Fraction(rng.randint(0, 6), 6)
    r2 = Fraction(rng.randint(0, 6), 6)
    low, high = min(r, r2), max(r, r2)
    return [
        ("upper-one", graded_upper_one(t, a)),
        ("lower-zero", graded_lower_zero(t, a)),
        ("refute-upper", graded_refute_upper(t, a, r)),
        ("refute-lower", graded_refute_lower(t, a, r)),
        ("grade-weakening", graded_weakening(t, a, low, high)),
        ("exact-one-equivalence", graded_exact_one_equivalence(t, a)),
        ("exact-one-unwrap", graded_exact_one_unwrap(t, a)),
        ("grade-dichotomy", graded_dichotomy(t, a, r)),
    ]


def _theorem_suite(name: str, config: LogicConfig, instances_fn,
                   count: int, seed: int) -> SuiteReport:
    report = SuiteReport(name)
    cs = TotalCS()
    for k in range(count):
        rng = random.Random(seed + k)
        instances = instances_fn(rng)
        model = random_model(seed + k, ModelParams(), config, cs)
        conclusions = []
        for label, derivation in instances:
            report.cases += 1
            check = check_derivation(derivation, config, cs)
            if not check.ok:
                report.fail(f"{label}@{seed + k}", check.summary())
                continue
            conclusions.append((label, expand_sugar(derivation.conclusion)))
        goals = [c for _, c in conclusions]
        if not validate_model(model, config, cs, goals).ok:
            report.fail(f"model@{seed + k}", "generated model failed validation")
            continue
        for label, conclusion in conclusions:
            for w in model.worlds:
                if eval_formula(model, w, conclusion) != ONE:
                    report.fail(f"{label}@{seed + k}",
                                f"value < 1 at {w}: {print_formula(conclusion)}")
    return report


@_timed
def bl_theorems_suite(count: int = 50, seed: int = 0, **_) -> SuiteReport:
    return _theorem_suite("bl-theorems", _BLJ, _bl_theorem_instances, count, seed)


@_timed
def graded_theorems_suite(count: int = 50, seed: int = 0, **_) -> SuiteReport:
    return _theorem_suite("graded-theorems", _RPLJ, _graded_theorem_instances, count, seed)


@_timed
def lift_suite(count: int = 50, seed: int = 0, moves: int = 6, **_) -> SuiteReport:
    """Fuzzed accepted derivations lift, re-check and stay small."""
    report = SuiteReport("lift")
    for k in range(count):
        report.cases += 1
        rng = random.Random(seed + k)
        cs = TotalCS()
        d = random_derivation(rng, _RPLJ, cs, moves=moves)
        if not check_derivation(d, _RPLJ, cs).ok:
            report.fail(f"seed {seed + k}", "fuzzed input derivation rejected")
            continue
        term, lifted = lift(d, cs, _RPLJ)
        check = check_derivation(lifted, _RPLJ, cs)
        if not check.ok:
            report.fail(f"seed {seed + k}", f"lift output rejected: {check.summary()}")
            continue
        expected = expand_sugar(GradedExact(ONE, term, d.conclusion))
        if expand_sugar(lifted.conclusion) != expected:
            report.fail(f"seed {seed + k}", "lift conclusion has the wrong shape")
        if term_dag_size(term) > len(d.steps):
            report.fail(f"seed {seed + k}",
                        f"term has {term_dag_size(term)} nodes for {len(d.steps)} steps")
    return report


# ---------------------------------------------------------------------------
# Semantic suites

_SOUNDNESS_BATTERIES: tuple = (
    ("BLJ", TNormKind.LUKASIEWICZ),
    ("BLJ", TNormKind.GOEDEL),
    ("BLJ", TNormKind.PRODUCT),
    ("LJ", None),
    ("GJ", None),
    ("PiJ", None),
    ("RPLJ", None),
)


@_timed
def soundness_suite(count: int = 60, seed: int = 0,
                    logic: Optional[str] = None,
                    tnorm: Optional[TNormKind] = None, **_) -> SuiteReport:
    """Every active axiom instance takes value 1 in every generated valid
    model; modus ponens preserves value 1."""
    if logic is None:
        batteries = _SOUNDNESS_BATTERIES
    else:
        batteries = ((logic, tnorm),)
    label = "soundness" if logic is None else f"soundness({logic})"
    report = SuiteReport(label)
    for logic_name, kind in batteries:
        config = LogicConfig.from_name(logic_name)
        cs = TotalCS()
        params = ModelParams(tnorm=kind)
        schemes = active_schemes(config)
        for k in range(count):
            rng = random.Random(seed + k)
            model = random_model(seed + k, params, config, cs)
            instances = [(scheme.name,
                          expand_sugar(random_scheme_instance(rng, scheme, config, 2)))
                         for scheme in schemes]
            goals = [inst for _, inst in instances]
            if not validate_model(model, config, cs, goals).ok:
                report.fail(f"{logic_name}/{kind}@{seed + k}",
                            "generated model failed validation")
                continue
            for name, inst in instances:
                report.cases += 1
                for w in model.worlds:
                    value = eval_formula(model, w, inst)
                    if value != ONE:
                        report.fail(f"{logic_name}/{name}@{seed + k}",
                                    f"axiom instance {print_formula(inst)} = {value} at {w}")
            # modus ponens preservation on sampled premises
            report.cases += 1
            a = expand_sugar(random_formula(rng, config, 2))
            b = expand_sugar(random_formula(rng, config, 2))
            for w in model.worlds:
                if (eval_formula(model, w, a) == ONE
                        and eval_formula(model, w, Implies(a, b)) == ONE
                        and eval_formula(model, w, b) != ONE):
                    report.fail(f"{logic_name}/MP@{seed + k}", f"not preserved at {w}")
    return report


@_timed
def graded_semantics_suite(count: int = 100, seed: int = 0, **_) -> SuiteReport:
    """t:{>=r}A, t:{<=r}A and t:{==r}A take value 1 exactly at the
    threshold relations on the value of t:A."""
    report = SuiteReport("graded-semantics")
    cs = TotalCS()
    for k in range(count):
        rng = random.Random(seed + k)
        model = random_model(seed + k, ModelParams(), _RPLJ, cs)
        t = random_term(rng, 1)
        a = random_formula(rng, _RPLJ, 2)
        r = Fraction(rng.randint(0, 8), 8)
        forms = (GradedAtLeast(r, t, a), GradedAtMost(r, t, a), GradedExact(r, t, a))
        goals = [expand_sugar(f) for f in forms] + [expand_sugar(Justified(t, a))]
        if not validate_model(model, _RPLJ, cs, goals).ok:
            report.fail(f"seed {seed + k}", "generated model failed validation")
            continue
        for w in model.worlds:
            report.cases += 1
            value = eval_formula(model, w, Justified(t, a))
            relations = (value >= r, value <= r, value == r)
            for form, expected in zip(forms, relations):
                holds = eval_formula(model, w, form) == ONE
                if holds != expected:
                    report.fail(f"seed {seed + k}",
                                f"{print_formula(form)} mismatch at {w}: "
                                f"value(t:A)={value}")
    return report


def _uncertainty_principles(rng: random.Random) -> list:
    s, t = random_term(rng, 1), random_term(rng, 1)
    a = random_formula(rng, _RPLJ, 1)
    b = random_formula(rng, _RPLJ, 1)
    r = Fraction(rng.randint(0, 6), 6)
    r2 = Fraction(rng.randint(0, 6), 6)
    low, high = min(r, r2), max(r, r2)
    from .tnorms import luka_tnorm
    return [
        ("application", Implies(
            GradedAtLeast(r, s, Implies(a, b)),
            Implies(GradedAtLeast(r2, t, a),
                    GradedAtLeast(luka_tnorm(r, r2), App(s, t), b)))),
        ("sum-right", Implies(GradedAtLeast(r, s, a),
                              GradedAtLeast(r, Sum(s, t), a))),
        ("sum-left", Implies(GradedAtLeast(r, s, a),
                             GradedAtLeast(r, Sum(t, s), a))),
        ("grade-weakening", Implies(GradedAtLeast(high, t, a),
                                    GradedAtLeast(low, t, a))),
    ]


@_timed
def uncertainty_suite(count: int = 100, seed: int = 0, **_) -> SuiteReport:
    """The uncertain-justification principles hold in every valid model
    of the graded system."""
    report = SuiteReport("uncertainty")
    cs = TotalCS()
    for k in range(count):
        rng = random.Random(seed + k)
        model = random_model(seed + k, ModelParams(), _RPLJ, cs)
        principles = [(n, expand_sugar(f)) for n, f in _uncertainty_principles(rng)]
        goals = [f for _, f in principles]
        if not validate_model(model, _RPLJ, cs, goals).ok:
            report.fail(f"seed {seed + k}", "generated model failed validation")
            continue
        for name, f in principles:
            report.cases += 1
            for w in model.worlds:
                value = eval_formula(model, w, f)
                if value != ONE:
                    report.fail(f"{name}@{seed + k}",
                                f"{print_formula(f)} = {value} at {w}")
    return report


@_timed
def frames_suite(count: int = 60, seed: int = 0, **_) -> SuiteReport:
    """Factivity holds on reflexive models, consistency on serial ones,
    and countermodels exist once the frame property is dropped."""
    report = SuiteReport("frames")
    cs = TotalCS()
    jt_config = LogicConfig.from_name("RPLJ", extras=("jT",))
    jd_config = LogicConfig.from_name("RPLJ", extras=("jD",))
    for k in range(count):
        rng = random.Random(seed + k)
        t = random_term(rng, 1)
        a = random_formula(rng, _RPLJ, 2)
        jt = expand_sugar(Implies(Justified(t, a), a))
        model = random_model(seed + k, ModelParams(frame="reflexive"), jt_config, cs)
        report.cases += 1
        if not validate_model(model, jt_config, cs, [jt]).ok:
            report.fail(f"jT@{seed + k}", "reflexive model failed validation")
        else:
            for w in model.worlds:
                value = eval_formula(model, w, jt)
                if value != ONE:
                    report.fail(f"jT@{seed + k}", f"factivity = {value} at {w}")
        jd = expand_sugar(parse_formula("~t:#0"))
        model = random_model(10_000 + seed + k, ModelParams(frame="serial"), jd_config, cs)
        report.cases += 1
        if not validate_model(model, jd_config, cs, [jd]).ok:
            report.fail(f"jD@{seed + k}", "serial model failed validation")
        else:
            for w in model.worlds:
                value = eval_formula(model, w, jd)
                if value != ONE:
                    report.fail(f"jD@{seed + k}", f"consistency = {value} at {w}")
    # dropping the frame property admits countermodels
    budget = SearchBudget(max_worlds=3, max_denominator=12, trials=300, seed=seed)
    for label, text in (("jT", "t:p -> p"), ("jD", "~t:#0")):
        report.cases += 1
        hit = find_countermodel(parse_formula(text), _RPLJ, EMPTY_CS, budget)
        if hit is None:
            report.fail(f"{label}-countermodel", "no countermodel within budget")
        else:
            model, w = hit
            value = eval_formula(model, w, parse_formula(text))
            if value >= ONE:
                report.fail(f"{label}-countermodel", "witness does not refute")
    return report


@_timed
def crisp_suite(**_) -> SuiteReport:
    """On Boolean models the fuzzy clauses agree with the classical ones
    for every t-norm, exhaustively over frames, valuations and evidence."""
    report = SuiteReport("crisp")
    formulas = [parse_formula(text) for text in (
        "p", "q", "#0", "#1", "~p",
        "p -> q", "p -> (q -> p)", "(p -> q) -> p",
        "x1:p", "c1:q", "x1:(p -> q)", "x1:p -> p", "~x1:#0",
        "x1:c1:p", "x1:(p -> q) -> (x1:p -> q)", "x1:~p",
        "#0 -> x1:p", "(p -> #0) -> (x1:q -> q)",
    )]
    props = ("p", "q")
    for f in formulas:
        g = expand_sugar(f)
        pairs = sorted(justified_pairs(g), key=str)
        for n_worlds in (1, 2):
            worlds = tuple(f"w{i}" for i in range(n_worlds))
            world_pairs = [(a, b) for a in worlds for b in worlds]
            prop_slots = [(w, p) for w in worlds for p in props]
            evid_slots = [(w, t, a) for w in worlds for (t, a) in pairs]
            for frame_bits in itertools.product((False, True), repeat=len(world_pairs)):
                access = frozenset(pair for pair, bit in zip(world_pairs, frame_bits) if bit)
                for val_bits in itertools.product((ZERO, ONE), repeat=len(prop_slots)):
                    valuation = dict(zip(prop_slots, val_bits))
                    for ev_bits in itertools.product((ZERO, ONE), repeat=len(evid_slots)):
                        evidence = dict(zip(evid_slots, ev_bits))
                        for kind in TNormKind:
                            model = FittingModel(
                                worlds=worlds, access=access, tnorm=kind,
                                valuation=valuation, evidence=evidence)
                            for w in worlds:
                                report.cases += 1
                                fuzzy = eval_formula(model, w, g)
                                classical = crisp_eval(model, w, g)
                                if fuzzy != classical:
                                    report.fail(print_formula(f),
                                                f"{w}: fuzzy {fuzzy} vs crisp {classical}")
    return report


def _direct_luka_value(f: Formula, valuation: dict) -> Fraction:
    """Independent evaluator for justification-free formulas."""
    if isinstance(f, TruthConst):
        return f.value
    if isinstance(f, Prop):
        return valuation.get(f.name, ZERO)
    if isinstance(f, Implies):
        a = _direct_luka_value(f.left, valuation)
        b = _direct_luka_value(f.right, valuation)
        return ONE if a <= b else ONE - a + b
    if isinstance(f, StrongConj):
        a = _direct_luka_value(f.left, valuation)
        b = _direct_luka_value(f.right, valuation)
        return max(ZERO, a + b - 1)
    raise ValueError(f"not justification-free: {f!r}")


@_timed
def conservativity_suite(count: int = 200, seed: int = 0, **_) -> SuiteReport:
    """Embedding a plain Pavelka valuation into a one-point model with
    constant evidence preserves every justification-free value, and
    justified formulas all take value 1 there."""
    report = SuiteReport("conservativity")
    rpl = LogicConfig.from_name("RPL")
    for k in range(count):
        report.cases += 1
        rng = random.Random(seed + k)
        valuation = {p: Fraction(rng.randint(0, 8), 8) for p in ("p", "q", "r")}
        f = expand_sugar(random_formula(rng, rpl, 3))
        model = embed_rpl_valuation(valuation)
        expected = _direct_luka_value(f, valuation)
        got = eval_mkrtychev(model, f)
        if got != expected:
            report.fail(f"seed {seed + k}",
                        f"{print_formula(f)}: embedded {got} vs direct {expected}")
        justified = Justified(random_term(rng, 2), f)
        if eval_mkrtychev(model, justified) != ONE:
            report.fail(f"seed {seed + k}", "justified formula not constant 1")
    return report


# ---------------------------------------------------------------------------
# Degrees

@dataclass(frozen=True)
class DegreeCase:
    hypotheses: tuple
    goal: str
    exact: Optional[Fraction] = None


DEGREE_CORPUS: tuple = (
    # ten constructions whose degree is pinned down by hand
    DegreeCase(("#1/2 -> p",), "p", Fraction(1, 2)),
    DegreeCase((), "p", Fraction(0)),
    DegreeCase((), "(p & q) -> (q & p)", Fraction(1)),
    DegreeCase(("#2/3 -> p", "#3/4 -> q"), "p & q", Fraction(5, 12)),
    DegreeCase(("#1/2 -> t:p",), "t:p", Fraction(1, 2)),
    DegreeCase(("#3/4 -> s:(p -> q)", "#1/2 -> t:p"), "s.t:q", Fraction(1, 4)),
    DegreeCase((), "#1/3", Fraction(1, 3)),
    DegreeCase(("p",), "p", Fraction(1)),
    DegreeCase(("#1/2 -> p",), "p & p", Fraction(0)),
    DegreeCase(("t:p",), "p", Fraction(0)),
    # sandwich-only battery
    DegreeCase(("p -> q", "p"), "q"),
    DegreeCase(("#1/2 -> s:p",), "s+t:p"),
    DegreeCase(("#2/3 -> s:(p -> q)",), "t:p -> s.t:q"),
    DegreeCase(("q",), "p -> q"),
    DegreeCase(("#1/2 -> p", "#1/3 -> q"), "p /\\ q"),
    DegreeCase(("s:(p -> q)", "t:p"), "s.t:q"),
    DegreeCase(("#3/4 -> x1:p",), "x1+x2:{>=3/4}p"),
    DegreeCase(("c1:{==1}((p & q) -> p)",), "c1:((p & q) -> p)"),
    DegreeCase(("#5/6 -> t:p", "p"), "t:p & p"),
    DegreeCase(("~p",), "p"),
    DegreeCase(("#1/2 -> p",), "~p"),
    DegreeCase(("p \\/ q",), "q"),
    DegreeCase(("t:{>=1/2}p", "s:{>=1/2}(p -> q)"), "s.t:{>=0}q"),
    DegreeCase((), "(#1/2 & #2/3) == #1/6"),
    DegreeCase((), "t:{<=1}p"),
    DegreeCase(("#1/4 -> x1:(p -> p)",), "x1:{>=1/4}(p -> p)"),
    DegreeCase(("#2/3 -> t:#0",), "~t:#0"),
    DegreeCase(("p -> #1/2", "p"), "q"),
    DegreeCase(("x1:p", "x2:q"), "x1:p /\\ x2:q"),
    DegreeCase(("#11/12 -> p",), "p & p"),
)


@_timed
def degrees_suite(depth: int = 4, trials: int = 40, seed: int = 0, **_) -> SuiteReport:
    """Certified lower <= upper on the whole corpus, exact on the
    hand-constructed cases; every witness is independently re-verified."""
    report = SuiteReport("degrees")
    budget = SearchBudget(trials=trials, seed=seed)
    for idx, case in enumerate(DEGREE_CORPUS):
        report.cases += 1
        cs = TotalCS()
        hyps = [parse_formula(h, _RPLJ) for h in case.hypotheses]
        goal = parse_formula(case.goal, _RPLJ)
        label = f"case {idx + 1} ({' ; '.join(case.hypotheses) or 'empty'} |- {case.goal})"
        try:
            interval = degree_interval(hyps, goal, cs, depth=depth,
                                       budget=budget, config=_RPLJ)
        except Exception as exc:      # a raised sandwich violation is a failure
            report.fail(label, f"{type(exc).__name__}: {exc}")
            continue
        check = check_derivation(interval.lower_witness, _RPLJ, cs)
        if not check.ok:
            report.fail(label, f"lower witness rejected: {check.summary()}")
        expected_conclusion = Implies(TruthConst(interval.lower), expand_sugar(goal))
        if expand_sugar(interval.lower_witness.conclusion) != expected_conclusion:
            report.fail(label, "lower witness concludes the wrong formula")
        if interval.upper_witness is not None:
            model, world = interval.upper_witness
            if eval_formula(model, world, goal) != interval.upper:
                report.fail(label, "upper witness value mismatch")
            if not validate_model(model, _RPLJ, cs, hyps + [goal]).ok:
                report.fail(label, "upper witness model invalid")
        if case.exact is not None:
            if interval.lower != case.exact or interval.upper != case.exact:
                report.fail(label, f"expected exactly {case.exact}, "
                                   f"got [{interval.lower}, {interval.upper}]")
    return report


# ---------------------------------------------------------------------------
# Registry

SUITES: dict = {
    "adjunction": adjunction_suite,
    "tnorm-laws": tnorm_laws_suite,
    "residuum-monotonicity": residuum_monotonicity_suite,
    "bl-theorems": bl_theorems_suite,
    "graded-theorems": graded_theorems_suite,
    "graded-semantics": graded_semantics_suite,
    "soundness": soundness_suite,
    "uncertainty": uncertainty_suite,
    "frames": frames_suite,
    "crisp": crisp_suite,
    "conservativity": conservativity_suite,
    "lift": lift_suite,
    "degrees": degrees_suite,
}


def run_suite(name: str, **kwargs) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name](**kwargs)
