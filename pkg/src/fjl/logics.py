"""Logic configurations and axiom-scheme matching.

A :class:`LogicConfig` picks a fuzzy base (BL, Lukasiewicz, Goedel,
product or rational Pavelka), optionally adds the justification axioms
(application and sum), the factivity/consistency extras jT and jD, and
a crisp mode that restricts semantics to Boolean values and extends the
axioms to the classical span.

Schemes are first-order patterns over the primitive connectives with
formula, term and rational metavariables.  The two bookkeeping schemes
for truth constants carry a side computation that pins the computed
constant (the Lukasiewicz residuum or t-norm of the matched grades).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .syntax import (
    App, Const, FALSUM, Formula, Implies, Justified, Prop, StrongConj, Sum,
    Term, TruthConst, Var, expand_sugar,
)
from .tnorms import TNormKind, luka_residuum, luka_tnorm


class Base(Enum):
    BL = "BL"
    L = "L"
    G = "G"
    PI = "Pi"
    RPL = "RPL"


_EXTRAS = ("jT", "jD")


@dataclass(frozen=True)
class LogicConfig:
    base: Base = Base.RPL
    justified: bool = True
    extras: frozenset = frozenset()
    crisp: bool = False

    def __post_init__(self):
        bad = set(self.extras) - set(_EXTRAS)
        if bad:
            raise ValueError(f"unknown extras {sorted(bad)}; supported: {_EXTRAS}")
        object.__setattr__(self, "extras", frozenset(self.extras))

    @property
    def has_truth_constants(self) -> bool:
        return self.base is Base.RPL

    @property
    def graded_necessitation(self) -> bool:
        """RPLJ introduces constants by GIAN, the other systems by IAN."""
        return self.justified and self.base is Base.RPL

    def tnorm_kinds(self) -> tuple[TNormKind, ...]:
        if self.base is Base.BL:
            return (TNormKind.LUKASIEWICZ, TNormKind.GOEDEL, TNormKind.PRODUCT)
        if self.base in (Base.L, Base.RPL):
            return (TNormKind.LUKASIEWICZ,)
        if self.base is Base.G:
            return (TNormKind.GOEDEL,)
        return (TNormKind.PRODUCT,)

    @property
    def name(self) -> str:
        stem = self.base.value + ("J" if self.justified else "")
        marks = "".join(f"+{e}" for e in sorted(self.extras))
        return ("crisp " if self.crisp else "") + stem + marks

    @staticmethod
    def from_name(name: str, extras=(), crisp: bool = False) -> "LogicConfig":
        """Resolve names like BL, BLJ, L, LJ, G, GJ, Pi, PiJ, RPL, RPLJ or J."""
        text = name.strip()
        if text == "J":
            # classical justification logic: crisp semantics over the
            # BL axioms extended with both the involution and
            # idempotence schemes, which together span classical logic
            return LogicConfig(Base.BL, justified=True, extras=frozenset(extras), crisp=True)
        justified = text.endswith("J") and text != "J"
        stem = text[:-1] if justified else text
        for base in Base:
            if stem.lower() == base.value.lower():
                return LogicConfig(base, justified=justified,
                                   extras=frozenset(extras), crisp=crisp)
        raise ValueError(f"unknown logic name {name!r}")


# ---------------------------------------------------------------------------
# Scheme patterns

@dataclass(frozen=True)
class FMeta:
    """Formula metavariable."""
    name: str


@dataclass(frozen=True)
class TMeta:
    """Term metavariable."""
    name: str


@dataclass(frozen=True)
class RMeta:
    """Rational metavariable, standing in a truth-constant position."""
    name: str


class MatchFailure(Exception):
    pass


def _match_term(pattern, term: Term, binding: dict) -> None:
    if isinstance(pattern, TMeta):
        seen = binding.get(pattern.name)
        if seen is None:
            binding[pattern.name] = term
        elif seen != term:
            raise MatchFailure
        return
    if isinstance(pattern, (Var, Const)):
        if pattern != term:
            raise MatchFailure
        return
    if type(pattern) is not type(term):
        raise MatchFailure
    _match_term(pattern.left, term.left, binding)
    _match_term(pattern.right, term.right, binding)


def _match_formula(pattern, f: Formula, binding: dict) -> None:
    if isinstance(pattern, FMeta):
        seen = binding.get(pattern.name)
        if seen is None:
            binding[pattern.name] = f
        elif seen != f:
            raise MatchFailure
        return
    if isinstance(pattern, RMeta):
        if not isinstance(f, TruthConst):
            raise MatchFailure
        seen = binding.get(pattern.name)
        if seen is None:
            binding[pattern.name] = f.value
        elif seen != f.value:
            raise MatchFailure
        return
    if isinstance(pattern, (Prop, TruthConst)):
        if pattern != f:
            raise MatchFailure
        return
    if type(pattern) is not type(f):
        raise MatchFailure
    if isinstance(pattern, Justified):
        _match_term(pattern.term, f.term, binding)
        _match_formula(pattern.body, f.body, binding)
        return
    _match_formula(pattern.left, f.left, binding)
    _match_formula(pattern.right, f.right, binding)


def _subst_term(pattern, binding: dict) -> Term:
    if isinstance(pattern, TMeta):
        return binding[pattern.name]
    if isinstance(pattern, (Var, Const)):
        return pattern
    return type(pattern)(_subst_term(pattern.left, binding),
                         _subst_term(pattern.right, binding))


def _subst_formula(pattern, binding: dict) -> Formula:
    if isinstance(pattern, FMeta):
        return binding[pattern.name]
    if isinstance(pattern, RMeta):
        return TruthConst(binding[pattern.name])
    if isinstance(pattern, (Prop, TruthConst)):
        return pattern
    if isinstance(pattern, Justified):
        return Justified(_subst_term(pattern.term, binding),
                         _subst_formula(pattern.body, binding))
    return type(pattern)(_subst_formula(pattern.left, binding),
                         _subst_formula(pattern.right, binding))


@dataclass(frozen=True)
class Scheme:
    """A named axiom scheme over primitive connectives.

    ``side`` lists rational metavariables whose value is determined by
    the others; a match binds them structurally and then verifies the
    computed value, an instantiation computes them.
    """

    name: str
    pattern: object
    side: tuple = ()

    def match(self, f: Formula) -> Optional[dict]:
        binding: dict = {}
        try:
            _match_formula(self.pattern, expand_sugar(f), binding)
        except MatchFailure:
            return None
        for name, fn in self.side:
            if binding.get(name) != fn(binding):
                return None
        return binding

    def instantiate(self, binding: dict) -> Formula:
        full = dict(binding)
        for name, fn in self.side:
            full[name] = fn(full)
        return _subst_formula(self.pattern, full)

    def free_metavariables(self) -> tuple:
        """Metavariables a caller must supply to instantiate the scheme."""
        names: list = []

        def walk(p):
            if isinstance(p, (FMeta, TMeta, RMeta)):
                if p not in names:
                    names.append(p)
            elif isinstance(p, Justified):
                walk(p.term)
                walk(p.body)
            elif isinstance(p, (StrongConj, Implies, App, Sum)):
                walk(p.left)
                walk(p.right)

        walk(self.pattern)
        computed = {name for name, _ in self.side}
        return tuple(m for m in names if not (isinstance(m, RMeta) and m.name in computed))


def match_scheme(scheme: Scheme, f: Formula) -> Optional[dict]:
    """First-order matching of a fully concrete formula against a scheme."""
    return scheme.match(f)


# ---------------------------------------------------------------------------
# The scheme registry

_A, _B, _C = FMeta("A"), FMeta("B"), FMeta("C")
_A1, _B1, _A2, _B2 = FMeta("A1"), FMeta("B1"), FMeta("A2"), FMeta("B2")
_S, _T = TMeta("s"), TMeta("t")
_R, _R2, _V = RMeta("r"), RMeta("r'"), RMeta("v")


def _imp(a, b):
    return Implies(a, b)


def _conj(a, b):
    return StrongConj(a, b)


def _neg(a):
    return Implies(a, FALSUM)


def _equiv(a, b):
    return StrongConj(Implies(a, b), Implies(b, a))


BL_SCHEMES = (
    Scheme("BL1", _imp(_imp(_A, _B), _imp(_imp(_B, _C), _imp(_A, _C)))),
    Scheme("BL2", _imp(_conj(_A, _B), _A)),
    Scheme("BL3", _imp(_conj(_A, _B), _conj(_B, _A))),
    Scheme("BL4", _imp(_conj(_A, _imp(_A, _B)), _conj(_B, _imp(_B, _A)))),
    Scheme("BL5a", _imp(_imp(_A, _imp(_B, _C)), _imp(_conj(_A, _B), _C))),
    Scheme("BL5b", _imp(_imp(_conj(_A, _B), _C), _imp(_A, _imp(_B, _C)))),
    Scheme("BL6", _imp(_imp(_imp(_A, _B), _C), _imp(_imp(_imp(_B, _A), _C), _C))),
    Scheme("BL7", _imp(FALSUM, _A)),
)

INVOLUTION = Scheme("L", _imp(_neg(_neg(_A)), _A))
IDEMPOTENCE = Scheme("G", _imp(_A, _conj(_A, _A)))
CANCELLATION = Scheme(
    "P",
    _imp(_neg(_neg(_A)), _imp(_imp(_A, _conj(_A, _B)), _conj(_B, _neg(_neg(_B))))),
)

TC1 = Scheme(
    "TC1",
    _equiv(_imp(_R, _R2), _V),
    side=(("v", lambda b: luka_residuum(b["r"], b["r'"])),),
)
TC2 = Scheme(
    "TC2",
    _equiv(_conj(_R, _R2), _V),
    side=(("v", lambda b: luka_tnorm(b["r"], b["r'"])),),
)

APPL = Scheme(
    "Appl",
    _imp(Justified(_S, _imp(_A, _B)),
         _imp(Justified(_T, _A), Justified(App(_S, _T), _B))),
)
SUM1 = Scheme("Sum1", _imp(Justified(_S, _A), Justified(Sum(_S, _T), _A)))
SUM2 = Scheme("Sum2", _imp(Justified(_S, _A), Justified(Sum(_T, _S), _A)))

FACTIVITY = Scheme("jT", _imp(Justified(_T, _A), _A))
CONSISTENCY = Scheme("jD", _neg(Justified(_T, FALSUM)))


def active_schemes(config: LogicConfig) -> tuple[Scheme, ...]:
    """The axiom schemes of the configured logic, in matching order."""
    out = list(BL_SCHEMES)
    if config.base is Base.L:
        out.append(INVOLUTION)
    elif config.base is Base.G:
        out.append(IDEMPOTENCE)
    elif config.base is Base.PI:
        out.append(CANCELLATION)
    elif config.base is Base.RPL:
        out.extend((INVOLUTION, TC1, TC2))
    if config.crisp:
        if INVOLUTION not in out:
            out.append(INVOLUTION)
        if IDEMPOTENCE not in out:
            out.append(IDEMPOTENCE)
    if config.justified:
        out.extend((APPL, SUM1, SUM2))
    if "jT" in config.extras:
        out.append(FACTIVITY)
    if "jD" in config.extras:
        out.append(CONSISTENCY)
    return tuple(out)


def scheme_by_name(name: str, config: LogicConfig) -> Optional[Scheme]:
    for scheme in active_schemes(config):
        if scheme.name == name:
            return scheme
    if name == "Sum":
        return SUM1 if config.justified else None
    return None


def axiom_instance_of(f: Formula, config: LogicConfig):
    """First active scheme that ``f`` instantiates, with its substitution."""
    g = expand_sugar(f)
    for scheme in active_schemes(config):
        binding = scheme.match(g)
        if binding is not None:
            return scheme.name, binding
    return None
