from fractions import Fraction

import pytest
from hypothesis import given

from conftest import unit_rationals
from fjl.tnorms import TNormKind, check_adjunction, residuum_apply, tnorm_apply
from fjl.tnorms import unit_rationals as grid_rationals

L, G, P = TNormKind.LUKASIEWICZ, TNormKind.GOEDEL, TNormKind.PRODUCT


def test_tnorm_values():
    assert tnorm_apply(L, Fraction(3, 5), Fraction(7, 10)) == Fraction(3, 10)
    assert tnorm_apply(G, Fraction(1), Fraction(2, 7)) == Fraction(2, 7)
    assert tnorm_apply(P, Fraction(1, 2), Fraction(2, 3)) == Fraction(1, 3)


def test_residuum_values():
    assert residuum_apply(L, Fraction(4, 5), Fraction(1, 2)) == Fraction(7, 10)
    assert residuum_apply(G, Fraction(3, 10), Fraction(1, 2)) == Fraction(1)
    assert residuum_apply(P, Fraction(4, 5), Fraction(1, 5)) == Fraction(1, 4)


@pytest.mark.parametrize("kind", list(TNormKind))
def test_adjunction_grid(kind):
    report = check_adjunction(kind, 6)
    assert report.ok
    assert report.triples == 13 ** 3


def test_grid_rationals_are_sorted_and_complete():
    grid = grid_rationals(4)
    assert grid[0] == 0 and grid[-1] == 1
    assert grid == sorted(set(grid))
    assert Fraction(3, 4) in grid and Fraction(2, 3) in grid


@pytest.mark.parametrize("kind", list(TNormKind))
@given(x=unit_rationals(), y=unit_rationals())
def test_residuum_reaches_one_exactly_below(kind, x, y):
    assert (residuum_apply(kind, x, y) == 1) == (x <= y)


@pytest.mark.parametrize("kind", list(TNormKind))
@given(x=unit_rationals(), y=unit_rationals(), z=unit_rationals())
def test_tnorm_laws(kind, x, y, z):
    assert tnorm_apply(kind, x, y) == tnorm_apply(kind, y, x)
    assert tnorm_apply(kind, tnorm_apply(kind, x, y), z) == \
        tnorm_apply(kind, x, tnorm_apply(kind, y, z))
    assert tnorm_apply(kind, 1, x) == x
    if x <= y:
        assert tnorm_apply(kind, x, z) <= tnorm_apply(kind, y, z)


@pytest.mark.parametrize("kind", list(TNormKind))
@given(x=unit_rationals(), y=unit_rationals(), z=unit_rationals())
def test_adjunction_random(kind, x, y, z):
    assert (tnorm_apply(kind, x, z) <= y) == (z <= residuum_apply(kind, x, y))


@given(x=unit_rationals(), x2=unit_rationals(), y=unit_rationals(), y2=unit_rationals())
def test_luka_implication_monotonicity(x, x2, y, y2):
    if x2 <= x:
        assert residuum_apply(L, x, y) <= residuum_apply(L, x2, y)
    if y <= y2:
        assert residuum_apply(L, x, y) <= residuum_apply(L, x, y2)
    left = tnorm_apply(L, residuum_apply(L, x, x2), residuum_apply(L, y, y2))
    right = residuum_apply(L, tnorm_apply(L, x, y), tnorm_apply(L, x2, y2))
    assert left <= right
