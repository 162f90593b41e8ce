"""Tests for the real closed field model: cells, invariants, bijections and decompositions."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from algebra.poly import ZERO, Poly, real_root_count, squarefree_part
from common.errors import InvariantMismatch, PreconditionViolation, ZeroPolynomialError
from rcf.bijection import rcf_build_bijection, sample_points
from rcf.cells import (
    Invariant, RcfSet, SetOp, rcf_algebra, rcf_from_sign_condition, rcf_hume_equiv, rcf_invariant,
    rcf_number,
)
from rcf.decompose import euler_bound, rcf_decompose
from rcf.skolem import rcf_skolem_demo
from tests.strategies import polynomials, rcf_pool, rcf_sets


@pytest.fixture
def split_set():
    """(-2, -1) u {0} u (1, 2)."""
    return RcfSet.parse("(x + 2)*(x + 1) < 0 | x = 0 | (x - 1)*(x - 2) < 0")


@pytest.fixture
def unit_interval():
    """(-1, 1)."""
    return RcfSet.open_interval(-1, 1)


def test_cells_of_a_sign_condition(split_set):
    """Test that the parsed set has two intervals around one point."""
    kinds = [c.is_point for c in split_set.cells]
    assert kinds == [False, True, False]
    assert str(split_set) == "(-2, -1) u {0} u (1, 2)"
    assert split_set.contains_rational(Fraction(3, 2))
    assert not split_set.contains_rational(1)


def test_invariants_match(split_set, unit_interval):
    """Test that both sets have dimension 1 and Euler characteristic -1."""
    assert rcf_invariant(split_set) == Invariant(1, -1)
    assert rcf_invariant(unit_interval) == Invariant(1, -1)
    assert rcf_number(split_set) == rcf_number(unit_interval) == 7
    assert rcf_hume_equiv(split_set, unit_interval)


def test_empty_set_invariant():
    """Test the convention for the empty set."""
    assert rcf_invariant(RcfSet.empty()) == Invariant(-1, 0)
    assert str(RcfSet.empty()) == "{}"
    assert rcf_invariant(RcfSet.of_points([1, 2, 3])) == Invariant(0, 3)
    assert rcf_invariant(RcfSet.line()) == Invariant(1, -1)


def test_irrational_breakpoints():
    """Test a set bounded by square roots."""
    X = RcfSet.parse("x^2 - 2 < 0")
    assert rcf_invariant(X) == Invariant(1, -1)
    assert X.contains_rational(Fraction(141, 100))
    assert not X.contains_rational(Fraction(142, 100))


def test_parameters_are_substituted():
    """Test that parameter values are plugged in before solving."""
    X = RcfSet.parse("x^2 - a = 0", {"a": 4})
    assert X == RcfSet.of_points([-2, 2])


def test_set_algebra():
    """Test canonical forms after union and complement."""
    glued = rcf_algebra(SetOp.UNION, RcfSet.open_interval(0, 1), RcfSet.of_points([1]))
    glued = rcf_algebra(SetOp.UNION, glued, RcfSet.open_interval(1, 2))
    assert glued == RcfSet.open_interval(0, 2)
    outside = rcf_algebra(SetOp.COMPLEMENT, RcfSet.open_interval(-1, 1))
    assert rcf_invariant(outside) == Invariant(1, 0)
    assert rcf_algebra(SetOp.DIFFERENCE, glued, glued).is_empty()
    with pytest.raises(PreconditionViolation):
        rcf_algebra(SetOp.UNION, glued)


def test_zero_polynomial_condition():
    """Test that a sign condition on the zero polynomial is refused."""
    with pytest.raises(ZeroPolynomialError):
        rcf_from_sign_condition([(ZERO, "<")])


def test_sign_condition_relations():
    """Test closed and open conditions on one polynomial."""
    p = Poly.parse("x^2 - 1")
    assert rcf_from_sign_condition([(p, "<=")]) == rcf_algebra(
        SetOp.UNION, RcfSet.open_interval(-1, 1), RcfSet.of_points([-1, 1]))
    assert rcf_invariant(rcf_from_sign_condition([(p, "!=")])) == Invariant(1, -3)


def test_bijection_pieces(split_set, unit_interval):
    """Test that the target is cut once so cells can be matched."""
    bijection = rcf_build_bijection(split_set, unit_interval)
    assert len(bijection.pieces) == 3
    assert bijection.target_splits == (Fraction(0),)
    assert bijection.source_splits == ()


def test_bijection_values(split_set, unit_interval):
    """Test images and preimages of rational points."""
    bijection = rcf_build_bijection(split_set, unit_interval)
    assert bijection.apply(Fraction(-3, 2)).contains(Fraction(-1, 2))
    assert bijection.apply(0).contains(0)
    assert bijection.apply(Fraction(3, 2)).contains(Fraction(1, 2))
    assert bijection.inverse(Fraction(1, 2)).contains(Fraction(3, 2))
    with pytest.raises(PreconditionViolation):
        bijection.apply(1)


def test_bijection_preserves_order_on_pieces(split_set, unit_interval):
    """Test that images of sample points stay in their target cells."""
    bijection = rcf_build_bijection(split_set, unit_interval)
    for t in sample_points(split_set, 20, random.Random(7)):
        assert bijection.lands_inside(t)


def test_bijection_onto_irrational_ends():
    """Test a bijection whose target has algebraic endpoints."""
    X = RcfSet.parse("x^2 - 2 < 0")
    bijection = rcf_build_bijection(RcfSet.open_interval(0, 1), X)
    image = bijection.apply(Fraction(1, 2), tolerance=Fraction(1, 10 ** 6))
    assert image.width <= Fraction(1, 10 ** 6)
    assert image.contains(0)


def test_bijection_needs_equal_invariants(unit_interval):
    """Test that sets with different invariants are refused."""
    with pytest.raises(InvariantMismatch):
        rcf_build_bijection(unit_interval, RcfSet.of_points([0]))


def test_bijection_report(split_set, unit_interval):
    """Test the serialised report of a bijection."""
    report = rcf_build_bijection(split_set, unit_interval).report(split_set)
    assert report.invariant == {"dim": 1, "euler": -1}
    assert report.target_splits == ["0"]
    assert len(report.pieces) == 3


def test_decomposition_indices():
    """Test that intervals get even indices and points odd ones."""
    targets = [RcfSet.of_points([0]), RcfSet.open_interval(0, None)]
    decomposition = rcf_decompose(targets)
    assert decomposition.labels == ["(-oo, 0)", "{0}", "(0, +oo)"]
    assert decomposition.certificates == [[1], [2]]
    assert decomposition.euler_of(0) == 1
    assert decomposition.euler_of(1) == -1


def test_decomposition_refinement():
    """Test extra breakpoints refine cells without changing Euler characteristics."""
    decomposition = rcf_decompose([RcfSet.open_interval(0, None)], extra_breakpoints=[1])
    assert len(decomposition.cells) == 5
    assert decomposition.certificates == [[2, 3, 4]]
    assert decomposition.euler_of(0) == -1


def test_euler_bound():
    """Test the bound on the number of roots plus one."""
    assert euler_bound("x^2 - a < 0 & x^3 > b") == 6
    decomposition = rcf_decompose([RcfSet.parse("x^2 - 2 < 0")], conditions="x^2 - 2 < 0")
    assert decomposition.euler_bound == 3


def test_skolem_demo():
    """Test that the square-root choice is definable over the reals only."""
    report = rcf_skolem_demo()
    assert report.choice_invariant == {"dim": 1, "euler": 0}
    assert report.choice_cells == ["{0}", "(0, +oo)"]
    assert report.acf_rejection is not None
    assert len(report.square_roots) == 5
    by_value = {row.a: row for row in report.square_roots}
    assert by_value["4"].rcf_choice == ["{2}"]
    assert not by_value["4"].irreducible
    assert by_value["2"].irreducible
    assert all(row.rcf_choice_size == 1 and row.acf_roots == 2 for row in report.square_roots)


def test_skolem_demo_skips_nonpositive_values():
    """Test that only positive values get a row."""
    assert len(rcf_skolem_demo([2, 0, -1]).square_roots) == 1


@hsettings(max_examples=60, deadline=None)
@given(rcf_sets(), rcf_sets())
def test_hume_on_generated_sets(X, Y):
    """Test that a bijection is built exactly when the numbers agree."""
    same = rcf_number(X) == rcf_number(Y)
    assert rcf_hume_equiv(X, Y) == same
    if not same:
        with pytest.raises(InvariantMismatch):
            rcf_build_bijection(X, Y)
        return
    bijection = rcf_build_bijection(X, Y)
    for t in sample_points(X, 5, random.Random(0)):
        assert bijection.lands_inside(t)


@hsettings(max_examples=100, deadline=None)
@given(rcf_sets(), st.lists(st.fractions(min_value=-8, max_value=8, max_denominator=6), max_size=5))
def test_euler_survives_refinement(X, extra):
    """Test that extra breakpoints do not change the Euler characteristic."""
    decomposition = rcf_decompose([X], extra_breakpoints=extra)
    assert decomposition.euler_of(0) == rcf_invariant(X).euler


def test_hume_on_the_pool():
    """Test that numbers agree exactly when invariants do, over every pair of the pool."""
    pool = rcf_pool()
    assert len(pool) >= 50
    invariants = [rcf_invariant(X) for X in pool]
    numbers = [rcf_number(X) for X in pool]
    for X, inv, n in zip(pool, invariants, numbers):
        for Y, other, m in zip(pool, invariants, numbers):
            assert rcf_hume_equiv(X, Y) == (inv == other) == (n == m), (X, Y)


def test_bijections_on_the_pool():
    """Test that every equinumerous pair of the pool gets a bijection landing in its cells."""
    pool = rcf_pool()
    rng = random.Random(0)
    for X in pool:
        for Y in pool:
            if not rcf_hume_equiv(X, Y):
                continue
            bijection = rcf_build_bijection(X, Y)
            for t in sample_points(X, 3, rng):
                assert bijection.lands_inside(t), (X, Y, t)


@hsettings(max_examples=100, deadline=None)
@given(rcf_sets(), rcf_sets())
def test_euler_is_additive_on_disjoint_sets(X, Y):
    """Test E(X u Y) = E(X) + E(Y) once Y is made disjoint from X."""
    Y = rcf_algebra(SetOp.DIFFERENCE, Y, X)
    assert rcf_algebra(SetOp.INTERSECT, X, Y).is_empty()
    union = rcf_algebra(SetOp.UNION, X, Y)
    assert rcf_invariant(union).euler == rcf_invariant(X).euler + rcf_invariant(Y).euler


@hsettings(max_examples=100, deadline=None)
@given(polynomials(min_degree=1))
def test_zero_set_counts_real_roots(p):
    """Test that the zero set of p is finite with one point per distinct real root."""
    inv = rcf_invariant(rcf_from_sign_condition([(p, "=")]))
    assert inv.dim <= 0
    assert inv.euler == real_root_count(squarefree_part(p))


@pytest.mark.parametrize("source, target", [
    ("(x + 2)*(x + 1) < 0 | x = 0 | (x - 1)*(x - 2) < 0", "x^2 - 1 < 0"),
    ("x > 0 | x = -1", "x < 0 | x = 3"),
    ("x = 1 | x = 2 | x > 5", "x < -3 | x = 0 | x = 7"),
])
def test_inverse_undoes_apply(source, target):
    """Test that the inverse sends each image back to its sample point."""
    X, Y = RcfSet.parse(source), RcfSet.parse(target)
    bijection = rcf_build_bijection(X, Y)
    for t in sample_points(X, 20, random.Random(3)):
        image = bijection.apply(t)
        assert image.width == 0
        back = bijection.inverse(image.lo)
        assert back.contains(t)
        assert back.width == 0
