"""Tests for the algebraically closed field model of Hume's Principle.

This module covers:
- Canonical finite/cofinite sets and their numbers
- The successor relation on numbers and the failure of SA
- Uniform definitions of # over parametric families
"""

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from acf.sets import (
    AcfSet, SetOp, acf_algebra, acf_card, acf_hume_equiv, acf_number, complement, some_element,
    witness_set,
)
from acf.successor import acf_sa_report, acf_successor_P, successor_closed_form, successor_witness
from acf.theta import ThetaFamily, acf_theta_prime
from algebra.poly import Poly
from common.errors import PreconditionViolation, UnsupportedShape
from logic.formula import free_variables
from tests.strategies import acf_generators, acf_pool, acf_sets


def test_numbers_of_basic_sets():
    """Test the numbers of the empty set, the field and a cofinite set."""
    assert acf_number(AcfSet.empty()) == 0
    assert acf_number(AcfSet.full()) == -1
    assert acf_number(AcfSet.parse("co-roots(x^2+1)")) == -3
    assert acf_number(AcfSet.parse("roots(x^3 - x)")) == 3


def test_canonical_form_is_monic_squarefree():
    """Test that repeated and scaled roots collapse to one base."""
    assert AcfSet.roots(Poly.parse("2*(x - 1)^2")) == AcfSet.of_points([1])
    with pytest.raises(PreconditionViolation):
        AcfSet(Poly.parse("x^2"), AcfSet.empty().mode)


def test_set_algebra():
    """Test union, intersection and difference of mixed sets."""
    a = AcfSet.of_points([0, 1])
    b = AcfSet.of_points([1, 2])
    assert acf_algebra(SetOp.UNION, a, b) == AcfSet.of_points([0, 1, 2])
    assert acf_algebra(SetOp.INTERSECT, a, b) == AcfSet.of_points([1])
    assert acf_algebra(SetOp.DIFFERENCE, a, b) == AcfSet.of_points([0])
    mixed = acf_algebra(SetOp.UNION, complement(a), b)
    assert mixed == complement(AcfSet.of_points([0]))
    assert acf_number(mixed) == -2


def test_binary_operation_needs_two_sets():
    """Test that a missing operand is refused."""
    with pytest.raises(PreconditionViolation):
        acf_algebra(SetOp.UNION, AcfSet.empty())


def test_hume_equivalence_by_cardinality_class():
    """Test that sets are equinumerous exactly when their classes agree."""
    assert acf_hume_equiv(AcfSet.of_points([5, 7]), AcfSet.parse("roots(x^2 + 1)"))
    assert not acf_hume_equiv(AcfSet.of_points([5]), complement(AcfSet.of_points([5])))
    assert acf_hume_equiv(complement(AcfSet.of_points([0])), complement(AcfSet.of_points([3])))


@pytest.mark.parametrize("number", [-4, -2, -1, 0, 1, 3])
def test_witness_set_has_its_number(number):
    """Test that the canonical witness realises every integer."""
    assert acf_number(witness_set(number)) == number


def test_some_element():
    """Test rational members of finite and cofinite sets."""
    assert some_element(AcfSet.empty()) is None
    assert some_element(AcfSet.parse("roots(x^2 + 1)")) is None
    assert some_element(AcfSet.of_points([Fraction(1, 2)])) == Fraction(1, 2)
    assert some_element(complement(AcfSet.of_points([0, 1]))) == -1
    assert acf_card(AcfSet.full()).to_json() == {"kind": "cofinite", "n": 0}


@pytest.mark.parametrize("n, m", [(0, 1), (1, 2), (2, 3), (-4, -3), (-3, -2), (-2, -1)])
def test_successor_pairs(n, m):
    """Test pairs related by removing one point."""
    assert acf_successor_P(n, m)
    witness = successor_witness(n, m)
    assert acf_number(AcfSet.from_json(witness.smaller)) == n
    assert acf_number(AcfSet.from_json(witness.larger)) == m


@pytest.mark.parametrize("m", range(-20, 21))
def test_minus_one_has_no_successor(m):
    """Test that the number of the whole field has no successor."""
    assert not acf_successor_P(-1, m)


def test_closed_form_agrees():
    """Test the closed form against the witness search on a window."""
    for n in range(-20, 21):
        for m in range(-20, 21):
            assert acf_successor_P(n, m) == successor_closed_form(n, m), (n, m)


def test_sa_report():
    """Test that -1 has no successor and lies in every closed hereditary family."""
    report = acf_sa_report(6)
    assert report.witness == -1
    assert report.witness_successors == []
    assert report.witness_in_every_passing_family
    by_family = {check.family: check for check in report.families}
    assert by_family["roots(x^3 - 6*x^2 + 11*x - 6)"].escape == (3, 4)
    assert by_family["co-roots(x^2 + 5*x)"].escape == (-6, -5)
    assert by_family["co-roots(x)"].hereditary
    assert "[-7, 7]" in report.verified_scope


def test_closure_is_read_off_the_successors_of_zero():
    """Test that a family is closed when it holds the successors of #{} found by the scan."""
    report = acf_sa_report(4, families=[complement(AcfSet.of_points([1])), AcfSet.of_points([1]),
                                        AcfSet.of_points([0, 2])])
    closed = [check.closed for check in report.families]
    assert closed == [False, True, False]
    assert not report.families[1].hereditary


def test_sa_report_bound():
    """Test that a scan bound below one is refused."""
    with pytest.raises(PreconditionViolation):
        acf_sa_report(0)


def test_theta_family_instances():
    """Test instances of a parametric family at rational values."""
    family = ThetaFamily.parse("x*y = 1")
    assert family.params == ("y",)
    assert family.degree_bound() == 1
    assert family.instance({"y": 2}) == AcfSet.of_points([Fraction(1, 2)])
    assert family.instance({"y": 0}) == AcfSet.empty()


def test_theta_prime_values():
    """Test that theta' picks out the number of each instance."""
    prime = acf_theta_prime("x*y = 1")
    assert prime.values({"y": 2}) == [1]
    assert prime.values({"y": 0}) == [0]
    negated = acf_theta_prime("x*y != 1")
    assert negated.values({"y": 2}) == [-2]
    assert negated.values({"y": 0}) == [-1]
    assert acf_theta_prime("x^2 = a").values({"a": 4}) == [2]
    assert acf_theta_prime("x^2 = a").solution_set({"a": 0}) == AcfSet.of_points([1])


def test_theta_prime_formula_is_open_in_parameters():
    """Test that the defining formula mentions only z and the parameters."""
    prime = acf_theta_prime("x*y = 1")
    assert prime.value_var == "z"
    assert sorted(free_variables(prime.formula).objects) == ["y", "z"]


THETAS = ["x*y = 1", "x^2 = a", "x^2 - a*x + b = 0", "x*a = b | x = 0", "x^3 != a & x != b",
          "x^2 = a & x != 1"]

rationals = st.one_of(st.integers(-3, 3).map(Fraction),
                      st.fractions(min_value=-4, max_value=4, max_denominator=5))


@pytest.mark.parametrize("text", THETAS)
@hsettings(max_examples=50, deadline=None)
@given(values=st.lists(rationals, min_size=2, max_size=2))
def test_theta_prime_formula_defines_the_number(text, values):
    """Test that evaluating the emitted formula picks out exactly the number of the instance."""
    prime = acf_theta_prime(text)
    params = dict(zip(prime.family.params, values))
    assert prime.values(params) == [acf_number(prime.family.instance(params))]


@pytest.mark.parametrize("text, params, expected", [
    ("x = y", {"y": 5}, [1]),
    ("x != x", {}, [0]),
    ("x*y = 1", {"y": Fraction(-2, 3)}, [1]),
])
def test_theta_prime_examples(text, params, expected):
    """Test the values the emitted formula forces on small families."""
    assert acf_theta_prime(text).values(params) == expected


def test_theta_prime_holds_at():
    """Test the formula at single values of z."""
    prime = acf_theta_prime("x^2 - a*x + b = 0")
    assert prime.holds_at(1, {"a": 2, "b": 1})
    assert not prime.holds_at(2, {"a": 2, "b": 1})
    assert not prime.holds_at(-1, {"a": 0, "b": 0})
    assert prime.holds_at(2, {"a": 3, "b": 2})


def test_theta_rejects_order():
    """Test that order relations are not available over the field."""
    with pytest.raises(UnsupportedShape):
        acf_theta_prime("x < a")


def test_theta_rejects_undeclared_parameters():
    """Test that symbols outside the declared parameters are refused."""
    with pytest.raises(UnsupportedShape):
        acf_theta_prime("x*y = 1", params=["a"])


def test_hume_on_the_pool():
    """Test that equinumerosity and equality of numbers coincide on every pair of the pool."""
    pool = acf_pool()
    assert len(pool) >= 50
    numbers = [acf_number(X) for X in pool]
    for X, n in zip(pool, numbers):
        for Y, m in zip(pool, numbers):
            assert acf_hume_equiv(X, Y) == (n == m), (X, Y)


def test_boolean_algebra_laws_on_generators():
    """Test the Boolean laws on all pairs and triples of twelve generators."""
    op = lru_cache(maxsize=None)(acf_algebra)
    gens = acf_generators()
    union, meet = SetOp.UNION, SetOp.INTERSECT
    for X in gens:
        assert complement(complement(X)) == X
        for Y in gens:
            assert op(union, X, Y) == op(union, Y, X)
            assert op(meet, X, Y) == op(meet, Y, X)
            assert complement(op(union, X, Y)) == op(meet, complement(X), complement(Y))
            assert complement(op(meet, X, Y)) == op(union, complement(X), complement(Y))
            for Z in gens:
                assert op(union, op(union, X, Y), Z) == op(union, X, op(union, Y, Z))
                assert op(meet, op(meet, X, Y), Z) == op(meet, X, op(meet, Y, Z))


@hsettings(max_examples=150, deadline=None)
@given(acf_sets(), acf_sets())
def test_hume_on_generated_sets(X, Y):
    """Test that equinumerosity and equality of numbers coincide."""
    assert acf_hume_equiv(X, Y) == (acf_number(X) == acf_number(Y))


@hsettings(max_examples=100, deadline=None)
@given(acf_sets())
def test_complement_number(X):
    """Test that complementing swaps n and -(n + 1)."""
    assert acf_number(complement(X)) == -acf_number(X) - 1
