"""Tests for the canonical models H_kappa."""

from itertools import combinations, product

import pytest

from common.errors import HumeViolation, PreconditionViolation
from hmodel.canonical import (
    equinumerosity_class, h_card, h_gamma_iso, h_range_complement, h_swap_check,
)
from hmodel.ordinals import OMEGA, HSet, OrdElem, universe_window

n = OrdElem.nat
w = OrdElem.omega_plus


@pytest.mark.parametrize("text, expected", [
    ("n:5", OrdElem(5, False)),
    ("w", OrdElem(0, True)),
    ("w+2", OrdElem(2, True)),
])
def test_parse_elements(text, expected):
    """Test the text forms of ordinal elements."""
    assert OrdElem.parse(text) == expected
    assert str(expected) == text


def test_malformed_element():
    """Test that unknown text is refused."""
    with pytest.raises(PreconditionViolation):
        OrdElem.parse("omega")


def test_order():
    """Test that naturals come before omega and its successors."""
    assert n(100) < OMEGA < w(1)


def test_set_operations():
    """Test Boolean operations on finite and cofinite sets."""
    a = HSet.finite([n(0), n(1)])
    b = HSet.cofinite([n(1), w(0)])
    assert a.union(b) == HSet.cofinite([w(0)])
    assert a.intersect(b) == HSet.finite([n(0)])
    assert b.difference(a) == HSet.cofinite([n(0), n(1), w(0)])
    assert a.complement().contains(n(7))
    assert not b.contains(OMEGA)
    assert str(b) == "all but {n:1, w}"


def test_hset_json():
    """Test that malformed set JSON is reported."""
    assert HSet.from_json({"mode": "cofinite", "exceptions": ["w+1"]}) == HSet.cofinite([w(1)])
    with pytest.raises(PreconditionViolation):
        HSet.from_json({"mode": "sometimes"})


def test_cardinality():
    """Test that finite sets go to their size and infinite ones to omega."""
    assert h_card(2, HSet.finite([n(3), w(2)])) == n(2)
    assert h_card(2, HSet.cofinite([n(3)])) == OMEGA
    with pytest.raises(PreconditionViolation):
        h_card(1, HSet.finite([w(2)]))


def test_kappa_range():
    """Test that negative kappa is refused."""
    with pytest.raises(PreconditionViolation):
        h_card(-1, HSet.empty())


@pytest.mark.parametrize("kappa", [0, 1, 3])
def test_range_complement(kappa):
    """Test that exactly the elements above omega are never cardinalities."""
    assert h_range_complement(kappa) == [w(j) for j in range(1, kappa + 1)]


def test_swap_commutes_with_cardinality():
    """Test the transposition of two elements outside the range."""
    report = h_swap_check(2, w(1), w(2))
    assert report.passed
    assert len(report.cases) == 20
    tests = [HSet.finite([w(1)]), HSet.cofinite([w(2), n(0)]), HSet.finite([n(0), w(1), w(2)])]
    assert h_swap_check(2, w(1), w(2), tests=tests).passed


@pytest.mark.parametrize("beta", ["n:1", "n:5", "w"])
def test_swap_needs_elements_outside_range(beta):
    """Test that cardinalities and elements outside the window are refused."""
    with pytest.raises(PreconditionViolation):
        h_swap_check(2, OrdElem.parse(beta), w(2))


def test_gamma_identity():
    """Test Gamma between # and itself."""
    family = [HSet.empty(), HSet.finite([n(0)]), HSet.finite([w(1)]), HSet.everything()]
    report = h_gamma_iso(2, lambda X: h_card(2, X), lambda X: h_card(2, X), family)
    assert report.bijective and report.identity
    assert report.classes == 3


def test_gamma_between_different_maps():
    """Test Gamma when the second map sends infinite sets to omega + 1."""
    family = [HSet.empty(), HSet.finite([n(0), n(4)]), HSet.cofinite([]), HSet.cofinite([w(2)])]

    def shifted(X):
        return w(1) if not X.is_finite else h_card(2, X)

    report = h_gamma_iso(2, lambda X: h_card(2, X), shifted, family)
    assert report.bijective and not report.identity
    assert report.mapping == {"n:0": "n:0", "n:2": "n:2", "w": "w+1"}


def test_gamma_detects_merged_classes():
    """Test that a map identifying two sizes violates Hume's Principle."""
    family = [HSet.empty(), HSet.finite([n(0)])]
    with pytest.raises(HumeViolation):
        h_gamma_iso(2, lambda X: h_card(2, X), lambda X: n(0), family)


def test_gamma_detects_split_classes():
    """Test that a table giving equinumerous sets different values is refused."""
    a, b = HSet.finite([n(0)]), HSet.finite([n(1)])
    with pytest.raises(HumeViolation):
        h_gamma_iso(2, {a: n(1), b: n(1)}, {a: n(1), b: n(2)}, [a, b])


def _full_pool(kappa: int) -> list[HSet]:
    """Every finite and cofinite set with exceptions among Nat(0..3) and omega..omega + kappa."""
    window = universe_window(kappa, 4)
    pool = []
    for size in range(len(window) + 1):
        for exceptions in combinations(window, size):
            pool += [HSet.finite(exceptions), HSet.cofinite(exceptions)]
    return pool


@pytest.mark.parametrize("kappa", range(6))
def test_swap_passes_for_every_pair(kappa):
    """Test every transposition of elements outside the range on the whole pool."""
    pool = _full_pool(kappa)
    outside = h_range_complement(kappa)
    for beta, gamma in product(outside, repeat=2):
        report = h_swap_check(kappa, beta, gamma, tests=pool)
        assert report.passed, (beta, gamma)
        assert len(report.cases) == len(pool)


def test_cardinalities_agree_exactly_on_equinumerous_sets():
    """Test that equal cardinalities mean equal size for finite sets and any two cofinite sets."""
    pool = _full_pool(2)
    cards = [h_card(2, X) for X in pool]
    for X, a in zip(pool, cards):
        for Y, b in zip(pool, cards):
            same_size = X.is_finite == Y.is_finite and (
                not X.is_finite or len(X.exceptions) == len(Y.exceptions))
            assert (a == b) == same_size, (X, Y)
            assert (a == b) == (equinumerosity_class(X) == equinumerosity_class(Y))
