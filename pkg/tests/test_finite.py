"""Tests for finite structures and the Henkin evaluator.

This module covers:
- Structure validation and JSON
- Evaluation against a naive oracle
- Isomorphism invariance
- Counting macros
"""

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from common.errors import AbstractionUndefined, PreconditionViolation, UnassignedVariable
from finite.evaluator import Evaluator, eval_formula, relation_value
from finite.structure import Arithmetic, FiniteStructure, powerset
from logic import macros
from logic.formula import ObjVar, RelVar, universal_closure
from logic.parser import parse_formula
from tests.reference_eval import reference_eval
from tests.strategies import finite_structures, formulas


@pytest.fixture
def three():
    """Universe {0, 1, 2} with all subsets, # the cardinality."""
    s = FiniteStructure.full_powerset(3, max_arity=1)
    return s.with_abstraction("hash", {X: len(X) % 3 for X in s.sets()})


def test_full_powerset_sizes():
    """Test family sizes of the full structure."""
    s = FiniteStructure.full_powerset(2, max_arity=2)
    assert len(s.family(1)) == 4
    assert len(s.family(2)) == 16


def test_structure_rejects_foreign_atoms():
    """Test that relations must stay inside the universe."""
    with pytest.raises(PreconditionViolation):
        FiniteStructure((0, 1), {1: (frozenset({2}),)})


def test_ext_must_be_injective():
    """Test that an extension map cannot identify two sets."""
    s = FiniteStructure.full_powerset(2, max_arity=1)
    with pytest.raises(PreconditionViolation):
        s.with_abstraction("ext", {frozenset(): 0, frozenset({0}): 0})


def test_json_reads_back(three):
    """Test structure JSON, including the abstraction pairs."""
    again = FiniteStructure.from_json(three.to_json())
    assert again.universe == three.universe
    assert again.sets() == three.sets()
    assert again.abstraction.mapping == three.abstraction.mapping


def test_malformed_json():
    """Test that missing fields are reported."""
    with pytest.raises(PreconditionViolation) as info:
        FiniteStructure.from_json({"relations": {}})
    assert info.value.name == "structure_json"


def test_simple_sentences(three):
    """Test a few sentences with known truth values."""
    assert eval_formula(three, parse_formula("exists X. forall x. x in X"))
    assert not eval_formula(three, parse_formula("forall X. exists x. x in X"))
    assert eval_formula(three, parse_formula("exists X. exists x. (x in X and #X = x)"))


def test_environment_values(three):
    """Test free variables supplied by the environment."""
    f = parse_formula("x in X and #X = y")
    assert eval_formula(three, f, {"x": 1, "X": [1, 2], "y": 2})
    assert not eval_formula(three, f, {"x": 0, "X": [1, 2], "y": 2})


def test_unassigned_variable(three):
    """Test that a missing free variable is named."""
    with pytest.raises(UnassignedVariable):
        eval_formula(three, parse_formula("x = y"), {"x": 0})


def test_abstraction_outside_domain():
    """Test that # of a set outside the domain is an error."""
    s = FiniteStructure.full_powerset(2, max_arity=1).with_abstraction("hash", {frozenset(): 0})
    with pytest.raises(AbstractionUndefined):
        eval_formula(s, parse_formula("forall X. #X = #X"))


def test_zero_constant_is_abstract_of_empty(three):
    """Test that Zero denotes # of the empty set."""
    assert eval_formula(three, parse_formula("Zero = #{}"))


def test_arithmetic_numerals():
    """Test numerals and successor in a structure with arithmetic."""
    s = FiniteStructure.full_powerset(3, max_arity=1).with_arithmetic(
        Arithmetic(0, {0: 1, 1: 2, 2: 2}))
    assert eval_formula(s, parse_formula("s(s(0)) = 2 and s(2) = 2"))


def test_numerals_need_arithmetic(three):
    """Test that numerals are rejected without an arithmetic part."""
    with pytest.raises(PreconditionViolation):
        eval_formula(three, parse_formula("0 = 0"))


def test_relation_value_checks_membership(three):
    """Test that environment relations must belong to the family."""
    assert relation_value(three, RelVar("X", 1), [2, 0]) == frozenset({0, 2})
    poor = three.with_sets([frozenset()])
    with pytest.raises(PreconditionViolation):
        relation_value(poor, RelVar("X", 1), [0])


def test_shared_cache_across_abstractions():
    """Test that a shared memo table gives the same answers for different # maps."""
    base = FiniteStructure.full_powerset(2, max_arity=2)
    f = parse_formula("forall X. exists Y. forall x. (x in X <-> not x in Y)")
    cache = {}
    first = Evaluator(base.with_abstraction("hash", {X: 0 for X in base.sets()}), cache).eval(f)
    second = Evaluator(base.with_abstraction("hash", {X: 1 for X in base.sets()}), cache).eval(f)
    assert first and second
    assert cache


def test_shared_cache_keeps_frames_apart():
    """Test that frames with different families never read each other's entries."""
    full = FiniteStructure.full_powerset(2, max_arity=1)
    poor = full.with_sets([frozenset(), frozenset({0})])
    f = parse_formula("forall X. exists Y. forall x. (x in X <-> not x in Y)")
    cache = {}
    assert Evaluator(full, cache).eval(f)
    assert not Evaluator(poor, cache).eval(f)
    assert Evaluator(full, cache).eval(f)
    assert full.frame_key == (full.universe, tuple(sorted(full.families.items())))
    assert full.frame_key != poor.frame_key
    assert {key[0] for key in cache} == {full.frame_key, poor.frame_key}


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_card_eq_macro(three, n):
    """Test that card_eq holds exactly for sets of size n."""
    X = RelVar("X", 1)
    f = macros.card_eq(X, n)
    for subset in powerset(range(3)):
        assert eval_formula(three, f, {"X": subset}) == (len(subset) == n)


def test_singleton_macro(three):
    """Test the singleton macro against explicit sets."""
    f = macros.singleton(RelVar("X", 1), ObjVar("x"))
    assert eval_formula(three, f, {"X": [1], "x": 1})
    assert not eval_formula(three, f, {"X": [1, 2], "x": 1})


@hsettings(max_examples=200, deadline=None)
@given(finite_structures(), formulas(max_depth=4, arithmetic=False))
def test_agrees_with_naive_evaluation(s, f):
    """Test the evaluator against direct recursion on random sentences."""
    sentence = universal_closure(f)
    assert eval_formula(s, sentence) == reference_eval(s, sentence)


@hsettings(max_examples=50, deadline=None)
@given(finite_structures(), formulas(max_depth=4, arithmetic=False), st.randoms())
def test_isomorphic_copies_agree(s, f, rng):
    """Test that renaming atoms preserves truth."""
    atoms = list(s.universe)
    shuffled = atoms[:]
    rng.shuffle(shuffled)
    copy = s.permute(dict(zip(atoms, shuffled)))
    sentence = universal_closure(f)
    assert eval_formula(s, sentence) == eval_formula(copy, sentence)
