"""Tests for theory identifiers, axiom cores and schema generators."""

from itertools import product

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from common.errors import ClassificationViolation, SchemaError
from finite.evaluator import eval_formula
from finite.structure import FiniteStructure, powerset
from logic.classify import ARITHMETICAL, Classification, classify
from logic.formula import AbsOp, free_variables
from logic.parser import parse_formula
from logic.theories import (
    TheoryId, blv_sentence, hp_sentence, induction_axiom, inf_sentence, q_axioms, sa_sentence,
    theory_axioms,
)


@pytest.mark.parametrize("text", ["PA2", "HP2", "BL2", "Arithmetical-CA0", "Delta11-HP0",
                                  "Sigma11Choice-BL0", "Pi1n:2-HP0"])
def test_theory_names_read_back(text):
    """Test that every theory name prints as it was written."""
    assert str(TheoryId.parse(text)) == text


def test_subsystem_fields():
    """Test the parsed fields of a Pi-1-n subsystem."""
    theory = TheoryId.parse("Pi1n:3-BL0")
    assert (theory.base, theory.comprehension, theory.n) == ("BL2", "pi1n", 3)


@pytest.mark.parametrize("text", ["ZF", "Pi1n-CA0", "Pi1n:0-CA0", "Foo-HP0", "Delta11-XX0"])
def test_malformed_theory_names(text):
    """Test that unknown names are schema errors."""
    with pytest.raises(SchemaError):
        TheoryId.parse(text)


def test_pa2_axioms():
    """Test that PA2 has Q1-Q8 plus induction."""
    theory = theory_axioms(TheoryId.parse("PA2"))
    assert [a.name for a in theory.axioms] == [f"Q{i}" for i in range(1, 9)] + ["Induction"]
    assert all(classify(a.formula) == ARITHMETICAL for a in theory.axioms[:8])
    assert classify(induction_axiom()) == Classification.pi(1)


def test_axioms_are_sentences():
    """Test that the finite axiom cores have no free variables."""
    for sentence in [a.formula for a in q_axioms()] + [hp_sentence(), blv_sentence()]:
        fv = free_variables(sentence)
        assert fv.objects == () and fv.relations == ()


def test_abstraction_principle_levels():
    """Test the levels of Hume's Principle and Basic Law V."""
    assert classify(hp_sentence()) == Classification.pi(2)
    assert classify(blv_sentence()) == Classification.pi(1)


def test_schema_generators_present():
    """Test which generators each comprehension tag provides."""
    assert set(theory_axioms(TheoryId.parse("HP2")).schemas) == {"comprehension", "Inf", "SA"}
    assert "delta11" in theory_axioms(TheoryId.parse("Delta11-CA0")).schemas
    assert "choice" in theory_axioms(TheoryId.parse("Sigma11Choice-HP0")).schemas


def test_arithmetical_comprehension_rejects_sigma():
    """Test that an arithmetical subsystem refuses a Sigma-1-1 instance."""
    generator = theory_axioms(TheoryId.parse("Arithmetical-HP0")).schemas["comprehension"]
    generator(parse_formula("x in X"))
    with pytest.raises(ClassificationViolation):
        generator(parse_formula("exists Y. x in Y"))


def test_pi1n_comprehension_levels():
    """Test that Pi-1-1 comprehension takes Pi-1-1 but not Sigma-1-1 formulas."""
    generator = theory_axioms(TheoryId.parse("Pi1n:1-CA0")).schemas["comprehension"]
    generator(parse_formula("forall Y. x in Y"))
    with pytest.raises(ClassificationViolation):
        generator(parse_formula("exists Y. x in Y"))


def test_inf_and_sa_follow_the_operator():
    """Test that BL2 builds Inf and SA over ext, HP2 over #."""
    bl = theory_axioms(TheoryId.parse("BL2")).schemas
    assert bl["Inf"]() == inf_sentence(AbsOp.EXT)
    assert bl["SA"]() == sa_sentence(AbsOp.EXT)
    assert theory_axioms(TheoryId.parse("HP2")).schemas["SA"]() == sa_sentence(AbsOp.HASH)


def test_hp_true_when_s1_is_small():
    """Test HP on a structure whose sets have distinct sizes."""
    sets = [frozenset(), frozenset({0})]
    s = FiniteStructure.full_powerset(2, max_arity=2).with_sets(sets)
    s = s.with_abstraction("hash", {frozenset(): 0, frozenset({0}): 1})
    assert eval_formula(s, hp_sentence())


def test_hp_false_with_too_many_sizes():
    """Test that HP fails when S1 has more sizes than atoms."""
    s = FiniteStructure.full_powerset(2, max_arity=2)
    mapping = {X: min(len(X), 1) for X in powerset(range(2))}
    assert not eval_formula(s.with_abstraction("hash", mapping), hp_sentence())


def _all_maps(s: FiniteStructure):
    for values in product(s.universe, repeat=len(s.sets())):
        yield s.with_abstraction("hash", dict(zip(s.sets(), values)))


@pytest.mark.parametrize("m", [1, 2])
def test_hp_and_blv_fail_on_every_small_powerset(m):
    """Test every abstraction map on the full powerset of a one or two element universe."""
    s = FiniteStructure.full_powerset(m, max_arity=2)
    for candidate in _all_maps(s):
        assert not eval_formula(candidate, hp_sentence())
        assert not eval_formula(candidate, blv_sentence())


@hsettings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=8, max_size=8))
def test_blv_fails_on_three_atoms(values):
    """Test BLV on random abstraction maps over the eight subsets of three atoms."""
    s = FiniteStructure.full_powerset(3, max_arity=1)
    s = s.with_abstraction("hash", dict(zip(s.sets(), values)))
    assert not eval_formula(s, blv_sentence())


# shared across examples; cached entries never mention #
_THREE_ATOM_CACHE: dict = {}


@hsettings(max_examples=1000, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=8, max_size=8))
def test_hp_fails_on_three_atoms(values):
    """Test HP on random abstraction maps over three atoms."""
    s = FiniteStructure.full_powerset(3, max_arity=2)
    s = s.with_abstraction("hash", dict(zip(s.sets(), values)))
    assert not eval_formula(s, hp_sentence(), cache=_THREE_ATOM_CACHE)
