"""Tests for the comprehension, Delta-1-1 and choice instantiators."""

import pytest

from common.errors import ClassificationViolation, SchemaError
from finite.evaluator import eval_formula
from finite.structure import FiniteStructure
from logic.formula import ExistsRel, Implies, universal_closure
from logic.parser import parse_formula
from logic.printer import print_formula
from logic.schemas import instantiate_choice, instantiate_comprehension, instantiate_delta11

SIGMA = "exists Y. forall z. (z in Y -> z = x)"
PI = "forall Y. (x in Y -> exists z. z in Y)"


@pytest.fixture
def two_atoms():
    """Universe {0, 1} with every subset and every binary relation."""
    return FiniteStructure.full_powerset(2, max_arity=2)


def test_comprehension_instance_text():
    """Test the printed comprehension instance."""
    phi = parse_formula("x in X and not x = y")
    result = instantiate_comprehension(phi)
    assert print_formula(result) == "exists F. forall x. (x in F <-> (x in X and not x = y))"


def test_comprehension_binary():
    """Test a binary instance with explicit variables."""
    phi = parse_formula("x = y")
    result = instantiate_comprehension(phi, "G", 2, ["y", "x"])
    assert isinstance(result, ExistsRel) and result.arity == 2
    assert print_formula(result) == "exists2 G:2. forall y. forall x. (G(y, x) <-> x = y)"


def test_comprehension_name_clash():
    """Test that the new relation must not occur free in the formula."""
    with pytest.raises(SchemaError):
        instantiate_comprehension(parse_formula("x in F"), "F")


def test_comprehension_needs_enough_variables():
    """Test that arity 2 needs two free object variables."""
    with pytest.raises(SchemaError):
        instantiate_comprehension(parse_formula("x in X"), "F", 2)


def test_comprehension_holds_in_full_model(two_atoms):
    """Test that every instance is true when S1 holds all subsets."""
    instance = instantiate_comprehension(parse_formula("x in X and not x = y"))
    assert eval_formula(two_atoms, universal_closure(instance))


def test_comprehension_fails_in_poor_model(two_atoms):
    """Test that the universe-defining instance fails when S1 lacks the full set."""
    poor = two_atoms.with_sets([frozenset(), frozenset({0})])
    instance = instantiate_comprehension(parse_formula("x = x"))
    assert not eval_formula(poor, instance)


def test_delta11_instance():
    """Test that a Sigma/Pi pair gives an implication."""
    result = instantiate_delta11(parse_formula(SIGMA), parse_formula(PI))
    assert isinstance(result, Implies)
    assert isinstance(result.right, ExistsRel)


def test_delta11_rejects_pi_phi():
    """Test that phi must be Sigma-1-1."""
    with pytest.raises(ClassificationViolation) as info:
        instantiate_delta11(parse_formula(PI), parse_formula(PI))
    assert info.value.side == "phi"


def test_delta11_rejects_sigma_psi():
    """Test that psi must be Pi-1-1."""
    with pytest.raises(ClassificationViolation) as info:
        instantiate_delta11(parse_formula(SIGMA), parse_formula(SIGMA))
    assert info.value.side == "psi"
    assert info.value.code == "classification_violation"


def test_choice_instance():
    """Test that choice codes one P per n as a column of a binary R."""
    result = instantiate_choice(parse_formula("n in P"))
    assert print_formula(result) == (
        "((forall n. exists P. n in P) -> "
        "(exists2 R:2. forall n. forall P. ((forall m. (m in P <-> R(n, m))) -> n in P)))"
    )


def test_choice_instance_is_true_in_full_model(two_atoms):
    """Test a choice instance on a structure with every binary relation."""
    instance = instantiate_choice(parse_formula("n in P"))
    assert eval_formula(two_atoms, instance)


def test_choice_rejects_pi_formula():
    """Test that choice formulas must be Sigma-1-1."""
    with pytest.raises(ClassificationViolation):
        instantiate_choice(parse_formula("forall Q. n in P"))


def test_choice_needs_a_relation():
    """Test that a formula without free relations has nothing to choose."""
    with pytest.raises(SchemaError):
        instantiate_choice(parse_formula("n = n"))
