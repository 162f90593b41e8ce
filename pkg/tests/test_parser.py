"""Tests for the formula parser and printer.

This module covers:
- Surface syntax to AST
- Arity inference and arity errors
- Printing and reparsing
- JSON export of formulas
"""

import pytest
from hypothesis import given, settings as hsettings

from common.errors import ArityMismatchError, FormulaSyntaxError
from logic.formula import (
    AbsOp, Abstraction, And, Const, EmptySet, Equal, ExistsRel, ForallObj, ForallRel, Iff,
    Implies, Membership, Not, Num, ObjVar, Plus, RelVar, Succ, Truth, from_json,
    free_variables, fresh_name, nnf, substitute, to_json, universal_closure,
)
from logic.parser import parse_formula
from logic.printer import print_formula
from tests.strategies import formulas

x, y = ObjVar("x"), ObjVar("y")
X = RelVar("X", 1)


def test_membership_and_quantifiers():
    """Test a set quantifier over an object quantifier."""
    f = parse_formula("forall X. exists y. y in X")
    assert isinstance(f, ForallRel)
    assert (f.name, f.arity) == ("X", 1)
    assert f.body.body == Membership((ObjVar("y"),), X)


def test_relation_arity_inferred_from_body():
    """Test that an uppercase binder takes the arity of its uses."""
    f = parse_formula("exists R. forall x. R(x, x)")
    assert isinstance(f, ExistsRel)
    assert f.arity == 2


def test_forall2_defaults_to_binary():
    """Test that forall2 without uses binds a binary relation."""
    f = parse_formula("forall2 f. true")
    assert (f.name, f.arity, f.body) == ("f", 2, Truth(True))


def test_abstraction_terms():
    """Test the #, ext and empty set terms."""
    f = parse_formula("#X = ext(Y) and #{} = Zero")
    assert f == And(
        Equal(Abstraction(AbsOp.HASH, X), Abstraction(AbsOp.EXT, RelVar("Y", 1))),
        Equal(Abstraction(AbsOp.HASH, EmptySet()), Const("Zero")),
    )


def test_arithmetic_terms():
    """Test numerals, successor and bracketed sums."""
    f = parse_formula("s(x) = [x + 1]")
    assert f == Equal(Succ(x), Plus(x, Num(1)))


def test_not_equal_is_negated_equality():
    """Test that != desugars to a negation."""
    assert parse_formula("x != y") == Not(Equal(x, y))


def test_implication_is_right_associative():
    """Test the grouping of chained arrows."""
    f = parse_formula("true -> false -> true")
    assert f == Implies(Truth(True), Implies(Truth(False), Truth(True)))


def test_iff_binds_loosest():
    """Test that <-> takes whole conjunctions as operands."""
    f = parse_formula("x = y and y = x <-> true")
    assert isinstance(f, Iff)
    assert isinstance(f.left, And)


def test_bijection_macro_expands():
    """Test that the bijection shorthand becomes a first-order formula over f."""
    f = parse_formula("exists2 f. bijection(f, X, Y)")
    assert isinstance(f, ExistsRel) and f.arity == 2
    assert free_variables(f).relation_names() == {"X", "Y"}


def test_declaration_matches_use():
    """Test that a rel declaration agrees with how the relation is used."""
    f = parse_formula("rel R:2; forall x. R(x, x)")
    assert free_variables(f).relations == (RelVar("R", 2),)


def test_declaration_conflict():
    """Test that a declaration contradicting the uses is rejected."""
    with pytest.raises(ArityMismatchError) as info:
        parse_formula("rel R:3; forall x. R(x, x)")
    assert info.value.variable == "R"


def test_free_relation_with_two_arities():
    """Test that one free name cannot be unary and binary at once."""
    with pytest.raises(ArityMismatchError):
        parse_formula("x in R and R(x, y)")


def test_bound_relation_with_wrong_arity():
    """Test that a declared binder arity is checked against its body."""
    with pytest.raises(ArityMismatchError):
        parse_formula("forall R:2. x in R")


def test_reserved_word_as_variable():
    """Test that keywords cannot name variables."""
    with pytest.raises(FormulaSyntaxError):
        parse_formula("forall in. true")


@pytest.mark.parametrize("text", ["", "forall x", "x = ", "(x = y", "x in"])
def test_syntax_errors(text):
    """Test that malformed text raises a syntax error with a code."""
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.code == "syntax_error"


def test_comments_are_ignored():
    """Test that % starts a comment."""
    assert parse_formula("x = y % same\n") == Equal(x, y)


def test_print_sigma11_formula():
    """Test the printed form of a Sigma-1-1 formula."""
    text = "exists X. forall x. R(x, #X)"
    assert print_formula(parse_formula(text)) == text


def test_print_parenthesizes_inner_quantifiers():
    """Test that quantifiers under connectives are wrapped."""
    f = Implies(ForallObj("x", Equal(x, x)), Truth(False))
    assert print_formula(f) == "((forall x. x = x) -> false)"


@hsettings(max_examples=200, deadline=None)
@given(formulas(max_depth=5))
def test_print_then_parse_is_identity(f):
    """Test that printing and parsing again returns the same AST."""
    assert parse_formula(print_formula(f)) == f


def test_json_kinds():
    """Test the JSON kind tags of formulas and terms."""
    data = to_json(parse_formula("forall X. #X = 0"))
    assert data["kind"] == "forall_rel"
    assert data["body"]["kind"] == "eq"
    assert data["body"]["args"][0]["kind"] == "hash"
    assert from_json(data) == parse_formula("forall X. #X = 0")


def test_substitution_avoids_capture():
    """Test that substituting y for x renames the binder y."""
    f = parse_formula("exists y. x = y")
    result = substitute(f, {"x": y})
    assert free_variables(result).objects == ("y",)
    assert result.name != "y"


def test_fresh_name():
    """Test fresh names skip used ones."""
    assert fresh_name("v", {"x"}) == "v"
    assert fresh_name("v", {"v", "v1"}) == "v2"


def test_universal_closure_binds_everything():
    """Test that the closure has no free variables."""
    f = universal_closure(parse_formula("x in X and R(x, y)"))
    fv = free_variables(f)
    assert fv.objects == () and fv.relations == ()


def test_nnf_pushes_negation_to_atoms():
    """Test negation normal form of a negated quantifier."""
    f = nnf(parse_formula("not forall x. (x in X -> x = y)"))
    assert print_formula(f) == "exists x. (x in X and not x = y)"
