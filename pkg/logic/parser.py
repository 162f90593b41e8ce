"""Parser for the surface formula syntax.

The grammar lives in ``grammar.lark``; a lark ``Transformer`` turns the parse tree into
the frozen AST of ``logic.formula`` and a second pass checks that every relation variable
is used with one arity.

Quantifier conventions:
    ``forall x.``      binds an object when the name starts lowercase and no arity is given
    ``forall X.``      binds a relation; its arity is inferred from the body (default 1)
    ``forall f:2.``    binds a relation of the given arity
    ``forall2 f.``     binds a relation; arity inferred from the body (default 2)
"""

import logging
from functools import lru_cache
from typing import Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from common.errors import ArityMismatchError, FormulaSyntaxError, WorkbenchError
from logic import macros
from logic.formula import (
    AbsOp, Abstraction, And, Const, EmptySet, Equal, ExistsObj, ExistsRel, ForallObj,
    ForallRel, Formula, Iff, Implies, Leq, Membership, Not, Num, ObjVar, Or, Plus, RelVar,
    Succ, Times, Truth, atom_terms, iter_terms, rebuild, subformulas,
)

logger = logging.getLogger(__name__)

RESERVED = frozenset({
    "forall", "exists", "forall2", "exists2", "not", "and", "or", "in", "rel", "ext",
    "s", "true", "false", "Zero", "bijection",
})


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark.open("grammar.lark", rel_to=__file__, parser="lalr", start="start")


class _PendingRel:
    """Relation quantifier whose arity is decided after its body is read."""

    def __init__(self, universal: bool, name: str, arity: Optional[int], default: int, body):
        self.universal = universal
        self.name = name
        self.arity = arity
        self.default = default
        self.body = body


def _check_name(token: Token) -> str:
    name = str(token)
    if name in RESERVED:
        raise FormulaSyntaxError(f"reserved word {name!r} used as a variable",
                                 token.line, token.column)
    return name


@v_args(inline=True)
class FormulaBuilder(Transformer):
    """Builds AST nodes bottom-up; relation quantifier arities stay pending."""

    def start(self, *items):
        *decls, formula = items
        return dict(decls), formula

    def decl(self, name, arity):
        return _check_name(name), int(arity)

    # connectives
    def iff(self, a, b):
        return Iff(a, b)

    def implies(self, a, b):
        return Implies(a, b)

    def or_(self, a, b):
        return Or(a, b)

    def and_(self, a, b):
        return And(a, b)

    def not_(self, a):
        return Not(a)

    # quantifiers
    def _quantifier(self, universal, name, arity, body, default, relation_only):
        text = _check_name(name)
        if arity is None and not relation_only and text[0].islower():
            return (ForallObj if universal else ExistsObj)(text, body)
        return _PendingRel(universal, text, None if arity is None else int(arity), default, body)

    def forall_(self, name, arity, body):
        return self._quantifier(True, name, arity, body, 1, False)

    def exists_(self, name, arity, body):
        return self._quantifier(False, name, arity, body, 1, False)

    def forall2(self, name, arity, body):
        return self._quantifier(True, name, arity, body, 2, True)

    def exists2(self, name, arity, body):
        return self._quantifier(False, name, arity, body, 2, True)

    # atoms
    def member1(self, term, name):
        return Membership((term,), RelVar(_check_name(name), 1))

    def apply(self, name, *terms):
        return Membership(tuple(terms), RelVar(_check_name(name), len(terms)))

    def eq(self, a, b):
        return Equal(a, b)

    def neq(self, a, b):
        return Not(Equal(a, b))

    def leq(self, a, b):
        return Leq(a, b)

    def bijection(self, f, x, y):
        return macros.bijection(RelVar(_check_name(f), 2), RelVar(_check_name(x), 1),
                                RelVar(_check_name(y), 1))

    def true_(self):
        return Truth(True)

    def false_(self):
        return Truth(False)

    # terms
    def plus(self, a, b):
        return Plus(a, b)

    def times(self, a, b):
        return Times(a, b)

    def var(self, name):
        return ObjVar(_check_name(name))

    def num(self, value):
        return Num(int(value))

    def zero(self):
        return Const("Zero")

    def succ(self, t):
        return Succ(t)

    def hash(self, body):
        return Abstraction(AbsOp.HASH, body)

    def ext(self, body):
        return Abstraction(AbsOp.EXT, body)

    def setvar(self, name):
        return RelVar(_check_name(name), 1)

    def emptyset(self):
        return EmptySet()


def _usages(node, name: str, out: list[int]) -> None:
    """Arities at which relation ``name`` is used freely inside a raw tree."""
    if isinstance(node, _PendingRel):
        if node.name != name:
            _usages(node.body, name, out)
        return
    if isinstance(node, (ForallRel, ExistsRel)):
        if node.name != name:
            _usages(node.body, name, out)
        return
    if isinstance(node, Membership) and node.rel.name == name:
        out.append(node.rel.arity)
    for t in atom_terms(node):
        for sub in iter_terms(t):
            if isinstance(sub, Abstraction) and isinstance(sub.body, RelVar) and sub.body.name == name:
                out.append(1)
    for child in subformulas(node):
        _usages(child, name, out)


def _resolve(node, scope: dict[str, int]) -> Formula:
    """Fix pending arities and check every relation occurrence against its binder."""
    if isinstance(node, _PendingRel):
        found: list[int] = []
        _usages(node.body, node.name, found)
        arity = node.arity
        for used in found:
            if arity is None:
                arity = used
            elif used != arity:
                raise ArityMismatchError(node.name, arity, used)
        arity = arity if arity is not None else node.default
        body = _resolve(node.body, {**scope, node.name: arity})
        return (ForallRel if node.universal else ExistsRel)(node.name, arity, body)

    if isinstance(node, Membership):
        _check_arity(node.rel, scope)
    for t in atom_terms(node):
        for sub in iter_terms(t):
            if isinstance(sub, Abstraction) and isinstance(sub.body, RelVar):
                _check_arity(sub.body, scope)
    children = subformulas(node)
    if not children:
        return node
    return rebuild(node, [_resolve(c, scope) for c in children])


def _check_arity(rel: RelVar, scope: dict[str, int]) -> None:
    expected = scope.get(rel.name)
    if expected is not None and expected != rel.arity:
        raise ArityMismatchError(rel.name, expected, rel.arity)


def _free_arities(node, bound: frozenset, seen: dict[str, int]) -> None:
    if isinstance(node, _PendingRel) or isinstance(node, (ForallRel, ExistsRel)):
        _free_arities(node.body, bound | {node.name}, seen)
        return
    rels = []
    if isinstance(node, Membership):
        rels.append(node.rel)
    for t in atom_terms(node):
        for sub in iter_terms(t):
            if isinstance(sub, Abstraction) and isinstance(sub.body, RelVar):
                rels.append(sub.body)
    for rel in rels:
        if rel.name in bound:
            continue
        if rel.name in seen and seen[rel.name] != rel.arity:
            raise ArityMismatchError(rel.name, seen[rel.name], rel.arity)
        seen.setdefault(rel.name, rel.arity)
    for child in subformulas(node):
        _free_arities(child, bound, seen)


def parse_formula(text: str) -> Formula:
    """Parse surface text into a formula.

    Args:
        text: Optional ``rel R:n;`` declarations followed by one formula

    Returns:
        Formula: The AST, with the ``bijection`` macro expanded

    Raises:
        FormulaSyntaxError: Text does not follow the grammar
        ArityMismatchError: A relation variable is used with two arities
    """
    try:
        tree = _lark().parse(text)
        decls, raw = FormulaBuilder().transform(tree)
    except UnexpectedInput as e:
        line = getattr(e, "line", None)
        column = getattr(e, "column", None)
        logger.debug(f"Syntax error in {text!r}: {e}")
        raise FormulaSyntaxError("unexpected input", line if line != -1 else None,
                                 column if column != -1 else None) from e
    except VisitError as e:
        if isinstance(e.orig_exc, WorkbenchError):
            raise e.orig_exc from e
        raise

    seen: dict[str, int] = {}
    _free_arities(raw, frozenset(), seen)
    for name, arity in decls.items():
        if name in seen and seen[name] != arity:
            raise ArityMismatchError(name, arity, seen[name])
    return _resolve(raw, {})
