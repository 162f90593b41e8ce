"""Parsing of polynomial text and sign conditions into sympy expressions."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Mapping

import sympy
from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from common.errors import FormulaSyntaxError, UnsupportedShape, WorkbenchError

logger = logging.getLogger(__name__)

Relation = Literal["<", "<=", "=", "!=", ">", ">="]

#: Signs of ``lhs - rhs`` that satisfy each relation.
ALLOWED_SIGNS: dict[str, frozenset[int]] = {
    "<": frozenset({-1}),
    "<=": frozenset({-1, 0}),
    "=": frozenset({0}),
    "!=": frozenset({-1, 1}),
    ">": frozenset({1}),
    ">=": frozenset({0, 1}),
}

_RESERVED = {"roots"}


@lru_cache(maxsize=1)
def _lark() -> Lark:
    return Lark.open("conditions.lark", rel_to=__file__, parser="lalr",
                     start=["conditions", "poly", "acfset"])


@dataclass(frozen=True)
class Condition:
    """``expr REL 0`` where ``expr`` is ``lhs - rhs``."""

    expr: sympy.Expr
    relation: str

    def __str__(self) -> str:
        return f"{sympy.sstr(self.expr)} {self.relation} 0"


@v_args(inline=True)
class _ToSympy(Transformer):
    def number(self, token):
        return sympy.Integer(int(token))

    def symbol(self, token):
        if str(token) in _RESERVED:
            raise FormulaSyntaxError(f"{token!s} is reserved", token.line, token.column)
        return sympy.Symbol(str(token))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b.is_number or b == 0:
            raise UnsupportedShape(f"division by {b} is not a nonzero rational constant")
        return a / b

    def neg(self, a):
        return -a

    def pow(self, a, exponent):
        return a ** int(exponent)

    def poly(self, expr):
        return sympy.expand(expr)

    def condition(self, lhs, relation, rhs):
        return Condition(sympy.expand(lhs - rhs), str(relation))

    def conjunction(self, *conditions):
        return tuple(conditions)

    def disjunction(self, *conjunctions):
        return tuple(conjunctions)

    def roots(self, expr):
        return "finite", sympy.expand(expr)

    def coroots(self, expr):
        return "cofinite", sympy.expand(expr)


def _parse(text: str, start: str):
    try:
        tree = _lark().parse(text, start=start)
        return _ToSympy().transform(tree)
    except UnexpectedInput as e:
        raise FormulaSyntaxError(f"cannot parse {text!r}", e.line, e.column) from e
    except VisitError as e:
        if isinstance(e.orig_exc, WorkbenchError):
            raise e.orig_exc from None
        raise


def parse_expression(text: str) -> sympy.Expr:
    return _parse(text, "poly")


def parse_conditions(text: str) -> tuple[tuple[Condition, ...], ...]:
    """Disjunction of conjunctions of sign conditions."""
    result = _parse(text, "conditions")
    if isinstance(result, Condition):
        return ((result,),)
    if result and isinstance(result[0], Condition):
        return (result,)
    return result


def parse_acf_text(text: str) -> tuple[str, sympy.Expr]:
    """``roots(p)`` or ``co-roots(p)`` as ``(mode, expression)``."""
    return _parse(text, "acfset")


def condition_symbols(dnf) -> set[sympy.Symbol]:
    return {s for conj in dnf for c in conj for s in c.expr.free_symbols}


def instantiate_conditions(dnf, values: Mapping[str, object]):
    """Substitute rational parameter values into every condition of ``dnf``."""
    if not values:
        return dnf
    subs = {sympy.Symbol(name): sympy.Rational(str(value)) for name, value in values.items()}
    return tuple(tuple(Condition(sympy.expand(c.expr.subs(subs)), c.relation) for c in conj)
                 for conj in dnf)
