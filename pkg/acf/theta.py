"""Uniform definability of ``#`` over ACF families ``theta(x, y1..yk)``.

For a Boolean combination theta of polynomial equations in x with parameters, the formula

    theta'(z, y) = OR_{i <= N} (|theta(., y)| = i and z = i) or (|not theta(., y)| = i and z = -(i+1))

defines the number of ``theta(., a)`` uniformly in the parameters, where N bounds the
number of roots (the sum of the x-degrees of the atoms). Cardinality atoms use the
distinct-witnesses encoding. ``ThetaPrime.values`` evaluates the emitted formula itself, settling
each witnesses block by the number of the set it counts.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Mapping, Optional, Sequence

import sympy

from acf.sets import AcfSet, SetOp, acf_algebra, acf_number, complement
from algebra.conditions import Condition, condition_symbols, parse_conditions
from algebra.poly import X, Poly, to_rational
from common.errors import UnsupportedShape
from logic import macros
from logic.formula import (
    And, Equal, ExistsObj, ForallObj, Formula, Implies, Not, Num, ObjVar, Or, Plus, Term, Times,
    Truth, conj, disj, fresh_name, substitute,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThetaFamily:
    """A parametric one-variable ACF condition in disjunctive normal form."""

    text: str
    dnf: tuple
    params: tuple

    @classmethod
    def parse(cls, text: str, params: Optional[Sequence[str]] = None) -> "ThetaFamily":
        dnf = parse_conditions(text)
        for conjunction in dnf:
            for condition in conjunction:
                if condition.relation not in ("=", "!="):
                    raise UnsupportedShape(
                        f"{condition.relation!r} is not expressible over an algebraically closed field")
        found = sorted(str(s) for s in condition_symbols(dnf) if s != X)
        if params is None:
            params = found
        unknown = set(found) - set(params)
        if unknown:
            raise UnsupportedShape(f"undeclared parameters {sorted(unknown)}")
        if "x" in params:
            raise UnsupportedShape("x is the set variable and cannot be a parameter")
        return cls(text, dnf, tuple(params))

    def atoms(self) -> list[Condition]:
        return [c for conjunction in self.dnf for c in conjunction]

    def degree_bound(self) -> int:
        """Sum over atoms of the x-degree of ``lhs - rhs``."""
        total = 0
        for c in self.atoms():
            if c.expr != 0:
                total += max(sympy.degree(c.expr, X), 0)
        return total

    def instance(self, values: Mapping[str, object]) -> AcfSet:
        """The set ``theta(., a)`` for rational parameter values ``a``."""
        subs = {sympy.Symbol(name): to_rational(Fraction(values[name])) for name in self.params}
        union = AcfSet.empty()
        for conjunction in self.dnf:
            part = AcfSet.full()
            for c in conjunction:
                p = Poly.from_expr(sympy.expand(c.expr.subs(subs)))
                atom = AcfSet.roots(p) if c.relation == "=" else AcfSet.coroots(p)
                part = acf_algebra(SetOp.INTERSECT, part, atom)
            union = acf_algebra(SetOp.UNION, union, part)
        return union

    def formula(self, var: str = "x") -> Formula:
        """theta as a formula over the semiring language, integer coefficients only."""
        disjuncts = []
        for conjunction in self.dnf:
            disjuncts.append(conj(_atom(c, var, self.params) for c in conjunction))
        return disj(disjuncts)


def _power(base: Term, exponent: int) -> Optional[Term]:
    if exponent == 0:
        return None
    term = base
    for _ in range(exponent - 1):
        term = Times(term, base)
    return term


def _monomial(coefficient: int, exponents, names) -> Term:
    factors = [f for f in (_power(ObjVar(n), e) for n, e in zip(names, exponents)) if f is not None]
    if coefficient != 1 or not factors:
        factors.insert(0, Num(coefficient))
    return reduce(Times, factors)


def _side(monomials) -> Term:
    if not monomials:
        return Num(0)
    return reduce(Plus, monomials)


def _atom(c: Condition, var: str, params: tuple) -> Formula:
    """``P = Q`` (or its negation) with both sides having nonnegative integer coefficients."""
    gens = [X] + [sympy.Symbol(p) for p in params]
    names = [var] + list(params)
    poly = sympy.Poly(c.expr, *gens, domain=sympy.QQ)
    terms = [(e, coef) for e, coef in poly.terms() if coef != 0]
    scale = lcm(*(int(sympy.Rational(coef).q) for _, coef in terms)) if terms else 1
    left, right = [], []
    for exponents, coef in terms:
        value = sympy.Rational(coef) * scale
        monomial = _monomial(abs(int(value)), exponents, names)
        (left if value > 0 else right).append(monomial)
    equation = Equal(_side(left), _side(right))
    return equation if c.relation == "=" else Not(equation)


@dataclass(frozen=True)
class ThetaPrime:
    family: ThetaFamily
    n_theta: int
    value_var: str
    formula: Formula

    def holds_at(self, z: int, params: Mapping[str, object]) -> bool:
        """Truth of the formula at ``z`` and the parameter values."""
        env = {name: to_rational(Fraction(params[name])) for name in self.family.params}
        env[self.value_var] = sympy.Integer(z)
        return _evaluate(self.formula, env, {})

    def values(self, params: Mapping[str, object]) -> list[int]:
        """Integers ``z`` satisfying the formula at ``params``.

        Only ``-(N+1)..N`` can satisfy one of the value atoms, so the scan is complete.
        """
        env = {name: to_rational(Fraction(params[name])) for name in self.family.params}
        blocks: dict = {}
        found = []
        for z in range(-(self.n_theta + 1), self.n_theta + 1):
            if _evaluate(self.formula, {**env, self.value_var: sympy.Integer(z)}, blocks):
                found.append(z)
        return found

    def solution_set(self, params: Mapping[str, object]) -> AcfSet:
        return AcfSet.of_points(self.values(params))


def _expr(t: Term, env: Mapping[str, sympy.Expr], var: Optional[str] = None) -> sympy.Expr:
    if isinstance(t, Num):
        return sympy.Integer(t.value)
    if isinstance(t, ObjVar):
        if t.name == var:
            return X
        if t.name not in env:
            raise UnsupportedShape(f"{t.name} is not bound")
        return env[t.name]
    if isinstance(t, Plus):
        return _expr(t.left, env, var) + _expr(t.right, env, var)
    if isinstance(t, Times):
        return _expr(t.left, env, var) * _expr(t.right, env, var)
    raise UnsupportedShape(f"{type(t).__name__} is not a semiring term")


def _defined_set(f: Formula, var: str, env: Mapping[str, sympy.Expr]) -> AcfSet:
    """``{v : f(v)}`` for a quantifier-free ``f`` in the one free variable ``var``."""
    if isinstance(f, Truth):
        return AcfSet.full() if f.value else AcfSet.empty()
    if isinstance(f, Equal):
        expr = sympy.expand(_expr(f.left, env, var) - _expr(f.right, env, var))
        return AcfSet.roots(Poly.from_expr(expr))
    if isinstance(f, Not):
        return complement(_defined_set(f.body, var, env))
    if isinstance(f, (And, Or)):
        op = SetOp.INTERSECT if isinstance(f, And) else SetOp.UNION
        return acf_algebra(op, _defined_set(f.left, var, env), _defined_set(f.right, var, env))
    raise UnsupportedShape(f"{type(f).__name__} inside a cardinality block")


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _witness_block(f: Formula, env: Mapping[str, sympy.Expr]) -> bool:
    """Decide ``exists w1..wn distinct. H(wi) and forall v. (H(v) -> v = some wi)``.

    The block holds iff ``{v : H(v)}`` has exactly n elements.
    """
    names = []
    while isinstance(f, ExistsObj):
        names.append(f.name)
        f = f.body
    for part in _conjuncts(f):
        if isinstance(part, ForallObj) and isinstance(part.body, Implies):
            S = _defined_set(part.body.left, part.name, env)
            return acf_number(S) == len(names)
    raise UnsupportedShape("quantifier outside a distinct-witnesses block")


def _evaluate(f: Formula, env: Mapping[str, sympy.Expr], blocks: dict) -> bool:
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Equal):
        return sympy.expand(_expr(f.left, env) - _expr(f.right, env)) == 0
    if isinstance(f, Not):
        return not _evaluate(f.body, env, blocks)
    if isinstance(f, And):
        return _evaluate(f.left, env, blocks) and _evaluate(f.right, env, blocks)
    if isinstance(f, Or):
        return _evaluate(f.left, env, blocks) or _evaluate(f.right, env, blocks)
    if isinstance(f, Implies):
        return not _evaluate(f.left, env, blocks) or _evaluate(f.right, env, blocks)
    if isinstance(f, (ExistsObj, ForallObj)):
        # blocks never mention the value variable
        if f not in blocks:
            blocks[f] = _witness_block(f, env)
        return blocks[f]
    raise UnsupportedShape(f"{type(f).__name__} in theta'")


def acf_theta_prime(theta, params: Optional[Sequence[str]] = None) -> ThetaPrime:
    """Build the uniform definition of ``#(theta(., y))``.

    Args:
        theta: ``ThetaFamily`` or condition text such as ``"x*y = 1"``
        params: Parameter names; defaults to every symbol other than x, sorted

    Raises:
        UnsupportedShape: order relations, undeclared symbols or non-constant division
    """
    family = theta if isinstance(theta, ThetaFamily) else ThetaFamily.parse(theta, params)
    n_theta = family.degree_bound()
    avoid = set(family.params) | {"x"}
    z = fresh_name("z", avoid)
    avoid.add(z)
    theta_x = family.formula("x")

    def holds(v: ObjVar) -> Formula:
        return substitute(theta_x, {"x": v})

    def fails(v: ObjVar) -> Formula:
        return Not(holds(v))

    disjuncts = []
    zv = ObjVar(z)
    for i in range(n_theta + 1):
        disjuncts.append(conj([macros.exactly(i, holds, avoid), Equal(zv, Num(i))]))
        disjuncts.append(conj([macros.exactly(i, fails, avoid),
                               Equal(Plus(zv, Num(i + 1)), Num(0))]))
    formula = disj(disjuncts)
    logger.debug(f"theta' for {family.text!r}: N = {n_theta}, {len(disjuncts)} disjuncts")
    return ThetaPrime(family, n_theta, z, formula)
