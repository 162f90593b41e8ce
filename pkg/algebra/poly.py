"""Exact univariate polynomials over the rationals.

``Poly`` stores its coefficients lowest degree first (``coeffs[i]`` multiplies ``x**i``,
so the leading coefficient is last). All heavy lifting is delegated to sympy's ``QQ``
polynomials; no floating point value ever decides anything here.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import sympy

from common.errors import UnsupportedShape, ZeroPolynomialError

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")

Number = Union[int, Fraction]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def to_rational(value: Number) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __post_init__(self):
        coeffs = [to_fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # construction --------------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Poly":
        p = cls.constant(1)
        for r in roots:
            p = p * cls((-to_fraction(r), 1))
        return p

    @classmethod
    def from_sympy(cls, p: sympy.Poly) -> "Poly":
        return cls(tuple(reversed([to_fraction(c) for c in p.all_coeffs()])))

    @classmethod
    def from_expr(cls, expr: sympy.Expr, var: sympy.Symbol = X) -> "Poly":
        extra = expr.free_symbols - {var}
        if extra:
            raise UnsupportedShape(f"unexpected symbols {sorted(map(str, extra))} in {expr}")
        return cls.from_sympy(sympy.Poly(expr, var, domain=sympy.QQ))

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Read ``"x^3 - 2*x + 1/2"``."""
        from algebra.conditions import parse_expression
        return cls.from_expr(parse_expression(text))

    def to_sympy(self) -> sympy.Poly:
        coeffs = [to_rational(c) for c in reversed(self.coeffs)] or [sympy.Integer(0)]
        return sympy.Poly(coeffs, X, domain=sympy.QQ)

    def as_expr(self) -> sympy.Expr:
        return self.to_sympy().as_expr()

    # queries -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, value: Number) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def sign_at(self, value: Number) -> int:
        v = self(value)
        return (v > 0) - (v < 0)

    # arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(tuple(p + q for p, q in zip(a, b)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        q, r = self.to_sympy().div(other.to_sympy())
        return Poly.from_sympy(q), Poly.from_sympy(r)

    def exquo(self, other: "Poly") -> "Poly":
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return quotient

    def divides(self, other: "Poly") -> bool:
        return divmod(other, self)[1].is_zero()

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomialError("the zero polynomial has no monic form")
        return Poly(tuple(c / self.leading for c in self.coeffs))

    def compose(self, inner: "Poly") -> "Poly":
        result = Poly(())
        for c in reversed(self.coeffs):
            result = result * inner + Poly.constant(c)
        return result

    # text ----------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.parse(text)


ZERO = Poly(())
ONE = Poly.constant(1)


def _require_nonzero(p: Poly, what: str) -> None:
    if p.is_zero():
        raise ZeroPolynomialError(f"{what} of the zero polynomial")


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    if p.is_zero() and q.is_zero():
        return ZERO
    return Poly.from_sympy(p.to_sympy().gcd(q.to_sympy())).monic()


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` made monic.

    Raises:
        ZeroPolynomialError: ``p`` is zero
    """
    _require_nonzero(p, "squarefree part")
    if p.degree == 0:
        return ONE
    return p.exquo(gcd(p, p.derivative())).monic()


def distinct_root_count(p: Poly) -> int:
    """Number of distinct roots in the algebraic closure."""
    return squarefree_part(p).degree


def sturm(p: Poly) -> list[Poly]:
    _require_nonzero(p, "Sturm sequence")
    return [Poly.from_sympy(s) for s in sympy.sturm(p.to_sympy())]


def sign_variations(chain: list[Poly], value: Number) -> int:
    signs = [s for s in (q.sign_at(value) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_variations_at_infinity(chain: list[Poly], positive: bool) -> int:
    signs = []
    for q in chain:
        s = (q.leading > 0) - (q.leading < 0)
        if not positive and q.degree % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_root_count(p: Poly) -> int:
    """Distinct real roots, read off the Sturm chain over the whole line."""
    chain = sturm(p)
    return _sign_variations_at_infinity(chain, False) - _sign_variations_at_infinity(chain, True)


def irreducible_factors(p: Poly) -> list[Poly]:
    """Monic irreducible factors of the squarefree part, each listed once."""
    _require_nonzero(p, "factorization")
    _, factors = p.to_sympy().factor_list()
    return sorted((Poly.from_sympy(f).monic() for f, _ in factors if f.degree() > 0),
                  key=lambda f: (f.degree, f.coeffs))
