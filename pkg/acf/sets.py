"""Definable subsets of an algebraically closed field of characteristic zero, one variable.

Such a set is finite or cofinite: the roots of a monic squarefree rational polynomial, or
their complement. The number of a set is its size when finite and ``-(m + 1)`` when its
complement has ``m`` elements.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Literal, Optional

from algebra.conditions import parse_acf_text
from algebra.poly import (
    ONE, Number, Poly, distinct_root_count, gcd, irreducible_factors, squarefree_part,
)
from common.errors import PreconditionViolation

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    FINITE = "finite"
    COFINITE = "cofinite"


class SetOp(str, Enum):
    UNION = "union"
    INTERSECT = "intersect"
    COMPLEMENT = "complement"
    DIFFERENCE = "difference"


@dataclass(frozen=True)
class AcfSet:
    base: Poly
    mode: Mode

    def __post_init__(self):
        if self.base.is_zero() or self.base.leading != 1:
            raise PreconditionViolation("canonical", f"base {self.base} must be monic")
        if squarefree_part(self.base) != self.base:
            raise PreconditionViolation("canonical", f"base {self.base} must be squarefree")

    @classmethod
    def roots(cls, p: Poly) -> "AcfSet":
        """Zero set of ``p``; the zero polynomial gives the whole field."""
        if p.is_zero():
            return cls.full()
        return cls(squarefree_part(p), Mode.FINITE)

    @classmethod
    def coroots(cls, p: Poly) -> "AcfSet":
        return complement(cls.roots(p))

    @classmethod
    def of_points(cls, points) -> "AcfSet":
        return cls.roots(Poly.from_roots(set(points)))

    @classmethod
    def empty(cls) -> "AcfSet":
        return cls(ONE, Mode.FINITE)

    @classmethod
    def full(cls) -> "AcfSet":
        return cls(ONE, Mode.COFINITE)

    @classmethod
    def parse(cls, text: str) -> "AcfSet":
        """Read ``roots(x^2+1)`` or ``co-roots(x^2+1)``."""
        mode, expr = parse_acf_text(text)
        p = Poly.from_expr(expr)
        return cls.roots(p) if mode == "finite" else cls.coroots(p)

    def contains(self, value: Number) -> bool:
        on_base = self.base(value) == 0
        return on_base if self.mode == Mode.FINITE else not on_base

    def __str__(self) -> str:
        prefix = "roots" if self.mode == Mode.FINITE else "co-roots"
        return f"{prefix}({self.base})"

    def to_json(self) -> dict:
        return {"base": str(self.base), "mode": self.mode.value}

    @classmethod
    def from_json(cls, data: dict) -> "AcfSet":
        return cls(Poly.parse(data["base"]), Mode(data["mode"]))


@dataclass(frozen=True)
class CardClass:
    kind: Literal["finite", "cofinite"]
    n: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n}


def complement(X: AcfSet) -> AcfSet:
    flipped = Mode.COFINITE if X.mode == Mode.FINITE else Mode.FINITE
    return AcfSet(X.base, flipped)


def _union(X: AcfSet, Y: AcfSet) -> AcfSet:
    if X.mode == Mode.FINITE and Y.mode == Mode.FINITE:
        return AcfSet(squarefree_part(X.base * Y.base), Mode.FINITE)
    if X.mode == Mode.COFINITE and Y.mode == Mode.COFINITE:
        return AcfSet(gcd(X.base, Y.base), Mode.COFINITE)
    finite, cofinite = (X, Y) if X.mode == Mode.FINITE else (Y, X)
    # the cofinite side loses the exceptions the finite side fills in
    return AcfSet(cofinite.base.exquo(gcd(cofinite.base, finite.base)).monic(), Mode.COFINITE)


def acf_algebra(op: SetOp, X: AcfSet, Y: Optional[AcfSet] = None) -> AcfSet:
    """Union, intersection, complement or difference in canonical form."""
    op = SetOp(op)
    if op == SetOp.COMPLEMENT:
        return complement(X)
    if Y is None:
        raise PreconditionViolation("operand", f"{op.value} needs two sets")
    if op == SetOp.UNION:
        return _union(X, Y)
    if op == SetOp.INTERSECT:
        return complement(_union(complement(X), complement(Y)))
    return complement(_union(complement(X), Y))


def acf_card(X: AcfSet) -> CardClass:
    return CardClass(X.mode.value, distinct_root_count(X.base))


def acf_number(X: AcfSet) -> int:
    """``|X|`` for finite X, ``-(|k \\ X| + 1)`` for cofinite X."""
    card = acf_card(X)
    return card.n if card.kind == "finite" else -(card.n + 1)


def acf_hume_equiv(X: AcfSet, Y: AcfSet) -> bool:
    """Definable bijection exists iff the cardinality classes agree."""
    return acf_card(X) == acf_card(Y)


def witness_set(number: int) -> AcfSet:
    """Canonical set with the given number: ``{0..n-1}`` or the complement of ``{0..m-1}``."""
    if number >= 0:
        return AcfSet.of_points(range(number))
    return complement(AcfSet.of_points(range(-number - 1)))


def some_element(X: AcfSet) -> Optional[Fraction]:
    """A rational member of X, if one is found among the integers near zero."""
    if X.mode == Mode.FINITE:
        for root in _rational_roots(X.base):
            return root
        return None
    k = 0
    while True:
        for candidate in (k, -k):
            if X.base(candidate) != 0:
                return Fraction(candidate)
        k += 1


def _rational_roots(p: Poly) -> list[Fraction]:
    return sorted(-f.coeffs[0] for f in irreducible_factors(p) if f.degree == 1)
