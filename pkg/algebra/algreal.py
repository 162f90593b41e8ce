"""Real algebraic numbers as (minimal polynomial, root index) with an isolating interval.

Two AlgReals are equal iff they have the same monic minimal polynomial and the same
index among its real roots; the isolating interval is a cache and does not take part in
comparisons. Rational numbers have a linear minimal polynomial and a degenerate interval.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import total_ordering
from typing import Optional

from algebra.poly import Number, Poly, irreducible_factors, squarefree_part, to_fraction, to_rational
from common.errors import PreconditionViolation, RefinementLimitExceeded
from config.settings import settings

logger = logging.getLogger(__name__)


@total_ordering
@dataclass(frozen=True)
class AlgReal:
    minpoly: Poly
    index: int
    lo: Fraction = field(compare=False)
    hi: Fraction = field(compare=False)

    @classmethod
    def rational(cls, value: Number) -> "AlgReal":
        value = to_fraction(value)
        return cls(Poly((-value, 1)), 0, value, value)

    @property
    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise PreconditionViolation("rational", f"{self} is irrational")
        return -self.minpoly.coeffs[0] / self.minpoly.coeffs[1]

    def bisect(self) -> "AlgReal":
        """Halve the isolating interval, keeping the half with the sign change."""
        if self.is_rational:
            return self
        mid = (self.lo + self.hi) / 2
        s_mid = self.minpoly.sign_at(mid)
        if self.minpoly.sign_at(self.lo) != s_mid:
            return replace(self, hi=mid)
        return replace(self, lo=mid)

    def refined(self, width: Fraction, cap: Optional[int] = None) -> "AlgReal":
        """Copy whose isolating interval is at most ``width`` wide."""
        cap = settings.refinement_iteration_cap if cap is None else cap
        current = self
        steps = 0
        while current.hi - current.lo > width:
            if steps >= cap:
                raise RefinementLimitExceeded(f"could not narrow {self} below {width} in {cap} steps")
            current = current.bisect()
            steps += 1
        return current

    def compare(self, other: "AlgReal", cap: Optional[int] = None) -> int:
        if self == other:
            return 0
        cap = settings.refinement_iteration_cap if cap is None else cap
        a, b = self, other
        for step in range(cap):
            if a.hi < b.lo:
                return -1
            if b.hi < a.lo:
                return 1
            if a.is_rational and b.is_rational:
                return -1 if a.value < b.value else 1
            a, b = a.bisect(), b.bisect()
        logger.debug(f"Comparison of {self} and {other} hit the cap {cap}")
        raise RefinementLimitExceeded(f"could not separate {self} and {other} in {cap} steps")

    def __lt__(self, other: "AlgReal") -> bool:
        return self.compare(other) < 0

    def compare_rational(self, value: Number) -> int:
        """Sign of ``self - value``."""
        return self.compare(AlgReal.rational(value))

    def approx(self) -> float:
        """Midpoint of a narrow enclosure, for plotting only."""
        r = self.refined(Fraction(1, 2 ** 20))
        return float((r.lo + r.hi) / 2)

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.value)
        return f"root{self.index}({self.minpoly})"

    def to_json(self) -> dict:
        return {"poly": str(self.minpoly), "lo": str(self.lo), "hi": str(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "AlgReal":
        """Root of ``data["poly"]`` in the half-open interval ``(lo, hi]``."""
        poly = Poly.parse(data["poly"])
        lo, hi = Fraction(data["lo"]), Fraction(data["hi"])
        inside = [r for r in real_roots(poly)
                  if (r.compare_rational(lo) > 0 or (lo == hi and r.compare_rational(lo) == 0))
                  and r.compare_rational(hi) <= 0]
        if len(inside) != 1:
            raise PreconditionViolation("isolating_interval",
                                        f"({lo}, {hi}] holds {len(inside)} roots of {poly}")
        return inside[0]


def _factor_roots(f: Poly) -> list[AlgReal]:
    if f.degree == 1:
        return [AlgReal.rational(-f.coeffs[0] / f.coeffs[1])]
    intervals = f.to_sympy().intervals()
    return [AlgReal(f, i, to_fraction(lo), to_fraction(hi))
            for i, ((lo, hi), _) in enumerate(intervals)]


def real_roots(p: Poly) -> list[AlgReal]:
    """All real roots of ``p`` in ascending order, each isolated.

    Raises:
        ZeroPolynomialError: ``p`` is zero
    """
    sqf = squarefree_part(p)
    roots: list[AlgReal] = []
    for f in irreducible_factors(sqf):
        roots.extend(_factor_roots(f))
    roots.sort()
    logger.debug(f"Isolated {len(roots)} real roots of {p}")
    return roots


def sign_at(p: Poly, a: AlgReal, cap: Optional[int] = None) -> int:
    """Exact sign of ``p`` at the algebraic number ``a``."""
    if p.is_zero():
        return 0
    if a.is_rational:
        return p.sign_at(a.value)
    if a.minpoly.divides(p):
        return 0
    cap = settings.refinement_iteration_cap if cap is None else cap
    sp = p.to_sympy()
    current = a
    for _ in range(cap):
        if sp.count_roots(to_rational(current.lo), to_rational(current.hi)) == 0:
            return p.sign_at((current.lo + current.hi) / 2)
        current = current.bisect()
    raise RefinementLimitExceeded(f"could not isolate {a} from the roots of {p}")


def _simplest_in(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator (then smallest magnitude) in ``(lo, hi)``."""
    if lo < 0 < hi:
        return Fraction(0)
    q = 1
    while True:
        p_lo = math.floor(lo * q) + 1
        p_hi = math.ceil(hi * q) - 1
        if p_lo <= p_hi:
            p = p_lo if p_lo > 0 else p_hi
            return Fraction(p, q)
        q += 1


def rational_between(a: Optional[AlgReal], b: Optional[AlgReal]) -> Fraction:
    """A simple rational strictly between ``a`` and ``b``; ``None`` stands for an infinite end."""
    if a is None and b is None:
        return Fraction(0)
    if a is None:
        upper = b.value if b.is_rational else b.lo
        return Fraction(min(0, math.ceil(upper) - 1))
    if b is None:
        lower = a.value if a.is_rational else a.hi
        return Fraction(max(0, math.floor(lower) + 1))
    if a.compare(b) >= 0:
        raise PreconditionViolation("order", f"{a} is not below {b}")
    while True:
        upper_a = a.value if a.is_rational else a.hi
        lower_b = b.value if b.is_rational else b.lo
        if upper_a < lower_b:
            return _simplest_in(upper_a, lower_b)
        a, b = a.bisect(), b.bisect()
