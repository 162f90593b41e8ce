"""Collision oracle: two distinct algebraic points with the same image under a polynomial.

In characteristic zero a polynomial self-map of the algebraic closure is injective exactly
when it has degree one. For higher degree a rational value ``c`` is chosen so that
``p - c`` has at least two distinct roots, and two of them are returned.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

import sympy

from algebra.algreal import real_roots
from algebra.poly import Poly, X, irreducible_factors, squarefree_part, to_fraction
from common.errors import ConstantPolynomialError, SizeLimitExceeded
from config.settings import settings

logger = logging.getLogger(__name__)

_Z = sympy.Symbol("z")


@dataclass(frozen=True)
class CollisionPoint:
    """Root number ``index`` of ``minpoly`` in sympy's root order (reals first, ascending)."""

    minpoly: Poly
    index: int
    real: bool

    def root(self) -> sympy.CRootOf:
        return sympy.CRootOf(self.minpoly.to_sympy().as_expr(), self.index)

    def to_json(self) -> dict:
        return {"poly": str(self.minpoly), "index": self.index, "real": self.real}


@dataclass(frozen=True)
class Collision:
    value: object
    first: CollisionPoint
    second: CollisionPoint

    def to_json(self) -> dict:
        return {"value": str(self.value), "points": [self.first.to_json(), self.second.to_json()]}


def _candidates() -> Iterator[int]:
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _points(q: Poly) -> list[CollisionPoint]:
    reals = real_roots(q)
    if len(reals) >= 2:
        return [CollisionPoint(r.minpoly, r.index, True) for r in reals[:2]]
    points: list[CollisionPoint] = []
    for f in irreducible_factors(q):
        n_real = f.to_sympy().count_roots()
        for i in range(f.degree):
            points.append(CollisionPoint(f, i, i < n_real))
    points.sort(key=lambda pt: not pt.real)
    return points[:2]


def collision_witness(p: Poly, scan_limit: Optional[int] = None) -> Optional[Collision]:
    """Two distinct roots of ``p - c`` for some rational ``c``, or ``None`` when deg p = 1.

    Raises:
        ConstantPolynomialError: ``p`` has degree <= 0
    """
    if p.degree < 1:
        raise ConstantPolynomialError(f"{p} is constant")
    if p.degree == 1:
        return None
    scan_limit = settings.collision_scan_limit if scan_limit is None else scan_limit
    for tried, c in enumerate(_candidates()):
        if tried >= scan_limit:
            break
        q = p - Poly.constant(c)
        if squarefree_part(q).degree >= 2:
            first, second = _points(q)
            logger.info(f"Collision of {p} at value {c}: {first} / {second}")
            return Collision(to_fraction(c), first, second)
    # p - c is squarefree for all but fewer than deg p values of c
    raise SizeLimitExceeded(f"no collision value found for {p} within {scan_limit} tries")


def _image_polynomial(p: Poly, point: CollisionPoint) -> sympy.Poly:
    """Squarefree part of ``res_y(f(y), z - p(y))``: the values of p on the conjugates."""
    y = sympy.Symbol("y")
    f = point.minpoly.as_expr().subs(X, y)
    g = _Z - p.as_expr().subs(X, y)
    resultant = sympy.Poly(sympy.resultant(f, g, y), _Z, domain=sympy.QQ)
    return resultant.sqf_part().monic()


def verify_collision(p: Poly, collision: Collision) -> bool:
    """Exact check that ``p`` agrees on both points and that they differ.

    Each image polynomial is linear, so ``p`` is constant on the conjugates of each point,
    and the two linear polynomials coincide, so the constants are equal.
    """
    a, b = collision.first, collision.second
    if (a.minpoly, a.index) == (b.minpoly, b.index):
        return False
    image_a, image_b = _image_polynomial(p, a), _image_polynomial(p, b)
    return image_a.degree() == 1 and image_a == image_b
