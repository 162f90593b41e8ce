"""Analytical-hierarchy classification of second-order formulas.

The formula is put in negation normal form and relation-quantifier blocks are counted
bottom-up. An object quantifier that sits on a spine between two relation quantifiers is
counted as a relation quantifier of the same polarity (a quantifier over singletons). A
spine runs through quantifiers, and through a conjunction or disjunction only when the other
operand has no relation quantifier.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Optional

from logic.formula import (
    And, ForallObj, ForallRel, Formula, OBJ_QUANTIFIERS, Or,
    REL_QUANTIFIERS, iter_formulas, nnf,
)

logger = logging.getLogger(__name__)

Level = Literal["Arithmetical", "Sigma", "Pi"]


@dataclass(frozen=True)
class Classification:
    """``Arithmetical`` (n = 0), ``Sigma`` n or ``Pi`` n with n >= 1."""

    level: Level
    n: int = 0

    def __post_init__(self):
        if (self.level == "Arithmetical") != (self.n == 0):
            raise ValueError(f"inconsistent classification {self.level}/{self.n}")

    @classmethod
    def arithmetical(cls) -> "Classification":
        return cls("Arithmetical", 0)

    @classmethod
    def sigma(cls, n: int) -> "Classification":
        return cls("Sigma", n)

    @classmethod
    def pi(cls, n: int) -> "Classification":
        return cls("Pi", n)

    def dual(self) -> "Classification":
        if self.level == "Arithmetical":
            return self
        return Classification("Pi" if self.level == "Sigma" else "Sigma", self.n)

    def within(self, *allowed: "Classification") -> bool:
        return self in allowed

    def __str__(self) -> str:
        if self.level == "Arithmetical":
            return "Arithmetical"
        return f"{self.level}({self.n})"

    def to_json(self) -> dict:
        return {"level": self.level, "n": self.n}


ARITHMETICAL = Classification.arithmetical()



@dataclass(frozen=True)
class _Bounds:
    """Least Sigma and Pi indices containing a subformula.

    ``lead`` is the kind of the first non-arithmetical quantifier block met, used when both
    indices coincide.
    """

    sigma: int
    pi: int
    lead: Optional[Level] = None

    def result(self) -> Classification:
        if self.sigma < self.pi:
            return Classification.sigma(self.sigma)
        if self.pi < self.sigma:
            return Classification.pi(self.pi)
        if self.sigma == 0:
            return ARITHMETICAL
        return Classification(self.lead, self.sigma)


_ZERO = _Bounds(0, 0)


def _prefix(universal: bool, body: _Bounds) -> _Bounds:
    if universal:
        p = max(body.pi, 1)
        return _Bounds(p + 1, p, "Pi")
    s = max(body.sigma, 1)
    return _Bounds(s, s + 1, "Sigma")


def _combine(left: _Bounds, right: _Bounds) -> _Bounds:
    return _Bounds(max(left.sigma, right.sigma), max(left.pi, right.pi), left.lead or right.lead)


@lru_cache(maxsize=65536)
def contains_relation_quantifier(f: Formula) -> bool:
    return any(isinstance(node, REL_QUANTIFIERS) for node in iter_formulas(f))


@lru_cache(maxsize=65536)
def _reaches(f: Formula) -> bool:
    if isinstance(f, REL_QUANTIFIERS):
        return True
    if isinstance(f, OBJ_QUANTIFIERS):
        return _reaches(f.body)
    if isinstance(f, (And, Or)):
        return ((_reaches(f.left) and not contains_relation_quantifier(f.right))
                or (_reaches(f.right) and not contains_relation_quantifier(f.left)))
    return False


def _bounds(f: Formula, above: bool) -> _Bounds:
    if isinstance(f, REL_QUANTIFIERS):
        return _prefix(isinstance(f, ForallRel), _bounds(f.body, True))
    if isinstance(f, OBJ_QUANTIFIERS):
        body = _bounds(f.body, above)
        if above and _reaches(f.body):
            return _prefix(isinstance(f, ForallObj), body)
        return body
    if isinstance(f, (And, Or)):
        left = _bounds(f.left, above and not contains_relation_quantifier(f.right))
        right = _bounds(f.right, above and not contains_relation_quantifier(f.left))
        return _combine(left, right)
    return _ZERO


def classify(f: Formula) -> Classification:
    """Classify ``f`` as Arithmetical, Sigma(n) or Pi(n).

    Args:
        f: Well-formed formula

    Returns:
        Classification: The level obtained by block counting on the negation normal form
    """
    result = _bounds(nnf(f), False).result()
    logger.debug(f"Classified formula as {result}")
    return result
