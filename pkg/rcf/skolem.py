"""Choosing a square root: possible over the reals, impossible over an algebraically closed field.

Over the real algebraic numbers ``x^2 - a = 0 & x >= 0`` picks exactly one root for every
positive ``a``, and the choice set ``[0, +oo)`` is an ordinary one-variable definable set.
Over an algebraically closed field every definable subset of the line is finite or cofinite,
so ``[0, +oo)`` has no counterpart, and when ``x^2 - a`` is irreducible over the rationals its
two roots are conjugate and no parameter-free condition separates them.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence

from pydantic import BaseModel

from acf.sets import AcfSet, acf_number
from acf.theta import ThetaFamily
from algebra.poly import Poly, irreducible_factors
from common.errors import UnsupportedShape
from rcf.cells import RcfSet, rcf_invariant

logger = logging.getLogger(__name__)

NONNEGATIVE = "x >= 0"


class RootChoice(BaseModel):
    a: str
    rcf_choice: list[str]
    rcf_choice_size: int
    acf_roots: int
    irreducible: bool


class SkolemReport(BaseModel):
    choice_set: dict
    choice_cells: list[str]
    choice_invariant: dict
    acf_rejection: Optional[str] = None
    acf_modes: list[str]
    square_roots: list[RootChoice]


def _root_choice(a: Fraction) -> RootChoice:
    p = Poly((-a, Fraction(0), Fraction(1)))
    chosen = RcfSet.parse(f"x^2 - ({a}) = 0 & {NONNEGATIVE}")
    return RootChoice(
        a=str(a),
        rcf_choice=[str(c) for c in chosen.cells],
        rcf_choice_size=len(chosen.cells),
        acf_roots=acf_number(AcfSet.roots(p)),
        irreducible=len(irreducible_factors(p)) == 1,
    )


def rcf_skolem_demo(values: Sequence = (2, 3, 4, Fraction(1, 4), 5)) -> SkolemReport:
    """Contrast the nonnegative square-root choice on both backends.

    Args:
        values: Positive rationals ``a`` whose square roots are chosen

    Returns:
        SkolemReport: the choice set ``[0, +oo)`` with its cells and invariant, the reason
        the algebraically closed backend refuses the order condition, and one row per ``a``
    """
    choice = RcfSet.parse(NONNEGATIVE)
    try:
        ThetaFamily.parse(NONNEGATIVE)
        rejection = None
    except UnsupportedShape as exc:
        rejection = exc.message
    rows = [_root_choice(Fraction(v)) for v in values if Fraction(v) > 0]
    logger.info(f"Square-root choice on {len(rows)} values, cells of [0, +oo): {choice}")
    return SkolemReport(
        choice_set=choice.to_json(),
        choice_cells=[str(c) for c in choice.cells],
        choice_invariant=rcf_invariant(choice).to_json(),
        acf_rejection=rejection,
        acf_modes=["finite", "cofinite"],
        square_roots=rows,
    )
