"""The successor relation P on numbers of the ACF model and the failure of SA there.

``P(n, m)`` holds when some X, Y with ``#X = n`` and ``#Y = m`` satisfy ``X = Y \\ {y}`` for
some ``y`` in Y. Every pseudo-number is an integer, and ``#k = -1`` is a pseudo-number
without a P-successor.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from pydantic import BaseModel

from acf.sets import AcfSet, SetOp, acf_algebra, acf_number, complement, some_element, witness_set
from common.errors import PreconditionViolation
from config.settings import settings

logger = logging.getLogger(__name__)


class SuccessorWitness(BaseModel):
    smaller: dict
    larger: dict
    removed: str


class FamilyCheck(BaseModel):
    family: str
    closed: bool
    hereditary: bool
    escape: Optional[tuple[int, int]] = None
    contains: list[int]


class SaReport(BaseModel):
    scan_bound: int
    witness: int
    witness_successors: list[int]
    families: list[FamilyCheck]
    witness_in_every_passing_family: bool
    verified_scope: str


def successor_witness(n: int, m: int) -> Optional[SuccessorWitness]:
    """Sets ``X = Y \\ {y}`` with ``#X = n`` and ``#Y = m``, if there are any.

    The number of ``Y \\ {y}`` does not depend on which Y with ``#Y = m`` or which ``y`` is
    used, so the canonical witness for ``m`` settles the existential.
    """
    Y = witness_set(m)
    y = some_element(Y)
    if y is None:
        return None
    X = acf_algebra(SetOp.DIFFERENCE, Y, AcfSet.of_points([y]))
    if acf_number(X) != n:
        return None
    return SuccessorWitness(smaller=X.to_json(), larger=Y.to_json(), removed=str(y))


@lru_cache(maxsize=4096)
def acf_successor_P(n: int, m: int) -> bool:
    return successor_witness(n, m) is not None


def successor_closed_form(n: int, m: int) -> bool:
    return (n >= 0 or n <= -2) and m == n + 1


def _check_family(F: AcfSet, window: range) -> FamilyCheck:
    empty = acf_number(AcfSet.empty())
    firsts = [m for m in window if acf_successor_P(empty, m)]
    escape = None
    for a in window:
        if not F.contains(a):
            continue
        for b in window:
            if acf_successor_P(a, b) and not F.contains(b):
                escape = (a, b)
                break
        if escape:
            break
    contains = [a for a in window if F.contains(a)]
    # closed: holds the P-successors of #{} found in the window
    closed = bool(firsts) and all(F.contains(m) for m in firsts)
    return FamilyCheck(family=str(F), closed=closed, hereditary=escape is None,
                       escape=escape, contains=contains)


def default_families() -> list[AcfSet]:
    """Representable candidates for hereditary closed sets."""
    x = AcfSet.of_points
    return [
        complement(x([0])),
        AcfSet.full(),
        complement(x([0, -5])),
        x([1, 2, 3]),
        complement(x([Fraction(1, 2)])),
    ]


def acf_sa_report(scan_bound: Optional[int] = None, families: Optional[list[AcfSet]] = None) -> SaReport:
    """Scan the window ``[-B-1, B+1]`` for a successor of ``#k = -1`` and check families.

    Only representable families and the scanned window are examined; the report says so.
    """
    B = settings.acf_scan_bound if scan_bound is None else scan_bound
    if B < 1:
        raise PreconditionViolation("scan_bound", f"scan bound must be at least 1, got {B}")
    window = range(-B - 1, B + 2)
    witness = acf_number(AcfSet.full())
    successors = [m for m in window if acf_successor_P(witness, m)]
    checks = [_check_family(F, window) for F in (families or default_families())]
    passing = [c for c in checks if c.closed and c.hereditary]
    logger.info(f"SA scan |n| <= {B + 1}: #k = {witness}, successors {successors}, "
                f"{len(passing)}/{len(checks)} families hereditary and closed")
    return SaReport(
        scan_bound=B,
        witness=witness,
        witness_successors=successors,
        families=checks,
        witness_in_every_passing_family=all(witness in c.contains for c in passing),
        verified_scope=f"representable families only, numbers in [{-B - 1}, {B + 1}]",
    )
