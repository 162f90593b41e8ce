"""Cell decompositions of the line adapted to finitely many definable sets."""

import logging
from typing import Iterable, Optional, Sequence

import sympy
from pydantic import BaseModel

from algebra.algreal import AlgReal
from algebra.conditions import parse_conditions
from algebra.poly import X
from rcf.cells import Cell1, RcfSet, flags_on, merge_breakpoints

logger = logging.getLogger(__name__)


class Decomposition(BaseModel):
    breakpoints: list[dict]
    cells: list[dict]
    labels: list[str]
    certificates: list[list[int]]
    euler_bound: Optional[int] = None

    def euler_of(self, target: int) -> int:
        """Euler characteristic of a target, counted on this decomposition's cells."""
        return sum(1 if self.cells[k]["kind"] == "point" else -1 for k in self.certificates[target])


def partition_cells(breakpoints: Sequence[AlgReal]) -> list[Cell1]:
    """``(-oo, b1), {b1}, (b1, b2), ..., {bk}, (bk, +oo)``."""
    ends = [None, *breakpoints, None]
    cells: list[Cell1] = []
    for k in range(len(breakpoints) + 1):
        cells.append(Cell1.interval(ends[k], ends[k + 1]))
        if k < len(breakpoints):
            cells.append(Cell1.point(breakpoints[k]))
    return cells


def euler_bound(text: str) -> int:
    """One more than the number of real roots any instance can have: 1 + sum of x-degrees."""
    total = 0
    for conjunction in parse_conditions(text):
        for c in conjunction:
            if c.expr != 0:
                total += max(sympy.degree(c.expr, X), 0)
    return 1 + total


def rcf_decompose(targets: Sequence[RcfSet], extra_breakpoints: Iterable[AlgReal] = (),
                  conditions: Optional[str] = None) -> Decomposition:
    """Partition of the line into points and open intervals refining every target.

    Args:
        targets: Sets that must each be a union of cells
        extra_breakpoints: Additional cut points (refinements)
        conditions: Sign-condition text the targets came from, to report the Euler bound

    Returns:
        Decomposition: cells in order plus, per target, the indices of the cells it contains
    """
    extra = [b if isinstance(b, AlgReal) else AlgReal.rational(b) for b in extra_breakpoints]
    bps = merge_breakpoints(extra, *(t.breakpoints for t in targets))
    cells = partition_cells(bps)
    certificates = []
    for target in targets:
        points, intervals = flags_on(target, bps)
        members = []
        for k in range(len(bps) + 1):
            if intervals[k]:
                members.append(2 * k)
            if k < len(bps) and points[k]:
                members.append(2 * k + 1)
        certificates.append(members)
    logger.debug(f"Decomposition with {len(bps)} breakpoints for {len(targets)} targets")
    return Decomposition(
        breakpoints=[b.to_json() for b in bps],
        cells=[c.to_json() for c in cells],
        labels=[str(c) for c in cells],
        certificates=certificates,
        euler_bound=None if conditions is None else euler_bound(conditions),
    )
