"""One-variable definable subsets of the real algebraic numbers.

A set is stored as sorted breakpoints ``b_1 < ... < b_k`` together with a membership flag
for each breakpoint and for each of the ``k + 1`` open intervals between them. A
breakpoint whose flag agrees with both neighbouring intervals carries no information and
is removed, which makes the representation canonical: equal sets are equal dataclasses.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Optional, Sequence

from algebra.algreal import AlgReal, rational_between, real_roots, sign_at
from algebra.conditions import ALLOWED_SIGNS, instantiate_conditions, parse_conditions
from algebra.poly import Poly
from common.errors import PreconditionViolation, ZeroPolynomialError
from interp.pairing import pairing_int

logger = logging.getLogger(__name__)


class SetOp(str, Enum):
    UNION = "union"
    INTERSECT = "intersect"
    COMPLEMENT = "complement"
    DIFFERENCE = "difference"


_COMBINE: dict[SetOp, Callable[[bool, bool], bool]] = {
    SetOp.UNION: lambda a, b: a or b,
    SetOp.INTERSECT: lambda a, b: a and b,
    SetOp.DIFFERENCE: lambda a, b: a and not b,
}


@dataclass(frozen=True)
class Cell1:
    """A point (``lo == hi``) or an open interval; ``None`` ends are infinite."""

    lo: Optional[AlgReal]
    hi: Optional[AlgReal]
    is_point: bool = False

    @classmethod
    def point(cls, a: AlgReal) -> "Cell1":
        return cls(a, a, True)

    @classmethod
    def interval(cls, lo: Optional[AlgReal], hi: Optional[AlgReal]) -> "Cell1":
        if lo is not None and hi is not None and lo.compare(hi) >= 0:
            raise PreconditionViolation("interval", f"empty interval ({lo}, {hi})")
        return cls(lo, hi, False)

    @property
    def dim(self) -> int:
        return 0 if self.is_point else 1

    def sample(self):
        """A rational point of the cell (the point itself when it is rational)."""
        if self.is_point:
            return self.lo.value
        return rational_between(self.lo, self.hi)

    def contains_rational(self, value) -> bool:
        if self.is_point:
            return self.lo.is_rational and self.lo.value == value
        above = self.lo is None or self.lo.compare_rational(value) < 0
        below = self.hi is None or self.hi.compare_rational(value) > 0
        return above and below

    def __str__(self) -> str:
        if self.is_point:
            return f"{{{self.lo}}}"
        lo = "-oo" if self.lo is None else str(self.lo)
        hi = "+oo" if self.hi is None else str(self.hi)
        return f"({lo}, {hi})"

    def to_json(self) -> dict:
        if self.is_point:
            return {"kind": "point", "at": self.lo.to_json()}
        return {"kind": "interval",
                "lo": None if self.lo is None else self.lo.to_json(),
                "hi": None if self.hi is None else self.hi.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Cell1":
        if data["kind"] == "point":
            return cls.point(AlgReal.from_json(data["at"]))
        lo = None if data["lo"] is None else AlgReal.from_json(data["lo"])
        hi = None if data["hi"] is None else AlgReal.from_json(data["hi"])
        return cls.interval(lo, hi)


@dataclass(frozen=True)
class Invariant:
    dim: int
    euler: int

    def to_json(self) -> dict:
        return {"dim": self.dim, "euler": self.euler}


@dataclass(frozen=True)
class RcfSet:
    breakpoints: tuple
    points: tuple
    intervals: tuple

    def __post_init__(self):
        if len(self.points) != len(self.breakpoints) or len(self.intervals) != len(self.breakpoints) + 1:
            raise PreconditionViolation("flags", "one flag per breakpoint and per gap is required")

    @classmethod
    def build(cls, breakpoints: Sequence[AlgReal], points: Sequence[bool],
              intervals: Sequence[bool]) -> "RcfSet":
        """Canonical set from sorted breakpoints and flags, dropping removable breakpoints."""
        kept_b, kept_p, kept_i = [], [], [intervals[0]]
        for b, flag, right in zip(breakpoints, points, intervals[1:]):
            if flag == kept_i[-1] == right:
                continue
            kept_b.append(b)
            kept_p.append(flag)
            kept_i.append(right)
        return cls(tuple(kept_b), tuple(kept_p), tuple(kept_i))

    @classmethod
    def empty(cls) -> "RcfSet":
        return cls((), (), (False,))

    @classmethod
    def line(cls) -> "RcfSet":
        return cls((), (), (True,))

    @classmethod
    def of_points(cls, values: Iterable) -> "RcfSet":
        pts = sorted({v if isinstance(v, AlgReal) else AlgReal.rational(v) for v in values})
        return cls.build(pts, [True] * len(pts), [False] * (len(pts) + 1))

    @classmethod
    def open_interval(cls, lo, hi) -> "RcfSet":
        """``(lo, hi)``; ``None`` ends are infinite."""
        ends = [e if e is None or isinstance(e, AlgReal) else AlgReal.rational(e) for e in (lo, hi)]
        cells = [Cell1.interval(*ends)]
        return from_cells(cells)

    @classmethod
    def parse(cls, text: str, params: Optional[Mapping[str, object]] = None) -> "RcfSet":
        """Read ``"x^2-2 < 0 & x > -3 | x = 5"``, substituting rational ``params`` first."""
        union = cls.empty()
        for conjunction in instantiate_conditions(parse_conditions(text), params or {}):
            conds = [(Poly.from_expr(c.expr), c.relation) for c in conjunction]
            union = rcf_algebra(SetOp.UNION, union, rcf_from_sign_condition(conds))
        return union

    @property
    def cells(self) -> list[Cell1]:
        out: list[Cell1] = []
        ends: list[Optional[AlgReal]] = [None, *self.breakpoints, None]
        for k, flag in enumerate(self.intervals):
            if flag:
                out.append(Cell1.interval(ends[k], ends[k + 1]))
            if k < len(self.breakpoints) and self.points[k]:
                out.append(Cell1.point(self.breakpoints[k]))
        return out

    def is_empty(self) -> bool:
        return not any(self.points) and not any(self.intervals)

    def contains_rational(self, value) -> bool:
        return any(c.contains_rational(value) for c in self.cells)

    def __str__(self) -> str:
        cells = self.cells
        return " u ".join(str(c) for c in cells) if cells else "{}"

    def to_json(self) -> dict:
        return {"cells": [c.to_json() for c in self.cells]}

    @classmethod
    def from_json(cls, data: dict) -> "RcfSet":
        return from_cells([Cell1.from_json(c) for c in data["cells"]])


def merge_breakpoints(*groups: Iterable[AlgReal]) -> list[AlgReal]:
    return sorted({b for group in groups for b in group})


def flags_on(X: RcfSet, breakpoints: Sequence[AlgReal]) -> tuple[list[bool], list[bool]]:
    """Membership flags of X on a sorted superset of its breakpoints."""
    points, intervals = [], [X.intervals[0]]
    i = 0
    for b in breakpoints:
        if i < len(X.breakpoints) and X.breakpoints[i] == b:
            points.append(X.points[i])
            i += 1
        else:
            points.append(X.intervals[i])
        intervals.append(X.intervals[i])
    if i != len(X.breakpoints):
        raise PreconditionViolation("refinement", "breakpoints must include those of the set")
    return points, intervals


def from_cells(cells: Sequence[Cell1]) -> RcfSet:
    """Set made of the given pairwise-disjoint cells."""
    result = RcfSet.empty()
    for cell in cells:
        if cell.is_point:
            piece = RcfSet.of_points([cell.lo])
        else:
            bps = [e for e in (cell.lo, cell.hi) if e is not None]
            inside = [False] * (len(bps) + 1)
            inside[0 if cell.lo is None else 1] = True
            piece = RcfSet.build(bps, [False] * len(bps), inside)
        result = rcf_algebra(SetOp.UNION, result, piece)
    return result


def rcf_algebra(op: SetOp, X: RcfSet, Y: Optional[RcfSet] = None) -> RcfSet:
    """Canonical union, intersection, complement or difference."""
    op = SetOp(op)
    if op == SetOp.COMPLEMENT:
        return RcfSet.build(X.breakpoints, [not p for p in X.points], [not i for i in X.intervals])
    if Y is None:
        raise PreconditionViolation("operand", f"{op.value} needs two sets")
    bps = merge_breakpoints(X.breakpoints, Y.breakpoints)
    xp, xi = flags_on(X, bps)
    yp, yi = flags_on(Y, bps)
    combine = _COMBINE[op]
    return RcfSet.build(bps, [combine(a, b) for a, b in zip(xp, yp)],
                        [combine(a, b) for a, b in zip(xi, yi)])


def rcf_from_sign_condition(conds: Sequence[tuple[Poly, str]]) -> RcfSet:
    """``{x : sign(p(x)) satisfies rel for every (p, rel)}``.

    Relations are ``<``, ``<=``, ``=``, ``!=``, ``>``, ``>=`` against zero.

    Raises:
        ZeroPolynomialError: one of the polynomials is zero
    """
    for p, rel in conds:
        if p.is_zero():
            raise ZeroPolynomialError("sign conditions need nonzero polynomials")
        if rel not in ALLOWED_SIGNS:
            raise PreconditionViolation("relation", f"unknown relation {rel!r}")
    bps = merge_breakpoints(*(real_roots(p) for p, _ in conds if p.degree > 0))
    ends: list[Optional[AlgReal]] = [None, *bps, None]

    def holds(sign_of: Callable[[Poly], int]) -> bool:
        return all(sign_of(p) in ALLOWED_SIGNS[rel] for p, rel in conds)

    points = [holds(lambda p, b=b: sign_at(p, b)) for b in bps]
    intervals = []
    for k in range(len(bps) + 1):
        r = rational_between(ends[k], ends[k + 1])
        intervals.append(holds(lambda p, r=r: p.sign_at(r)))
    result = RcfSet.build(bps, points, intervals)
    logger.debug(f"Sign condition with {len(conds)} polynomials gave {len(result.cells)} cells")
    return result


def rcf_invariant(X: RcfSet) -> Invariant:
    """Dimension (``-1`` for the empty set) and Euler characteristic ``#points - #intervals``."""
    cells = X.cells
    if not cells:
        return Invariant(-1, 0)
    n_points = sum(1 for c in cells if c.is_point)
    n_intervals = len(cells) - n_points
    return Invariant(1 if n_intervals else 0, n_points - n_intervals)


def rcf_number(X: RcfSet) -> int:
    inv = rcf_invariant(X)
    return pairing_int(inv.dim, inv.euler)


def rcf_hume_equiv(X: RcfSet, Y: RcfSet) -> bool:
    return rcf_invariant(X) == rcf_invariant(Y)
