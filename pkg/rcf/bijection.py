"""Explicit definable bijections between sets with equal dimension and Euler characteristic.

Cells are matched in order, points to points and intervals to intervals. When the cell
counts differ, the leftmost interval of the smaller side is cut at a rational point,
which adds one point and one interval and keeps the Euler characteristic. Each interval
is sent onto the unit interval by a fixed increasing rational map and from there onto the
matching interval, so every piece is order preserving.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel

from algebra.algreal import AlgReal, rational_between
from algebra.enclosure import Enclosure
from common.errors import InvariantMismatch, PreconditionViolation, RefinementLimitExceeded
from config.settings import settings
from rcf.cells import Cell1, RcfSet, from_cells, rcf_hume_equiv, rcf_invariant

logger = logging.getLogger(__name__)

HALF = Enclosure.point(Fraction(1, 2))
ONE = Enclosure.point(1)


def _end(a: AlgReal, width: Fraction) -> Enclosure:
    return Enclosure.of(a if a.is_rational else a.refined(width))


def to_unit(cell: Cell1, t: Enclosure, width: Fraction) -> Enclosure:
    lo = None if cell.lo is None else _end(cell.lo, width)
    hi = None if cell.hi is None else _end(cell.hi, width)
    if lo is not None and hi is not None:
        return (t - lo) / (hi - lo)
    if lo is not None:
        d = t - lo
        return d / (d + ONE)
    if hi is not None:
        return ONE / (hi - t + ONE)
    return HALF + t / (Enclosure.point(2) * (ONE + t.abs()))


def from_unit(cell: Cell1, u: Enclosure, width: Fraction) -> Enclosure:
    lo = None if cell.lo is None else _end(cell.lo, width)
    hi = None if cell.hi is None else _end(cell.hi, width)
    if lo is not None and hi is not None:
        return lo + u * (hi - lo)
    if lo is not None:
        return lo + u / (ONE - u)
    if hi is not None:
        return hi + ONE - ONE / u
    v = Enclosure.point(2) * u - ONE
    return v / (ONE - v.abs())


@dataclass(frozen=True)
class Piece:
    source: Cell1
    target: Cell1

    def image(self, t: Enclosure, width: Fraction) -> Enclosure:
        if self.source.is_point:
            return Enclosure.of(self.target.lo if self.target.lo.is_rational
                                else self.target.lo.refined(width))
        return from_unit(self.target, to_unit(self.source, t, width), width)

    def preimage(self, u: Enclosure, width: Fraction) -> Enclosure:
        return Piece(self.target, self.source).image(u, width)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "label": f"{self.source} -> {self.target}"}


def _inside(cell: Cell1, enc: Enclosure, width: Fraction) -> bool:
    if cell.is_point:
        return False
    lo_ok = cell.lo is None or _end(cell.lo, width).hi < enc.lo
    hi_ok = cell.hi is None or enc.hi < _end(cell.hi, width).lo
    return lo_ok and hi_ok


class BijectionReport(BaseModel):
    pieces: list[dict]
    source_splits: list[str]
    target_splits: list[str]
    invariant: dict


@dataclass(frozen=True)
class PiecewiseBijection:
    pieces: tuple
    source_splits: tuple = field(default=())
    target_splits: tuple = field(default=())

    def _piece_for(self, value, inverse: bool) -> Piece:
        for piece in self.pieces:
            cell = piece.target if inverse else piece.source
            if cell.contains_rational(value):
                return piece
        raise PreconditionViolation("domain", f"{value} lies outside the {'range' if inverse else 'domain'}")

    def apply(self, t, tolerance: Fraction = Fraction(1, 10 ** 9)) -> Enclosure:
        """Enclosure of the image of the rational ``t``, at most ``tolerance`` wide."""
        return self._evaluate(Fraction(t), tolerance, inverse=False)

    def inverse(self, u, tolerance: Fraction = Fraction(1, 10 ** 9)) -> Enclosure:
        return self._evaluate(Fraction(u), tolerance, inverse=True)

    def _evaluate(self, value: Fraction, tolerance: Fraction, inverse: bool) -> Enclosure:
        piece = self._piece_for(value, inverse)
        width = tolerance
        for _ in range(settings.refinement_iteration_cap // 10):
            point = Enclosure.point(value)
            enc = piece.preimage(point, width) if inverse else piece.image(point, width)
            if enc.width <= tolerance:
                return enc
            width /= 4
        raise RefinementLimitExceeded(f"image of {value} not narrowed to {tolerance}")

    def lands_inside(self, t) -> bool:
        """Whether the image of the rational ``t`` lies in the target cell of its piece."""
        t = Fraction(t)
        piece = self._piece_for(t, inverse=False)
        if piece.source.is_point:
            return True
        width = Fraction(1, 2 ** 20)
        for _ in range(60):
            if _inside(piece.target, piece.image(Enclosure.point(t), width), width):
                return True
            width /= 16
        return False

    def report(self, X: RcfSet) -> BijectionReport:
        return BijectionReport(
            pieces=[p.to_json() for p in self.pieces],
            source_splits=[str(s) for s in self.source_splits],
            target_splits=[str(s) for s in self.target_splits],
            invariant=rcf_invariant(X).to_json(),
        )


def _split_leftmost_interval(cells: list[Cell1]) -> tuple[list[Cell1], Fraction]:
    for k, cell in enumerate(cells):
        if not cell.is_point:
            r = rational_between(cell.lo, cell.hi)
            point = AlgReal.rational(r)
            pieces = [Cell1.interval(cell.lo, point), Cell1.point(point), Cell1.interval(point, cell.hi)]
            return cells[:k] + pieces + cells[k + 1:], r
    raise InvariantMismatch("no interval left to split")


def rcf_build_bijection(X: RcfSet, Y: RcfSet) -> PiecewiseBijection:
    """Piecewise order-preserving bijection from X onto Y.

    Raises:
        InvariantMismatch: X and Y differ in dimension or Euler characteristic
    """
    if not rcf_hume_equiv(X, Y):
        raise InvariantMismatch(
            f"invariants differ: {rcf_invariant(X).to_json()} vs {rcf_invariant(Y).to_json()}")
    xs, ys = X.cells, Y.cells
    x_splits: list[Fraction] = []
    y_splits: list[Fraction] = []
    while len(xs) != len(ys):
        if len(xs) < len(ys):
            xs, r = _split_leftmost_interval(xs)
            x_splits.append(r)
        else:
            ys, r = _split_leftmost_interval(ys)
            y_splits.append(r)
    x_points = [c for c in xs if c.is_point]
    y_points = [c for c in ys if c.is_point]
    x_intervals = [c for c in xs if not c.is_point]
    y_intervals = [c for c in ys if not c.is_point]
    pieces = [Piece(a, b) for a, b in zip(x_intervals, y_intervals)]
    pieces += [Piece(a, b) for a, b in zip(x_points, y_points)]
    pieces.sort(key=lambda p: _sort_key(xs, p.source))
    bijection = PiecewiseBijection(tuple(pieces), tuple(x_splits), tuple(y_splits))
    _validate(bijection, X, Y)
    logger.info(f"Bijection {X} -> {Y} with {len(pieces)} pieces")
    return bijection


def _sort_key(cells: list[Cell1], cell: Cell1) -> int:
    return cells.index(cell)


def _validate(bijection: PiecewiseBijection, X: RcfSet, Y: RcfSet) -> None:
    sources = [p.source for p in bijection.pieces]
    targets = [p.target for p in bijection.pieces]
    if from_cells(sources) != X or from_cells(targets) != Y:
        raise InvariantMismatch("pieces do not cover both sets exactly")
    for p in bijection.pieces:
        if p.source.is_point != p.target.is_point:
            raise InvariantMismatch(f"piece {p.source} -> {p.target} mixes dimensions")


def sample_points(X: RcfSet, count: int, rng) -> list[Fraction]:
    """Rational points of X: rational isolated points plus random points inside intervals."""
    samples: list[Fraction] = []
    cells = X.cells
    intervals = [c for c in cells if not c.is_point]
    samples.extend(c.lo.value for c in cells if c.is_point and c.lo.is_rational)
    while intervals and len(samples) < count:
        cell = rng.choice(intervals)
        samples.append(_random_inside(cell, rng))
    return samples[:count]


def _random_inside(cell: Cell1, rng) -> Fraction:
    lo = None if cell.lo is None else (cell.lo.value if cell.lo.is_rational else cell.lo.hi)
    hi = None if cell.hi is None else (cell.hi.value if cell.hi.is_rational else cell.hi.lo)
    if lo is not None and hi is not None and lo >= hi:
        return rational_between(cell.lo, cell.hi)
    if lo is None and hi is None:
        return Fraction(rng.randint(-1000, 1000), rng.randint(1, 50))
    if lo is None:
        return hi - Fraction(rng.randint(1, 1000), rng.randint(1, 50))
    if hi is None:
        return lo + Fraction(rng.randint(1, 1000), rng.randint(1, 50))
    u = Fraction(rng.randint(1, 999), 1000)
    return lo + u * (hi - lo)
