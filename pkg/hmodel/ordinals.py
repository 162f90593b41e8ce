"""Elements of the ordinal omega + kappa + 1 and its finite-or-cofinite subsets."""

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Optional

from common.errors import PreconditionViolation
from config.settings import settings

_TEXT = re.compile(r"^\s*(?:n:(\d+)|w(?:\+(\d+))?)\s*$")


@total_ordering
@dataclass(frozen=True)
class OrdElem:
    """``Nat(n)`` when ``omega`` is False, otherwise ``omega + n``."""

    n: int
    omega: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionViolation("ordinal", f"negative index {self.n}")

    @classmethod
    def nat(cls, n: int) -> "OrdElem":
        return cls(n, False)

    @classmethod
    def omega_plus(cls, j: int) -> "OrdElem":
        return cls(j, True)

    @classmethod
    def parse(cls, text: str) -> "OrdElem":
        """Read ``"n:5"``, ``"w"`` or ``"w+2"``."""
        match = _TEXT.match(text)
        if match is None:
            raise PreconditionViolation("ordinal", f"cannot read {text!r}, expected n:K or w+K")
        if match.group(1) is not None:
            return cls.nat(int(match.group(1)))
        return cls.omega_plus(int(match.group(2) or 0))

    def __lt__(self, other: "OrdElem") -> bool:
        return (self.omega, self.n) < (other.omega, other.n)

    def in_kappa(self, kappa: int) -> bool:
        return not self.omega or self.n <= kappa

    def __str__(self) -> str:
        if not self.omega:
            return f"n:{self.n}"
        return "w" if self.n == 0 else f"w+{self.n}"

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def from_json(cls, text: str) -> "OrdElem":
        return cls.parse(text)


OMEGA = OrdElem.omega_plus(0)


class HMode(str, Enum):
    FINITE = "finite"
    COFINITE = "cofinite"


@dataclass(frozen=True)
class HSet:
    """Members (finite mode) or non-members (cofinite mode) listed explicitly."""

    mode: HMode
    exceptions: frozenset

    @classmethod
    def finite(cls, members: Iterable[OrdElem]) -> "HSet":
        return cls(HMode.FINITE, frozenset(members))

    @classmethod
    def cofinite(cls, missing: Iterable[OrdElem]) -> "HSet":
        return cls(HMode.COFINITE, frozenset(missing))

    @classmethod
    def empty(cls) -> "HSet":
        return cls.finite(())

    @classmethod
    def everything(cls) -> "HSet":
        return cls.cofinite(())

    @property
    def is_finite(self) -> bool:
        return self.mode == HMode.FINITE

    def contains(self, x: OrdElem) -> bool:
        return (x in self.exceptions) == self.is_finite

    def complement(self) -> "HSet":
        other = HMode.COFINITE if self.is_finite else HMode.FINITE
        return HSet(other, self.exceptions)

    def union(self, other: "HSet") -> "HSet":
        a, b = self.exceptions, other.exceptions
        if self.is_finite and other.is_finite:
            return HSet.finite(a | b)
        if self.is_finite:
            return HSet.cofinite(b - a)
        if other.is_finite:
            return HSet.cofinite(a - b)
        return HSet.cofinite(a & b)

    def intersect(self, other: "HSet") -> "HSet":
        return self.complement().union(other.complement()).complement()

    def difference(self, other: "HSet") -> "HSet":
        return self.intersect(other.complement())

    def image(self, f) -> "HSet":
        """``{f(x) : x in X}`` for a bijection ``f`` of the universe moving finitely many points."""
        return HSet(self.mode, frozenset(f(x) for x in self.exceptions))

    def check_kappa(self, kappa: int) -> None:
        outside = [str(x) for x in self.exceptions if not x.in_kappa(kappa)]
        if outside:
            raise PreconditionViolation("universe", f"{outside} lie outside omega + {kappa} + 1")

    def __str__(self) -> str:
        body = ", ".join(str(x) for x in sorted(self.exceptions))
        return f"{{{body}}}" if self.is_finite else f"all but {{{body}}}"

    def to_json(self) -> dict:
        return {"mode": self.mode.value, "exceptions": [str(x) for x in sorted(self.exceptions)]}

    @classmethod
    def from_json(cls, data: dict) -> "HSet":
        try:
            mode = HMode(data["mode"])
            return cls(mode, frozenset(OrdElem.parse(x) for x in data.get("exceptions", [])))
        except (KeyError, ValueError, TypeError) as e:
            raise PreconditionViolation("hset_json", f"malformed set {data!r}: {e}") from e


def check_kappa(kappa: int, limit: Optional[int] = None) -> None:
    limit = settings.kappa_limit if limit is None else limit
    if not 0 <= kappa <= limit:
        raise PreconditionViolation("kappa", f"kappa must lie in 0..{limit}, got {kappa}")


def universe_window(kappa: int, naturals: int) -> list[OrdElem]:
    """``Nat(0..naturals-1)`` followed by ``omega .. omega + kappa``."""
    return ([OrdElem.nat(i) for i in range(naturals)]
            + [OrdElem.omega_plus(j) for j in range(kappa + 1)])
