"""Integer pairing, the iota chain of disjoint injections and tuple coding."""

import logging
from dataclasses import dataclass
from math import isqrt
from typing import Callable, Hashable, Sequence

from common.errors import IotaConstantsError, PairingRangeError, PreconditionViolation

logger = logging.getLogger(__name__)


def zigzag(n: int) -> int:
    """``0, -1, 1, -2, 2, ...`` onto ``0, 1, 2, 3, 4, ...``."""
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(k: int) -> int:
    return k // 2 if k % 2 == 0 else -(k + 1) // 2


def cantor(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise PairingRangeError(f"cantor pairing needs naturals, got ({a}, {b})")
    return (a + b) * (a + b + 1) // 2 + b


def uncantor(n: int) -> tuple[int, int]:
    if n < 0:
        raise PairingRangeError(f"{n} is not in the range of the pairing")
    w = (isqrt(8 * n + 1) - 1) // 2
    b = n - w * (w + 1) // 2
    return w - b, b


def pairing_int(i: int, j: int) -> int:
    """Injective ``Z x Z -> Z`` with values in the naturals: ``cantor(zigzag(i), zigzag(j))``."""
    return cantor(zigzag(i), zigzag(j))


def unpair(n: int) -> tuple[int, int]:
    """Inverse of ``pairing_int``.

    Raises:
        PairingRangeError: ``n`` is negative
    """
    a, b = uncantor(n)
    return unzigzag(a), unzigzag(b)


def dyadic(u: int, v: int) -> int:
    """Bijection ``N x N -> N``, ``2^u (2v + 1) - 1``; linear in ``v`` for a fixed ``u``."""
    if u < 0 or v < 0:
        raise PairingRangeError(f"dyadic pairing needs naturals, got ({u}, {v})")
    return 2 ** u * (2 * v + 1) - 1


def undyadic(n: int) -> tuple[int, int]:
    if n < 0:
        raise PairingRangeError(f"{n} is not in the range of the pairing")
    n += 1
    u = (n & -n).bit_length() - 1
    return u, (n >> u) // 2


Iota = Callable[[Hashable, Hashable], Hashable]


@dataclass(frozen=True)
class IotaChain:
    """``iota_0(x) = iota(c, iota(c, x))``, ``iota_{2s+1}(x) = iota(b, iota_{2s}(x))``,
    ``iota_{2s+2}(x) = iota(c, iota_{2s+1}(x))``; the ranges are pairwise disjoint."""

    iota: Iota
    b: Hashable
    c: Hashable

    def __call__(self, n: int, x: Hashable) -> Hashable:
        if n < 0:
            raise PreconditionViolation("index", f"iota index must be nonnegative, got {n}")
        value = self.iota(self.c, self.iota(self.c, x))
        for k in range(1, n + 1):
            value = self.iota(self.b if k % 2 == 1 else self.c, value)
        return value

    def unfold(self, n: int, x: str = "x") -> str:
        """Symbolic form, e.g. ``iota(b, iota(c, iota(c, x)))`` for ``n = 1``."""
        text = f"iota({self.c}, iota({self.c}, {x}))"
        for k in range(1, n + 1):
            text = f"iota({self.b if k % 2 == 1 else self.c}, {text})"
        return text


def iota_chain(iota: Iota, b: Hashable, c: Hashable, samples: Sequence = range(20)) -> IotaChain:
    """Build the chain after spot-checking that ``iota`` is injective on sample pairs.

    Raises:
        IotaConstantsError: ``b == c``
    """
    if b == c:
        raise IotaConstantsError(f"the two constants must differ, both are {b!r}")
    seen: dict = {}
    for u in samples:
        for v in samples:
            value = iota(u, v)
            if seen.setdefault(value, (u, v)) != (u, v):
                raise PreconditionViolation("iota_injective",
                                            f"iota{seen[value]} = iota{(u, v)} = {value!r}")
    return IotaChain(iota, b, c)


def j_chain(iota: Iota, n: int) -> Callable[[Sequence], Hashable]:
    """Tuple code ``j_1(x) = x``, ``j_{k+1}(x1..xk, x) = iota(j_k(x1..xk), x)``."""
    if n < 1:
        raise PreconditionViolation("arity", f"tuple length must be positive, got {n}")

    def code(values: Sequence) -> Hashable:
        if len(values) != n:
            raise PreconditionViolation("arity", f"expected {n} values, got {len(values)}")
        result = values[0]
        for v in values[1:]:
            result = iota(result, v)
        return result

    return code


def compose_code(iota: Iota, f: Callable[..., Sequence], m: int) -> Callable[..., Hashable]:
    """``f* = j_m o f`` for an ``f`` returning m-tuples."""
    code = j_chain(iota, m)
    return lambda *args: code(f(*args))
