"""The canonical models H_kappa for finite kappa, on finite-or-cofinite subsets.

The universe is the ordinal ``omega + kappa + 1`` and ``#`` is cardinality: a finite set of
size n goes to ``n`` and every infinite set to ``omega``. The elements ``omega + 1 .. omega +
kappa`` are never cardinalities; any two of them can be swapped by an automorphism.
"""

import logging
import random
from typing import Callable, Mapping, Optional, Sequence, Union

from pydantic import BaseModel

from common.errors import HumeViolation, PreconditionViolation
from hmodel.ordinals import OMEGA, HSet, OrdElem, check_kappa, universe_window

logger = logging.getLogger(__name__)

Sharp = Union[Callable[[HSet], OrdElem], Mapping[HSet, OrdElem]]


class SwapCase(BaseModel):
    test: dict
    card: str
    image_card: str
    passed: bool


class SwapReport(BaseModel):
    kappa: int
    beta: str
    gamma: str
    cases: list[SwapCase]
    passed: bool


class GammaReport(BaseModel):
    kappa: int
    mapping: dict[str, str]
    classes: int
    bijective: bool
    identity: bool


def h_card(kappa: int, X: HSet) -> OrdElem:
    """Cardinality of X inside H_kappa."""
    check_kappa(kappa)
    X.check_kappa(kappa)
    return OrdElem.nat(len(X.exceptions)) if X.is_finite else OMEGA


def _scan_pool(window: Sequence[OrdElem]) -> list[HSet]:
    pool = []
    for order in (list(window), list(reversed(window))):
        for k in range(len(order) + 1):
            pool.append(HSet.finite(order[:k]))
            pool.append(HSet.cofinite(order[:k]))
    return pool


def h_range_complement(kappa: int) -> list[OrdElem]:
    """Elements of the window ``Nat(0..kappa+1)``, ``omega..omega+kappa`` that no set's
    cardinality reaches, found by scanning prefix sets of the window in both orders."""
    check_kappa(kappa)
    window = universe_window(kappa, kappa + 2)
    achieved = {h_card(kappa, X) for X in _scan_pool(window)}
    missing = [x for x in window if x not in achieved]
    logger.debug(f"kappa = {kappa}: {len(achieved)} cardinalities reached, {len(missing)} missing")
    return missing


def random_hset(kappa: int, rng: random.Random, naturals: int = 4, max_exceptions: int = 4) -> HSet:
    window = universe_window(kappa, naturals)
    exceptions = rng.sample(window, rng.randint(0, min(max_exceptions, len(window))))
    return HSet.finite(exceptions) if rng.random() < 0.5 else HSet.cofinite(exceptions)


def h_swap_check(kappa: int, beta: OrdElem, gamma: OrdElem,
                 tests: Optional[Sequence[HSet]] = None, seed: int = 0) -> SwapReport:
    """Check that the transposition of beta and gamma commutes with ``#`` on every test set.

    Raises:
        PreconditionViolation: beta or gamma is a cardinality
    """
    outside = set(h_range_complement(kappa))
    for name, x in (("beta", beta), ("gamma", gamma)):
        if x not in outside:
            raise PreconditionViolation(name, f"{x} is in the range of # on H_{kappa}")
    if tests is None:
        rng = random.Random(seed)
        tests = [random_hset(kappa, rng) for _ in range(20)]

    def swap(x: OrdElem) -> OrdElem:
        return gamma if x == beta else beta if x == gamma else x

    cases = []
    for X in tests:
        card = h_card(kappa, X)
        image_card = h_card(kappa, X.image(swap))
        cases.append(SwapCase(test=X.to_json(), card=str(swap(card)), image_card=str(image_card),
                              passed=swap(card) == image_card))
    passed = all(c.passed for c in cases)
    logger.info(f"Swap {beta} <-> {gamma} on H_{kappa}: {len(cases)} sets, passed = {passed}")
    return SwapReport(kappa=kappa, beta=str(beta), gamma=str(gamma), cases=cases, passed=passed)


def equinumerosity_class(X: HSet) -> tuple:
    """Every infinite subset of a countable ordinal is countably infinite."""
    return ("finite", len(X.exceptions)) if X.is_finite else ("infinite",)


def _as_callable(sharp: Sharp) -> Callable[[HSet], OrdElem]:
    if callable(sharp):
        return sharp
    return lambda X: sharp[X]


def _respects_hume(name: str, sharp: Callable[[HSet], OrdElem], family: Sequence[HSet]) -> dict:
    by_class: dict[tuple, OrdElem] = {}
    for X in family:
        key = equinumerosity_class(X)
        value = sharp(X)
        if by_class.setdefault(key, value) != value:
            raise HumeViolation(f"{name} splits the class {key}: {by_class[key]} and {value}",
                                map=name, cls=key)
    owners: dict[OrdElem, tuple] = {}
    for key, value in by_class.items():
        if owners.setdefault(value, key) != key:
            raise HumeViolation(f"{name} merges the classes {owners[value]} and {key} at {value}",
                                map=name, value=str(value))
    return by_class


def h_gamma_iso(kappa: int, sharp1: Sharp, sharp2: Sharp, family: Sequence[HSet]) -> GammaReport:
    """``Gamma(#1 X) = #2 X`` on a finite family, verified to be a well-defined bijection.

    Raises:
        HumeViolation: one of the maps splits or merges an equinumerosity class of the family
    """
    check_kappa(kappa)
    for X in family:
        X.check_kappa(kappa)
    first = _respects_hume("sharp1", _as_callable(sharp1), family)
    second = _respects_hume("sharp2", _as_callable(sharp2), family)
    gamma = {first[key]: second[key] for key in first}
    bijective = len(set(gamma.values())) == len(gamma)
    report = GammaReport(
        kappa=kappa,
        mapping={str(a): str(b) for a, b in sorted(gamma.items())},
        classes=len(first),
        bijective=bijective,
        identity=all(a == b for a, b in gamma.items()),
    )
    logger.info(f"Gamma on {len(family)} sets of H_{kappa}: {len(gamma)} values, bijective = {bijective}")
    return report
