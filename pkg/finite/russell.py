"""Russell's construction and pigeonhole failures of abstraction on finite universes."""

import logging
from typing import Any, Callable, Literal, Optional

from pydantic import BaseModel

from common.errors import InvariantMismatch, PreconditionViolation, SizeLimitExceeded
from config.settings import settings
from finite.structure import FiniteStructure

logger = logging.getLogger(__name__)


class RussellReport(BaseModel):
    input_set: list
    computed_set: list
    verdict: Literal["WitnessFound", "ClosureFailure"]
    witness: Optional[Any] = None
    reason: Optional[Literal["S1", "abstraction domain"]] = None


class InjectionResult(BaseModel):
    found: bool
    injection: Optional[list[tuple[list, Any]]] = None
    family_size: int
    universe_size: int
    pigeonhole: bool = False


class SingletonSuccessor(BaseModel):
    mapping: list[tuple[Any, Any]]
    total: bool
    injective: bool
    surjective: bool


class InjectiveNonSurjectiveReport(BaseModel):
    successor: SingletonSuccessor
    witness_exists: bool
    explanation: str


def _sorted(items) -> list:
    return sorted(items, key=repr)


def russell_set(s: FiniteStructure, A) -> RussellReport:
    """Compute ``B = {x in A : x = ext(X) for some X with x not in X}``.

    If B is a set of the structure with an abstract, that abstract lies in the range of the
    abstraction but outside A; otherwise the report names the closure that fails.

    Raises:
        PreconditionViolation: no injective abstraction, A not in S1, or A not inside the range
    """
    A = frozenset(A)
    abstraction = s.abstraction
    if abstraction is None:
        raise PreconditionViolation("abstraction", "structure has no abstraction map")
    if not abstraction.is_injective():
        raise PreconditionViolation("injective", "abstraction map is not injective")
    if A not in set(s.sets()):
        raise PreconditionViolation("A_in_S1", f"{_sorted(A)} is not a set of the structure")
    if not A <= abstraction.range():
        raise PreconditionViolation("A_in_range", f"{_sorted(A - abstraction.range())} not abstracts")

    inverse = abstraction.inverse()
    B = frozenset(x for x in A if x not in inverse[x])
    report = dict(input_set=_sorted(A), computed_set=_sorted(B))
    if B not in set(s.sets()):
        logger.info(f"Russell set {_sorted(B)} escapes S1")
        return RussellReport(**report, verdict="ClosureFailure", reason="S1")
    if B not in abstraction.mapping:
        logger.info(f"Russell set {_sorted(B)} has no abstract")
        return RussellReport(**report, verdict="ClosureFailure", reason="abstraction domain")
    witness = abstraction.mapping[B]
    if witness in A:
        raise InvariantMismatch(f"abstract {witness!r} of the Russell set lies in A")
    logger.info(f"Russell witness {witness!r} outside {_sorted(A)}")
    return RussellReport(**report, verdict="WitnessFound", witness=witness)


def blv_injection_search(m: int, family, admissible: Optional[Callable[[frozenset, int], bool]] = None,
                         limit: Optional[int] = None) -> InjectionResult:
    """Backtracking search for an injection from ``family`` into ``{0..m-1}``.

    Args:
        m: Universe size
        family: Subsets of the universe to abstract
        admissible: Optional constraint on individual assignments
        limit: Largest ``m`` searched; defaults to ``settings.exhaustive_universe_limit``

    Returns:
        InjectionResult: an injection, or a pigeonhole certificate when the family outnumbers
        the universe

    Raises:
        SizeLimitExceeded: ``m`` above the exhaustive regime
    """
    limit = settings.exhaustive_universe_limit if limit is None else limit
    if m > limit:
        raise SizeLimitExceeded(f"universe of size {m} exceeds the exhaustive limit {limit}")
    sets = [frozenset(x) for x in family]
    if len(set(sets)) != len(sets):
        raise PreconditionViolation("family", "sets must be distinct")
    if len(sets) > m:
        logger.info(f"Pigeonhole: {len(sets)} sets, {m} atoms")
        return InjectionResult(found=False, family_size=len(sets), universe_size=m, pigeonhole=True)

    assignment: list[int] = []
    used: set[int] = set()
    nodes = 0

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == len(sets):
            return True
        for atom in range(m):
            nodes += 1
            if atom in used or (admissible is not None and not admissible(sets[i], atom)):
                continue
            used.add(atom)
            assignment.append(atom)
            if extend(i + 1):
                return True
            assignment.pop()
            used.discard(atom)
        return False

    found = extend(0)
    logger.debug(f"Injection search visited {nodes} nodes")
    if not found:
        return InjectionResult(found=False, family_size=len(sets), universe_size=m)
    return InjectionResult(found=True, family_size=len(sets), universe_size=m,
                           injection=[(_sorted(x), a) for x, a in zip(sets, assignment)])


def successor_via_singletons(s: FiniteStructure) -> SingletonSuccessor:
    """``s(x) = ext({x})`` wherever the singleton is in the abstraction domain."""
    if s.abstraction is None:
        raise PreconditionViolation("abstraction", "structure has no abstraction map")
    mapping = {}
    for x in s.universe:
        singleton = frozenset([x])
        if singleton in s.abstraction.mapping:
            mapping[x] = s.abstraction.mapping[singleton]
    values = list(mapping.values())
    return SingletonSuccessor(
        mapping=[(k, v) for k, v in mapping.items()],
        total=len(mapping) == len(s.universe),
        injective=len(set(values)) == len(values),
        surjective=set(values) == set(s.universe),
    )


def injective_non_surjective_witness(s: FiniteStructure) -> InjectiveNonSurjectiveReport:
    """Whether the singleton successor is total, injective and not surjective.

    On a finite universe a total injective self-map is onto, so such a witness never exists;
    the report shows which of the three properties breaks.
    """
    successor = successor_via_singletons(s)
    exists = successor.total and successor.injective and not successor.surjective
    if exists:
        raise InvariantMismatch("finite universe carries an injective non-surjective map")
    if not successor.total:
        explanation = "singleton successor is partial"
    elif not successor.injective:
        explanation = "singleton successor is not injective"
    else:
        explanation = "total injective map on a finite universe is surjective"
    return InjectiveNonSurjectiveReport(successor=successor, witness_exists=exists,
                                        explanation=explanation)
