"""A well-defined injective abstraction on an enumerated family of definable sets.

The family is an ordered list of descriptors ``theta_0, theta_1, ...``. An instance of
``theta_n`` is routed to the least index ``m`` whose descriptor defines the same set, and
the set receives the value ``iota_m(f_m(set))``, where ``f_m`` ranks the sets first defined
by ``theta_m`` and ``iota_m`` is the disjoint-range chain. Extensionally equal instances
therefore share one value, and sets routed to different indices never collide.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping, Optional, Protocol, Sequence

from pydantic import BaseModel

from acf.sets import AcfSet
from acf.theta import ThetaFamily
from common.errors import RepresentativeSelectionError, WorkbenchError
from finite.evaluator import Evaluator
from finite.structure import FiniteStructure
from interp.pairing import Iota, IotaChain, dyadic, iota_chain
from logic.parser import parse_formula
from rcf.cells import RcfSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Descriptor:
    """One family member: condition or formula text in ``x`` plus its parameter values."""

    text: str
    params: tuple = field(default=())

    @classmethod
    def of(cls, text: str, params: Optional[Mapping[str, Any]] = None) -> "Descriptor":
        return cls(text, tuple(sorted((params or {}).items())))

    @property
    def values(self) -> dict[str, Any]:
        return dict(self.params)


class SetBackend(Protocol):
    name: str

    def build(self, descriptor: Descriptor) -> Hashable: ...

    def canonical(self, value: Hashable) -> str: ...


class FiniteBackend:
    """Descriptors are formulas with free object variable ``x`` over a finite structure."""

    name = "finite"

    def __init__(self, structure: FiniteStructure, variable: str = "x"):
        self.structure = structure
        self.variable = variable
        self._evaluator = Evaluator(structure)

    def build(self, descriptor: Descriptor) -> frozenset:
        f = parse_formula(descriptor.text)
        env = descriptor.values
        return frozenset(a for a in self.structure.universe
                         if self._evaluator.eval(f, {**env, self.variable: a}))

    def canonical(self, value: frozenset) -> str:
        return "{" + ", ".join(sorted(map(repr, value))) + "}"


class AcfBackend:
    """Descriptors are ``=`` / ``!=`` conditions in ``x`` with rational parameters."""

    name = "acf"

    def build(self, descriptor: Descriptor) -> AcfSet:
        values = descriptor.values
        return ThetaFamily.parse(descriptor.text, sorted(values)).instance(values)

    def canonical(self, value: AcfSet) -> str:
        return str(value)


class RcfBackend:
    """Descriptors are sign conditions in ``x`` with rational parameters."""

    name = "rcf"

    def build(self, descriptor: Descriptor) -> RcfSet:
        return RcfSet.parse(descriptor.text, descriptor.values)

    def canonical(self, value: RcfSet) -> str:
        return str(value)


BACKENDS = {"acf": AcfBackend, "rcf": RcfBackend}


class Provenance(BaseModel):
    n: int
    m: int
    params: dict[str, Any]
    representative_params: dict[str, Any]


class DeltaEntry(BaseModel):
    representative: str
    value: int
    index: int
    rank: int
    provenance: list[Provenance]


class PartialDelta(BaseModel):
    backend: str
    entries: list[DeltaEntry]

    def value_of(self, representative: str) -> Optional[int]:
        for entry in self.entries:
            if entry.representative == representative:
                return entry.value
        return None

    def is_injective(self) -> bool:
        values = [e.value for e in self.entries]
        return len(values) == len(set(values))


def default_chain() -> IotaChain:
    """``iota_n`` on the dyadic pairing with constants 0 and 1."""
    return iota_chain(dyadic, 0, 1)


def _select(backend: SetBackend, position: int, descriptor: Descriptor) -> tuple[Hashable, str]:
    try:
        value = backend.build(descriptor)
        return value, backend.canonical(value)
    except WorkbenchError as exc:
        logger.error(f"Descriptor {position} ({descriptor.text!r}) has no representative: {exc.message}")
        raise RepresentativeSelectionError(
            f"descriptor {position} ({descriptor.text!r}): {exc.message}",
            position=position, cause=exc.code) from exc


def build_partial_abstraction(family: Sequence[Descriptor], backend: SetBackend,
                              chain: Optional[IotaChain] = None,
                              iota: Optional[Iota] = None) -> PartialDelta:
    """Assign one value per extensional class of the family, injectively.

    Descriptors sharing a text are instances of one parametric descriptor; their index ``n``
    is the position of that text in order of first appearance. A class is routed to the least
    ``n`` among its instances, ranked among the classes routed there, and valued by the chain.

    Args:
        family: Descriptor instances in enumeration order
        backend: Builds the set of a descriptor and names its canonical form
        chain: Disjoint-range injections; defaults to the dyadic chain
        iota: Pairing for a chain on constants 0 and 1, used when no chain is given

    Returns:
        PartialDelta: one entry per class, in order of routing index and first appearance

    Raises:
        RepresentativeSelectionError: a descriptor cannot be built, or two different sets
            share a canonical form
    """
    if chain is None:
        chain = iota_chain(iota, 0, 1) if iota is not None else default_chain()
    indices: dict[str, int] = {}
    classes: dict[str, list[tuple[int, Descriptor]]] = {}
    values: dict[str, Hashable] = {}
    for position, descriptor in enumerate(family):
        n = indices.setdefault(descriptor.text, len(indices))
        value, canonical = _select(backend, position, descriptor)
        if canonical in values and values[canonical] != value:
            raise RepresentativeSelectionError(
                f"canonical form {canonical!r} names two different sets", position=position)
        values[canonical] = value
        classes.setdefault(canonical, []).append((n, descriptor))

    routed = sorted(classes.items(), key=lambda item: min(n for n, _ in item[1]))
    ranks: dict[int, int] = {}
    entries = []
    for canonical, members in routed:
        m, representative = min(members, key=lambda member: member[0])
        rank = ranks.get(m, 0)
        ranks[m] = rank + 1
        provenance = [Provenance(n=n, m=m, params=d.values,
                                 representative_params=representative.values)
                      for n, d in members]
        entries.append(DeltaEntry(representative=canonical, value=chain(m, rank), index=m,
                                  rank=rank, provenance=provenance))
    logger.info(f"Partial abstraction on {len(family)} descriptors: {len(entries)} classes")
    return PartialDelta(backend=backend.name, entries=entries)
