"""Explicit finite second-order structures ``(M, S1, S2, ..., #)``.

Unary relations are stored as frozensets of atoms, n-ary ones (n >= 2) as frozensets of
n-tuples. The abstraction is a partial map from S1 to the universe, tagged ``hash`` or
``ext``.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain, combinations, product
from typing import Any, Hashable, Literal, Mapping, Optional

from common.errors import PreconditionViolation

logger = logging.getLogger(__name__)

Atom = Hashable
AbstractionKind = Literal["hash", "ext"]


def powerset(items) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(
        combinations(items, r) for r in range(len(items) + 1))]


@dataclass(frozen=True)
class AbstractionMap:
    kind: AbstractionKind
    mapping: Mapping[frozenset, Atom]

    def domain(self) -> list[frozenset]:
        return list(self.mapping)

    def range(self) -> set:
        return set(self.mapping.values())

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def inverse(self) -> dict:
        return {v: k for k, v in self.mapping.items()}


@dataclass(frozen=True)
class Arithmetic:
    """Interpretation of ``0``, ``s`` and optionally ``+``, ``*``, ``<=`` on the universe."""

    zero: Atom
    succ: Mapping[Atom, Atom]
    plus: Optional[Mapping[tuple, Atom]] = None
    times: Optional[Mapping[tuple, Atom]] = None
    leq: Optional[frozenset] = None


@dataclass(frozen=True, eq=False)
class FiniteStructure:
    universe: tuple
    families: Mapping[int, tuple] = field(default_factory=dict)
    abstraction: Optional[AbstractionMap] = None
    arithmetic: Optional[Arithmetic] = None

    def __post_init__(self):
        atoms = set(self.universe)
        if len(atoms) != len(self.universe):
            raise PreconditionViolation("universe", "atoms must be distinct")
        for arity, family in self.families.items():
            for rel in family:
                elements = rel if arity == 1 else chain.from_iterable(rel)
                if arity > 1 and any(len(t) != arity for t in rel):
                    raise PreconditionViolation("families", f"tuple of wrong length in S{arity}")
                if not set(elements) <= atoms:
                    raise PreconditionViolation("families", f"S{arity} member leaves the universe")
        if self.abstraction is not None:
            sets = set(self.sets())
            for subset, value in self.abstraction.mapping.items():
                if subset not in sets:
                    raise PreconditionViolation("abstraction", f"domain set {sorted(subset)} not in S1")
                if value not in atoms:
                    raise PreconditionViolation("abstraction", f"value {value!r} not in universe")
            if self.abstraction.kind == "ext" and not self.abstraction.is_injective():
                raise PreconditionViolation("abstraction", "extension map must be injective")

    @classmethod
    def full_powerset(cls, m: int, max_arity: int = 2) -> "FiniteStructure":
        """Universe ``0..m-1`` with every relation of arity up to ``max_arity``."""
        universe = tuple(range(m))
        families = {1: tuple(powerset(universe))}
        for arity in range(2, max_arity + 1):
            families[arity] = tuple(powerset(product(universe, repeat=arity)))
        return cls(universe, families)

    def sets(self) -> tuple:
        return self.families.get(1, ())

    def family(self, arity: int) -> tuple:
        return self.families.get(arity, ())

    def with_abstraction(self, kind: AbstractionKind, mapping: Mapping[frozenset, Atom]) -> "FiniteStructure":
        return FiniteStructure(self.universe, self.families,
                               AbstractionMap(kind, {frozenset(k): v for k, v in mapping.items()}),
                               self.arithmetic)

    def with_arithmetic(self, arithmetic: Arithmetic) -> "FiniteStructure":
        return FiniteStructure(self.universe, self.families, self.abstraction, arithmetic)

    def with_sets(self, sets) -> "FiniteStructure":
        families = dict(self.families)
        families[1] = tuple(frozenset(s) for s in sets)
        return FiniteStructure(self.universe, families, self.abstraction, self.arithmetic)

    @cached_property
    def frame_key(self) -> tuple:
        """The universe and families, shared by structures differing only in ``#``."""
        return (self.universe, tuple(sorted(self.families.items())))

    def permute(self, bijection: Mapping[Atom, Atom]) -> "FiniteStructure":
        """Isomorphic copy with every atom renamed by ``bijection``."""
        if set(bijection) != set(self.universe) or len(set(bijection.values())) != len(self.universe):
            raise PreconditionViolation("bijection", "must permute the universe")
        f = bijection.get

        def image(arity, rel):
            if arity == 1:
                return frozenset(f(a) for a in rel)
            return frozenset(tuple(f(a) for a in t) for t in rel)

        families = {k: tuple(image(k, r) for r in fam) for k, fam in self.families.items()}
        abstraction = None
        if self.abstraction is not None:
            abstraction = AbstractionMap(self.abstraction.kind, {
                image(1, k): f(v) for k, v in self.abstraction.mapping.items()})
        arithmetic = None
        if self.arithmetic is not None:
            a = self.arithmetic
            arithmetic = Arithmetic(
                f(a.zero), {f(k): f(v) for k, v in a.succ.items()},
                None if a.plus is None else {(f(p), f(q)): f(r) for (p, q), r in a.plus.items()},
                None if a.times is None else {(f(p), f(q)): f(r) for (p, q), r in a.times.items()},
                None if a.leq is None else frozenset((f(p), f(q)) for p, q in a.leq))
        return FiniteStructure(tuple(f(a) for a in self.universe), families, abstraction, arithmetic)

    # JSON ----------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        relations: dict[str, list] = {}
        for arity, fam in sorted(self.families.items()):
            if arity == 1:
                relations["1"] = [sorted(s, key=repr) for s in fam]
            else:
                relations[str(arity)] = [sorted((list(t) for t in r), key=repr) for r in fam]
        data: dict[str, Any] = {"universe": list(self.universe), "relations": relations}
        if self.abstraction is not None:
            index = {s: i for i, s in enumerate(self.sets())}
            data["abstraction"] = {
                "kind": self.abstraction.kind,
                "pairs": [[index[s], v] for s, v in self.abstraction.mapping.items()],
            }
        if self.arithmetic is not None:
            data["arithmetic"] = {
                "zero": self.arithmetic.zero,
                "succ": [[k, v] for k, v in self.arithmetic.succ.items()],
            }
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "FiniteStructure":
        """Read ``{"universe": [...], "relations": {"1": [[..]], "2": [[[a, b], ..]]},
        "abstraction": {"kind": "ext", "pairs": [[set-index, atom]]}}``."""
        try:
            universe = tuple(data["universe"])
            families: dict[int, tuple] = {}
            for key, fam in data.get("relations", {}).items():
                arity = int(key)
                if arity == 1:
                    families[1] = tuple(frozenset(s) for s in fam)
                else:
                    families[arity] = tuple(frozenset(tuple(t) for t in r) for r in fam)
            structure = cls(universe, families)
            if "abstraction" in data:
                entry = data["abstraction"]
                sets = structure.sets()
                mapping = {sets[i]: v for i, v in entry["pairs"]}
                structure = structure.with_abstraction(entry.get("kind", "ext"), mapping)
            if "arithmetic" in data:
                entry = data["arithmetic"]
                structure = structure.with_arithmetic(
                    Arithmetic(entry["zero"], {k: v for k, v in entry["succ"]}))
        except (KeyError, IndexError, TypeError, ValueError) as e:
            raise PreconditionViolation("structure_json", f"malformed structure: {e}") from e
        return structure
