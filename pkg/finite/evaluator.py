"""Henkin-style evaluation of two-sorted formulas over explicit finite structures.

Relation quantifiers range over the families ``S_n`` of the structure only. Subformulas
that start with a relation quantifier and mention neither abstraction nor arithmetic are
memoized per frame, so a cache shared between structures that differ only in their
abstraction map pays for each such subformula once.
"""

import logging
from functools import lru_cache
from typing import Any, Mapping, MutableMapping, Optional

from common.errors import AbstractionUndefined, PreconditionViolation, UnassignedVariable
from finite.structure import FiniteStructure
from logic.formula import (
    Abstraction, And, Const, EmptySet, Equal, ExistsObj, ExistsRel, ForallObj, ForallRel,
    Formula, Iff, Implies, Leq, Membership, Not, Num, ObjVar, Or, Plus, REL_QUANTIFIERS, RelVar,
    Succ, Term, Times, Truth, atom_terms, free_variables, iter_formulas, iter_terms,
)

logger = logging.getLogger(__name__)

Cache = MutableMapping[tuple, bool]


@lru_cache(maxsize=65536)
def _cacheable(f: Formula) -> bool:
    if not isinstance(f, REL_QUANTIFIERS):
        return False
    for node in iter_formulas(f):
        if isinstance(node, Leq):
            return False
        for t in atom_terms(node):
            for sub in iter_terms(t):
                if isinstance(sub, (Abstraction, Const, Num, Succ, Plus, Times)):
                    return False
    return True


def _normalize_relation(value: Any, arity: int) -> frozenset:
    if arity == 1:
        return frozenset(value)
    return frozenset(tuple(t) for t in value)


class Evaluator:
    """Evaluates formulas over one structure, optionally sharing a memo table."""

    def __init__(self, structure: FiniteStructure, cache: Optional[Cache] = None):
        self.structure = structure
        self.cache: Cache = {} if cache is None else cache
        self._universe = structure.universe

    def eval(self, f: Formula, env: Optional[Mapping[str, Any]] = None) -> bool:
        env = dict(env or {})
        fv = free_variables(f)
        objects: dict[str, Any] = {}
        relations: dict[str, frozenset] = {}
        for name in fv.objects:
            if name not in env:
                raise UnassignedVariable(name)
            objects[name] = env[name]
        for rel in fv.relations:
            if rel.name not in env:
                raise UnassignedVariable(rel.name)
            relations[rel.name] = _normalize_relation(env[rel.name], rel.arity)
        return self._eval(f, objects, relations)

    # terms ---------------------------------------------------------------

    def _arithmetic(self, what: str):
        arithmetic = self.structure.arithmetic
        if arithmetic is None:
            raise PreconditionViolation("arithmetic", f"structure does not interpret {what}")
        return arithmetic

    def _set_value(self, body, relations) -> frozenset:
        if isinstance(body, EmptySet):
            return frozenset()
        try:
            return relations[body.name]
        except KeyError:
            raise UnassignedVariable(body.name) from None

    def _abstract(self, subset: frozenset):
        abstraction = self.structure.abstraction
        if abstraction is None or subset not in abstraction.mapping:
            raise AbstractionUndefined(subset)
        return abstraction.mapping[subset]

    def term(self, t: Term, objects: Mapping[str, Any], relations: Mapping[str, frozenset]):
        if isinstance(t, ObjVar):
            try:
                return objects[t.name]
            except KeyError:
                raise UnassignedVariable(t.name) from None
        if isinstance(t, Abstraction):
            return self._abstract(self._set_value(t.body, relations))
        if isinstance(t, Const):
            if t.name == "Zero":
                return self._abstract(frozenset())
            raise PreconditionViolation("constant", f"{t.name} has no interpretation")
        if isinstance(t, Num):
            value = self._arithmetic("0").zero
            for _ in range(t.value):
                value = self._step(value)
            return value
        if isinstance(t, Succ):
            return self._step(self.term(t.arg, objects, relations))
        if isinstance(t, (Plus, Times)):
            arithmetic = self._arithmetic("+" if isinstance(t, Plus) else "*")
            table = arithmetic.plus if isinstance(t, Plus) else arithmetic.times
            if table is None:
                raise PreconditionViolation("arithmetic", "structure has no addition/multiplication table")
            key = (self.term(t.left, objects, relations), self.term(t.right, objects, relations))
            if key not in table:
                raise PreconditionViolation("arithmetic", f"operation undefined at {key}")
            return table[key]
        raise TypeError(f"not a term: {t!r}")

    def _step(self, value):
        succ = self._arithmetic("s").succ
        if value not in succ:
            raise PreconditionViolation("arithmetic", f"successor undefined at {value!r}")
        return succ[value]

    # formulas ------------------------------------------------------------

    def _eval(self, f: Formula, objects: dict, relations: dict) -> bool:
        if isinstance(f, Truth):
            return f.value
        if isinstance(f, Membership):
            args = tuple(self.term(a, objects, relations) for a in f.args)
            rel = self._set_value(f.rel, relations)
            return (args[0] in rel) if f.rel.arity == 1 else (args in rel)
        if isinstance(f, Equal):
            return self.term(f.left, objects, relations) == self.term(f.right, objects, relations)
        if isinstance(f, Leq):
            leq = self._arithmetic("<=").leq
            if leq is None:
                raise PreconditionViolation("arithmetic", "structure has no order")
            return (self.term(f.left, objects, relations), self.term(f.right, objects, relations)) in leq
        if isinstance(f, Not):
            return not self._eval(f.body, objects, relations)
        if isinstance(f, And):
            return self._eval(f.left, objects, relations) and self._eval(f.right, objects, relations)
        if isinstance(f, Or):
            return self._eval(f.left, objects, relations) or self._eval(f.right, objects, relations)
        if isinstance(f, Implies):
            return (not self._eval(f.left, objects, relations)) or self._eval(f.right, objects, relations)
        if isinstance(f, Iff):
            return self._eval(f.left, objects, relations) == self._eval(f.right, objects, relations)
        if isinstance(f, (ForallObj, ExistsObj)):
            test = all if isinstance(f, ForallObj) else any
            return test(self._eval(f.body, {**objects, f.name: a}, relations) for a in self._universe)
        if isinstance(f, (ForallRel, ExistsRel)):
            return self._relation_quantifier(f, objects, relations)
        raise TypeError(f"not a formula: {f!r}")

    def _relation_quantifier(self, f, objects: dict, relations: dict) -> bool:
        key = None
        if _cacheable(f):
            fv = free_variables(f)
            key = (self.structure.frame_key, f,
                   tuple(objects[n] for n in fv.objects),
                   tuple(relations[r.name] for r in fv.relations))
            if key in self.cache:
                return self.cache[key]
        test = all if isinstance(f, ForallRel) else any
        result = test(self._eval(f.body, objects, {**relations, f.name: r})
                      for r in self.structure.family(f.arity))
        if key is not None:
            self.cache[key] = result
        return result


def eval_formula(s: FiniteStructure, f: Formula, env: Optional[Mapping[str, Any]] = None,
                 cache: Optional[Cache] = None) -> bool:
    """Truth value of ``f`` in ``s`` under ``env``.

    Args:
        s: The finite structure
        f: Formula whose free variables are all assigned by ``env``
        env: Objects by name; relations as iterables of atoms (arity 1) or of tuples
        cache: Memo table to share between structures with the same frame

    Raises:
        UnassignedVariable: a free variable has no value
        AbstractionUndefined: ``#``/``ext`` applied outside the abstraction domain
    """
    return Evaluator(s, cache).eval(f, env)


def relation_value(s: FiniteStructure, rel: RelVar, value) -> frozenset:
    """Check that ``value`` belongs to ``S_n`` of ``s`` and return it normalized."""
    normalized = _normalize_relation(value, rel.arity)
    if normalized not in set(s.family(rel.arity)):
        raise PreconditionViolation("env", f"{rel.name} is not a member of S{rel.arity}")
    return normalized
