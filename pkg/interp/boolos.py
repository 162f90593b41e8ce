"""Boolos direction: Hume's Principle interpreted in second-order arithmetic.

``#X`` is read as ``n + 1`` when X has exactly n elements and as ``0`` when X is infinite.
In ``arithmetic`` mode cardinality is expressed with a beta-function coded enumeration; in
``finite`` mode (bound m) it is a disjunction of distinct-witness counts, which is what the
finite evaluator checks against.
"""

import logging
from typing import Literal, Optional

from common.errors import AbstractionTranslationError, PreconditionViolation
from finite.structure import FiniteStructure
from logic import macros
from logic.formula import (
    AbsOp, Abstraction, And, EmptySet, Equal, ExistsObj, ForallObj, Formula, Implies, Leq,
    Membership, Num, ObjVar, Or, RelVar, Succ, Term, Times, all_names, atom_terms, conj,
    contains_abstraction, disj, exists_objs, fresh_name, iter_terms, map_term,
    numeral, Plus, rebuild, subformulas,
)

logger = logging.getLogger(__name__)

Mode = Literal["arithmetic", "finite"]


class _Names:
    def __init__(self, avoid: set[str]):
        self.avoid = set(avoid)

    def __call__(self, base: str) -> str:
        name = fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name


def _lt(a: Term, b: Term) -> Formula:
    return Leq(Succ(a), b)


def beta(c: Term, d: Term, i: Term, e: Term, names: _Names) -> Formula:
    """``e`` is the remainder of ``c`` modulo ``1 + (i + 1) * d``."""
    q = ObjVar(names("q"))
    modulus = Succ(Times(Succ(i), d))
    return ExistsObj(q.name, And(Equal(c, Plus(Times(q, modulus), e)), _lt(e, modulus)))


def card_arith(X: RelVar, n: Term, names: _Names) -> Formula:
    """X has exactly n elements: some coded sequence lists X strictly increasingly in n steps."""
    c, d, i, e, e2, x, j = (ObjVar(names(b)) for b in ("c", "d", "i", "e", "e", "x", "i"))
    listed = ForallObj(i.name, Implies(_lt(i, n), ExistsObj(e.name, conj([
        beta(c, d, i, e, names),
        Membership((e,), X),
        ForallObj(e2.name, Implies(And(_lt(Succ(i), n), beta(c, d, Succ(i), e2, names)),
                                   _lt(e, e2))),
    ]))))
    covered = ForallObj(x.name, Implies(Membership((x,), X), ExistsObj(j.name, And(
        _lt(j, n), beta(c, d, j, x, names)))))
    return exists_objs([c.name, d.name], And(listed, covered))


def infinite(X: RelVar, names: _Names) -> Formula:
    """``∀n ∃x (n <= x and x in X)``."""
    n, x = ObjVar(names("n")), ObjVar(names("x"))
    return ForallObj(n.name, ExistsObj(x.name, And(Leq(n, x), Membership((x,), X))))


def number_of(body, t: Term, names: _Names, mode: Mode, bound: Optional[int]) -> Formula:
    """``#body = t`` under the Boolos reading."""
    if isinstance(body, EmptySet):
        return Equal(t, Succ(Num(0)))
    if mode == "finite":
        return disj(And(macros.exactly(k, lambda v: Membership((v,), body), names.avoid | {body.name}),
                        Equal(t, numeral(k + 1)))
                    for k in range(bound + 1))
    n = ObjVar(names("n"))
    finite_case = ExistsObj(n.name, And(card_arith(body, n, names), Equal(t, Succ(n))))
    return Or(finite_case, And(infinite(body, names), Equal(t, Num(0))))


def _hash_terms(f: Formula) -> list[Abstraction]:
    found: list[Abstraction] = []
    for t in atom_terms(f):
        for sub in iter_terms(t):
            if isinstance(sub, Abstraction) and sub not in found:
                found.append(sub)
    return found


def _contains_hash(t: Term) -> bool:
    return any(isinstance(s, Abstraction) for s in iter_terms(t))


def _translate_atom(f: Formula, names: _Names, mode: Mode, bound: Optional[int]) -> Formula:
    terms = _hash_terms(f)
    if not terms:
        return f
    if isinstance(f, Equal):
        for abstract, other in ((f.left, f.right), (f.right, f.left)):
            if isinstance(abstract, Abstraction) and not _contains_hash(other):
                return number_of(abstract.body, other, names, mode, bound)
    witnesses = [(term, ObjVar(names("v"))) for term in terms]
    replaced = f
    for term, var in witnesses:
        replaced = _replace_term(replaced, term, var)
    body = conj([number_of(term.body, var, names, mode, bound) for term, var in witnesses]
                + [replaced])
    return exists_objs([var.name for _, var in witnesses], body)


def _replace_term(f: Formula, target: Term, var: ObjVar) -> Formula:
    fn = lambda t: var if t == target else t
    if isinstance(f, Membership):
        return Membership(tuple(map_term(a, fn) for a in f.args), f.rel)
    return type(f)(map_term(f.left, fn), map_term(f.right, fn))


def boolos_translate(f: Formula, mode: Mode = "arithmetic", bound: Optional[int] = None) -> Formula:
    """Replace every ``#``-atom by its cardinality reading.

    Args:
        f: Formula of the HP language; only ``#`` abstractions
        mode: ``arithmetic`` (beta-coded cardinality) or ``finite`` (witness counts)
        bound: Largest cardinality considered in ``finite`` mode

    Raises:
        AbstractionTranslationError: ``f`` contains an ``ext`` term
    """
    if contains_abstraction(f, AbsOp.EXT):
        raise AbstractionTranslationError("extension terms have no Boolos reading")
    if mode == "finite" and bound is None:
        raise PreconditionViolation("bound", "finite mode needs a cardinality bound")
    names = _Names(all_names(f))

    def walk(g: Formula) -> Formula:
        children = subformulas(g)
        if not children:
            return _translate_atom(g, names, mode, bound)
        return rebuild(g, [walk(c) for c in children])

    result = walk(f)
    logger.debug(f"Boolos translation ({mode}) done")
    return result


def boolos_image_structure(s: FiniteStructure) -> FiniteStructure:
    """The structure whose ``#`` is ``s^(|X|+1)(0)`` in the arithmetic part of ``s``."""
    if s.arithmetic is None:
        raise PreconditionViolation("arithmetic", "structure has no zero and successor")
    mapping = {}
    for subset in s.sets():
        value = s.arithmetic.zero
        for _ in range(len(subset) + 1):
            value = s.arithmetic.succ[value]
        mapping[subset] = value
    return s.with_abstraction("hash", mapping)
