"""Formula macros shared by the parser, the theories and the translations.

Every macro is an ordinary formula builder; none of them introduces a relation
quantifier, so expanding a macro never changes a classification.
"""

from itertools import combinations
from typing import Iterable, Optional

from logic.formula import (
    And, Equal, ExistsObj, ForallObj, Formula, Iff, Implies, Membership, Not, ObjVar,
    RelVar, Term, Truth, conj, disj, exists_objs, forall_objs, fresh_name, term_object_vars,
)


def _fresh(bases: Iterable[str], avoid: set[str]) -> list[str]:
    names = []
    for base in bases:
        name = fresh_name(base, avoid)
        avoid.add(name)
        names.append(name)
    return names


def bijection(f: RelVar, X: RelVar, Y: RelVar) -> Formula:
    """``f`` is the graph of a bijection from ``X`` onto ``Y``.

    Four conjuncts: every element of X has exactly one f-image and it lies in Y; f is
    injective; every element of Y has an f-preimage in X; f relates only X to Y.
    """
    avoid = {f.name, X.name, Y.name}
    x, x2, y, z = _fresh(["x", "x", "y", "z"], avoid)
    vx, vx2, vy, vz = ObjVar(x), ObjVar(x2), ObjVar(y), ObjVar(z)

    functional = ForallObj(x, Implies(
        Membership((vx,), X),
        ExistsObj(y, conj([
            Membership((vx, vy), f),
            Membership((vy,), Y),
            ForallObj(z, Implies(Membership((vx, vz), f), Equal(vz, vy))),
        ]))))
    injective = forall_objs([x, x2, y], Implies(
        And(Membership((vx, vy), f), Membership((vx2, vy), f)),
        Equal(vx, vx2)))
    surjective = ForallObj(y, Implies(
        Membership((vy,), Y),
        ExistsObj(x, And(Membership((vx,), X), Membership((vx, vy), f)))))
    restricted = forall_objs([x, y], Implies(
        Membership((vx, vy), f),
        And(Membership((vx,), X), Membership((vy,), Y))))
    return conj([functional, injective, surjective, restricted])


def subset(X: RelVar, Y: RelVar) -> Formula:
    """Inclusion of relations of equal arity."""
    avoid = {X.name, Y.name}
    names = _fresh(["x"] * X.arity, avoid)
    args = tuple(ObjVar(n) for n in names)
    return forall_objs(names, Implies(Membership(args, X), Membership(args, Y)))


def within(X: RelVar, domain: RelVar) -> Formula:
    """Every coordinate of every tuple of ``X`` lies in the unary ``domain``."""
    avoid = {X.name, domain.name}
    names = _fresh(["x"] * X.arity, avoid)
    args = tuple(ObjVar(n) for n in names)
    return forall_objs(names, Implies(
        Membership(args, X),
        conj(Membership((a,), domain) for a in args)))


def singleton(X: RelVar, t: Term, avoid: Optional[set[str]] = None) -> Formula:
    """``X = {t}``."""
    avoid = set(avoid or ()) | {X.name}
    (w,) = _fresh(["w"], avoid | set(term_object_vars(t)))
    return ForallObj(w, Iff(Membership((ObjVar(w),), X), Equal(ObjVar(w), t)))


def distinct(names: list[str]) -> Formula:
    return conj(Not(Equal(ObjVar(a), ObjVar(b))) for a, b in combinations(names, 2))


def at_least(n: int, holds, avoid: set[str], base: str = "w") -> Formula:
    """∃ n pairwise distinct witnesses satisfying ``holds(var)``."""
    if n == 0:
        return Truth(True)
    names = _fresh([base] * n, set(avoid))
    body = conj([distinct(names)] + [holds(ObjVar(w)) for w in names])
    return exists_objs(names, body)


def exactly(n: int, holds, avoid: set[str], base: str = "w") -> Formula:
    """Exactly ``n`` elements satisfy ``holds``: n distinct witnesses and no more."""
    avoid = set(avoid)
    names = _fresh([base] * n, avoid)
    (other,) = _fresh([base], avoid)
    closure = ForallObj(other, Implies(
        holds(ObjVar(other)),
        disj(Equal(ObjVar(other), ObjVar(w)) for w in names)))
    body = conj([distinct(names)] + [holds(ObjVar(w)) for w in names] + [closure])
    return exists_objs(names, body)


def card_eq(X: RelVar, n: int) -> Formula:
    """``X`` has exactly ``n`` elements (distinct-witnesses encoding)."""
    return exactly(n, lambda v: Membership((v,), X), {X.name})
