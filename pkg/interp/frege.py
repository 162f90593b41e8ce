"""Frege direction: arithmetic interpreted in the language of Hume's Principle.

Numbers are the objects of the least set ``N`` that contains ``Zero = #{}`` and is closed
under the successor relation. Successor, addition and multiplication become the relation
symbols ``SuccRel``, ``PlusGraph`` and ``TimesGraph``, each with a second-order definition.
``flatten`` removes the defined symbols by closing over them universally under their
defining equivalences; ``expand_definitions`` substitutes the defining formulas in place.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from common.errors import PreconditionViolation
from logic import macros
from logic.classify import Classification, classify
from logic.formula import (
    AbsOp, Abstraction, And, Const, EmptySet, Equal, ExistsObj, ExistsRel, ForallObj,
    ForallRel, Formula, Iff, Implies, Leq, Membership, Not, Num, ObjVar,
    Plus, REL_QUANTIFIERS, RelVar, Succ, Term, Times, all_names, atom_terms, conj,
    contains_abstraction, forall_objs, free_variables, fresh_name, iter_formulas,
    iter_terms, rebuild, rename_relation, replace_constant, subformulas, substitute_relation,
)
from logic.schemas import instantiate_comprehension

logger = logging.getLogger(__name__)

ZERO = Const("Zero")
N = RelVar("N", 1)
SUCC = RelVar("SuccRel", 2)
PLUS = RelVar("PlusGraph", 3)
TIMES = RelVar("TimesGraph", 3)
SYMBOLS = (N, SUCC, PLUS, TIMES)
RESERVED_RELATIONS = frozenset(r.name for r in SYMBOLS)

# defined symbols each definition mentions
DEPENDENCIES = {
    "N": ("SuccRel",),
    "SuccRel": (),
    "PlusGraph": ("SuccRel", "N"),
    "TimesGraph": ("PlusGraph", "SuccRel", "N"),
}


@dataclass(frozen=True)
class FregeDefinition:
    """Second-order definition ``symbol(params) <-> body``."""

    name: str
    params: tuple
    body: Formula

    @property
    def arity(self) -> int:
        return len(self.params)

    def sentence(self) -> Formula:
        if not self.params:
            return self.body
        rel = RelVar(self.name, self.arity)
        args = tuple(ObjVar(p) for p in self.params)
        return forall_objs(self.params, Iff(Membership(args, rel), self.body))

    def comprehension(self) -> Optional[Formula]:
        """Comprehension instance that makes the symbol exist (None for the constant)."""
        if not self.params:
            return None
        return instantiate_comprehension(self.body, self.name, self.arity, self.params)

    def classification(self) -> Classification:
        return classify(self.body)


@dataclass(frozen=True)
class FregeTranslation:
    translated: Formula
    definitions: tuple  # of FregeDefinition

    def symbols_used(self) -> list[str]:
        fv = free_variables(self.translated).relation_names()
        used = [r.name for r in SYMBOLS if r.name in fv]
        if _mentions_zero(self.translated):
            used.insert(0, "Zero")
        return used


def _mentions_zero(f: Formula) -> bool:
    for node in iter_formulas(f):
        for t in atom_terms(node):
            if any(isinstance(s, Const) and s.name == "Zero" for s in iter_terms(t)):
                return True
    return False


# ---------------------------------------------------------------------------
# Definitions

def _v(*names: str):
    return tuple(ObjVar(n) for n in names)


def definitions() -> tuple:
    """The defining formulas of Zero, SuccRel, N, PlusGraph and TimesGraph."""
    x, y, z, w, b, c, b2, u, v = _v("x", "y", "z", "w", "b", "c", "b2", "u", "v")
    X, Y, Z = RelVar("X", 1), RelVar("Y", 1), RelVar("Z", 1)
    G, H = RelVar("G", 3), RelVar("H", 3)

    # #X = x, #Y = y and Y minus one of its elements is equinumerous with X
    minus_one = ExistsRel("Z", 1, And(
        ForallObj("w", Iff(Membership((w,), Z), And(Membership((w,), Y), Not(Equal(w, b))))),
        Equal(Abstraction(AbsOp.HASH, X), Abstraction(AbsOp.HASH, Z))))
    succ_body = ExistsRel("X", 1, ExistsRel("Y", 1, conj([
        Equal(Abstraction(AbsOp.HASH, X), x),
        Equal(Abstraction(AbsOp.HASH, Y), y),
        ExistsObj("b", And(Membership((b,), Y), minus_one)),
    ])))

    inductive = And(Membership((ZERO,), X), forall_objs(["u", "v"], Implies(
        And(Membership((u,), X), Membership((u, v), SUCC)), Membership((v,), X))))
    n_body = ForallRel("X", 1, Implies(inductive, Membership((x,), X)))

    plus_body = ExistsRel("G", 3, conj([
        Membership((x, y, z), G),
        macros.within(G, N),
        Membership((x, ZERO, x), G),
        forall_objs(["b", "c", "b2"], Implies(
            And(Membership((x, b2, c), G), Membership((b, b2), SUCC)),
            ExistsObj("w", And(Membership((w, c), SUCC), Membership((x, b, w), G))))),
    ]))
    times_body = ExistsRel("H", 3, conj([
        Membership((x, y, z), H),
        macros.within(H, N),
        Membership((x, ZERO, ZERO), H),
        forall_objs(["b", "c", "b2"], Implies(
            And(Membership((x, b2, c), H), Membership((b, b2), SUCC)),
            ExistsObj("w", And(Membership((w, x, c), PLUS), Membership((x, b, w), H))))),
    ]))
    return (
        FregeDefinition("Zero", (), Equal(ZERO, Abstraction(AbsOp.HASH, EmptySet()))),
        FregeDefinition("SuccRel", ("x", "y"), succ_body),
        FregeDefinition("N", ("x",), n_body),
        FregeDefinition("PlusGraph", ("x", "y", "z"), plus_body),
        FregeDefinition("TimesGraph", ("x", "y", "z"), times_body),
    )


def recursion_clauses(symbol: str, zero: Term) -> Formula:
    """Arithmetical (in the symbol parameters) closure conditions of a defined symbol."""
    x, y, z, u, v = _v("x", "y", "z", "u", "v")
    if symbol == "N":
        return And(Membership((zero,), N), forall_objs(["x", "y"], Implies(
            And(Membership((x,), N), Membership((x, y), SUCC)), Membership((y,), N))))
    if symbol == "SuccRel":
        return forall_objs(["x", "y", "z"], Implies(
            And(Membership((x, y), SUCC), Membership((x, z), SUCC)), Equal(y, z)))
    if symbol == "PlusGraph":
        return And(
            ForallObj("x", Implies(Membership((x,), N), Membership((x, zero, x), PLUS))),
            forall_objs(["x", "y", "z", "v", "u"], Implies(
                conj([Membership((x, y, z), PLUS), Membership((y, v), SUCC),
                      Membership((z, u), SUCC)]),
                Membership((x, v, u), PLUS))))
    if symbol == "TimesGraph":
        return And(
            ForallObj("x", Implies(Membership((x,), N), Membership((x, zero, zero), TIMES))),
            forall_objs(["x", "y", "z", "v", "u"], Implies(
                conj([Membership((x, y, z), TIMES), Membership((y, v), SUCC),
                      Membership((z, x, u), PLUS)]),
                Membership((x, v, u), TIMES))))
    raise KeyError(symbol)


def _with_dependencies(used: set[str]) -> list[str]:
    closure = set(used)
    pending = list(used)
    while pending:
        for dep in DEPENDENCIES[pending.pop()]:
            if dep not in closure:
                closure.add(dep)
                pending.append(dep)
    return [r.name for r in SYMBOLS if r.name in closure]


# ---------------------------------------------------------------------------
# Translation

def _rename_reserved(f: Formula) -> Formula:
    """Move input relation names out of the way of the defined symbols."""
    avoid = all_names(f) | RESERVED_RELATIONS
    for rel in free_variables(f).relations:
        if rel.name in RESERVED_RELATIONS:
            new = RelVar(fresh_name(rel.name, avoid), rel.arity)
            avoid.add(new.name)
            f = rename_relation(f, rel.name, new)

    def walk(g: Formula) -> Formula:
        if isinstance(g, REL_QUANTIFIERS) and g.name in RESERVED_RELATIONS:
            new = RelVar(fresh_name(g.name, avoid), g.arity)
            avoid.add(new.name)
            g = type(g)(new.name, g.arity, rename_relation(g.body, g.name, new))
        children = subformulas(g)
        return rebuild(g, [walk(c) for c in children]) if children else g

    return walk(f)


class _Translator:
    def __init__(self, f: Formula):
        self.avoid = all_names(f) | RESERVED_RELATIONS

    def fresh(self, base: str) -> str:
        name = fresh_name(base, self.avoid)
        self.avoid.add(name)
        return name

    def term(self, t: Term, defs: list) -> Term:
        """Simple term for ``t``; compound subterms get fresh witnesses appended to ``defs``."""
        if isinstance(t, ObjVar):
            return t
        if isinstance(t, Num):
            if t.value == 0:
                return ZERO
            return self.term(Succ(Num(t.value - 1)), defs)
        if isinstance(t, (Succ, Plus, Times)):
            w = ObjVar(self.fresh("w"))
            defs.append((w.name, self.graph(t, w, defs)))
            return w
        raise PreconditionViolation("pa_language", f"term {t!r} is not an arithmetic term")

    def graph(self, t: Term, result: Term, defs: list) -> Formula:
        """Graph atom stating that compound ``t`` evaluates to the simple ``result``."""
        if isinstance(t, Num):
            t = Succ(Num(t.value - 1))
        if isinstance(t, Succ):
            return Membership((self.term(t.arg, defs), result), SUCC)
        left = self.term(t.left, defs)
        right = self.term(t.right, defs)
        return Membership((left, right, result), PLUS if isinstance(t, Plus) else TIMES)

    @staticmethod
    def _compound(t: Term) -> bool:
        return isinstance(t, (Succ, Plus, Times)) or (isinstance(t, Num) and t.value > 0)

    def atom(self, f: Formula) -> Formula:
        defs: list = []
        if isinstance(f, Equal) and self._compound(f.left) != self._compound(f.right):
            compound, simple = (f.left, f.right) if self._compound(f.left) else (f.right, f.left)
            result = self.term(simple, defs)
            core = self.graph(compound, result, defs)
        elif isinstance(f, Equal):
            core = Equal(self.term(f.left, defs), self.term(f.right, defs))
        elif isinstance(f, Leq):
            left, right = self.term(f.left, defs), self.term(f.right, defs)
            zname = self.fresh("z")
            zv = ObjVar(zname)
            core = ExistsObj(zname, And(Membership((zv,), N), Membership((left, zv, right), PLUS)))
        elif isinstance(f, Membership):
            core = Membership(tuple(self.term(a, defs) for a in f.args), f.rel)
        else:
            return f
        for name, definition in reversed(defs):
            core = ExistsObj(name, conj([Membership((ObjVar(name),), N), definition, core]))
        return core

    def formula(self, f: Formula) -> Formula:
        if isinstance(f, ForallObj):
            return ForallObj(f.name, Implies(Membership((ObjVar(f.name),), N), self.formula(f.body)))
        if isinstance(f, ExistsObj):
            return ExistsObj(f.name, And(Membership((ObjVar(f.name),), N), self.formula(f.body)))
        if isinstance(f, ForallRel):
            guard = macros.within(RelVar(f.name, f.arity), N)
            return ForallRel(f.name, f.arity, Implies(guard, self.formula(f.body)))
        if isinstance(f, ExistsRel):
            guard = macros.within(RelVar(f.name, f.arity), N)
            return ExistsRel(f.name, f.arity, And(guard, self.formula(f.body)))
        children = subformulas(f)
        if not children:
            return self.atom(f)
        return rebuild(f, [self.formula(c) for c in children])


def frege_translate(f: Formula) -> FregeTranslation:
    """Translate a formula of second-order arithmetic into the language of HP.

    Object quantifiers are relativized to ``N`` and relation quantifiers to relations on
    ``N``; ``0`` becomes ``Zero``; successor, sum and product terms become graph atoms with
    fresh existential witnesses; ``a <= b`` becomes ``∃z (z in N and PlusGraph(a, z, b))``.

    Args:
        f: Formula of the arithmetic language (no abstraction terms)

    Returns:
        FregeTranslation: Translated formula with the definitions of the defined symbols
    """
    if contains_abstraction(f):
        raise PreconditionViolation("pa_language", "abstraction terms are not arithmetic")
    for node in iter_formulas(f):
        for t in atom_terms(node):
            if any(isinstance(s, Const) for s in iter_terms(t)):
                raise PreconditionViolation("pa_language", "defined constants are not arithmetic")
    f = _rename_reserved(f)
    translated = _Translator(f).formula(f)
    logger.debug(f"Frege translation introduced {len(all_names(translated))} names")
    return FregeTranslation(translated, definitions())


def _defining(name: str, empty: Term) -> FregeDefinition:
    d = next(d for d in definitions() if d.name == name)
    return FregeDefinition(d.name, d.params, replace_constant(d.body, "Zero", empty))


def flatten(t: FregeTranslation, closed: bool = True) -> Formula:
    """Pure HP-language formula for a Frege translation.

    ``Zero`` becomes ``#{}``. The defined relation symbols that occur, plus the symbols
    their definitions mention, are universally quantified with the conjunction of their
    defining equivalences as antecedent. On a structure whose families contain the defined
    relations this agrees with ``expand_definitions``. With ``closed=False`` the symbols are
    left free.
    """
    empty = Abstraction(AbsOp.HASH, EmptySet())
    body = replace_constant(t.translated, "Zero", empty)
    if not closed:
        return body
    used = free_variables(body).relation_names() & RESERVED_RELATIONS
    if not used:
        return body
    params = _with_dependencies(used)
    guard = conj(_defining(name, empty).sentence() for name in params)
    result = Implies(guard, body)
    for name in reversed(params):
        rel = next(r for r in SYMBOLS if r.name == name)
        result = ForallRel(rel.name, rel.arity, result)
    return result


def expand_definitions(t: FregeTranslation) -> Formula:
    """Substitute the defining formula for every occurrence of a defined symbol.

    Symbols are replaced in the order TimesGraph, PlusGraph, N, SuccRel; each definition
    only mentions symbols later in that order.
    """
    empty = Abstraction(AbsOp.HASH, EmptySet())
    result = replace_constant(t.translated, "Zero", empty)
    for rel in (TIMES, PLUS, N, SUCC):
        d = _defining(rel.name, empty)
        result = substitute_relation(result, rel, d.params, d.body)
    logger.debug(f"Expanded definitions into {len(all_names(result))} names")
    return result


def inf_from_definitions(op: AbsOp = AbsOp.EXT) -> Formula:
    """The sentence Inf over the abstraction ``op``.

    Successor is ``y = op({x})``, N is the least set containing ``op({})`` closed under
    successor, and the addition and multiplication graphs satisfy the translated Q1-Q8.
    """
    from logic.theories import q_axioms

    zero = Abstraction(op, EmptySet())
    x, y = ObjVar("x"), ObjVar("y")
    X = RelVar("X", 1)
    succ_def = forall_objs(["x", "y"], Iff(
        Membership((x, y), SUCC),
        ExistsRel("X", 1, And(macros.singleton(X, x), Equal(Abstraction(op, X), y)))))
    u, v = ObjVar("u"), ObjVar("v")
    inductive = And(Membership((zero,), X), forall_objs(["u", "v"], Implies(
        And(Membership((u,), X), Membership((u, v), SUCC)), Membership((v,), X))))
    n_def = ForallObj("x", Iff(Membership((x,), N),
                               ForallRel("X", 1, Implies(inductive, Membership((x,), X)))))
    graphs = [recursion_clauses("PlusGraph", zero), recursion_clauses("TimesGraph", zero)]
    axioms = [replace_constant(frege_translate(q.formula).translated, "Zero", zero)
              for q in q_axioms()]
    body = conj([succ_def, n_def] + graphs + axioms)
    for rel in reversed(SYMBOLS):
        body = ExistsRel(rel.name, rel.arity, body)
    return body
