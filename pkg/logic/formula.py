"""Two-sorted second-order formula AST.

Terms and formulas are frozen dataclasses, so they hash and compare structurally and can
be shared freely. Variables are named; capture is avoided by renaming bound variables
with a deterministic fresh-name counter (see ``fresh_name``).
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Mapping, Optional, Union

from common.errors import SchemaError


class AbsOp(str, Enum):
    """Abstraction operator tag: ``#`` for Hume's Principle, ``ext`` for Basic Law V."""
    HASH = "hash"
    EXT = "ext"


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class ObjVar:
    name: str


@dataclass(frozen=True)
class Num:
    """Numeral of the arithmetic language; ``Num(0)`` is the zero constant."""
    value: int


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Const:
    """Defined constant of a translation (``Zero``)."""
    name: str


@dataclass(frozen=True)
class EmptySet:
    """The empty set term, only meaningful under an abstraction."""


@dataclass(frozen=True)
class RelVar:
    name: str
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise SchemaError(f"relation {self.name!r} needs arity >= 1, got {self.arity}")


SetTerm = Union[RelVar, EmptySet]


@dataclass(frozen=True)
class Abstraction:
    op: AbsOp
    body: SetTerm

    def __post_init__(self):
        if isinstance(self.body, RelVar) and self.body.arity != 1:
            raise SchemaError(f"abstraction applies to sets only, got {self.body.name}:{self.body.arity}")


Term = Union[ObjVar, Num, Succ, Plus, Times, Const, Abstraction]


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Membership:
    args: tuple
    rel: RelVar

    def __post_init__(self):
        if len(self.args) != self.rel.arity:
            raise SchemaError(
                f"{self.rel.name} has arity {self.rel.arity} but is applied to {len(self.args)} terms")


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Leq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForallObj:
    name: str
    body: "Formula"


@dataclass(frozen=True)
class ExistsObj:
    name: str
    body: "Formula"


@dataclass(frozen=True)
class ForallRel:
    name: str
    arity: int
    body: "Formula"


@dataclass(frozen=True)
class ExistsRel:
    name: str
    arity: int
    body: "Formula"


Atom = Union[Truth, Membership, Equal, Leq]
Formula = Union[Truth, Membership, Equal, Leq, Not, And, Or, Implies, Iff,
                ForallObj, ExistsObj, ForallRel, ExistsRel]

BINARY = (And, Or, Implies, Iff)
OBJ_QUANTIFIERS = (ForallObj, ExistsObj)
REL_QUANTIFIERS = (ForallRel, ExistsRel)
ATOMS = (Truth, Membership, Equal, Leq)


# ---------------------------------------------------------------------------
# Builders

def conj(parts: Iterable[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``true``."""
    items = list(parts)
    if not items:
        return Truth(True)
    result = items[-1]
    for item in reversed(items[:-1]):
        result = And(item, result)
    return result


def disj(parts: Iterable[Formula]) -> Formula:
    """Right-nested disjunction; the empty disjunction is ``false``."""
    items = list(parts)
    if not items:
        return Truth(False)
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Or(item, result)
    return result


def forall_objs(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = ForallObj(name, body)
    return body


def exists_objs(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = ExistsObj(name, body)
    return body


def member(rel: RelVar, *args: Term) -> Membership:
    return Membership(tuple(args), rel)


def set_var(name: str) -> RelVar:
    return RelVar(name, 1)


def numeral(n: int) -> Term:
    """``s^n(0)`` as nested successor terms."""
    term: Term = Num(0)
    for _ in range(n):
        term = Succ(term)
    return term


def negate(f: Formula) -> Formula:
    return Not(f)


# ---------------------------------------------------------------------------
# Traversal

def term_children(t: Term) -> tuple:
    if isinstance(t, Succ):
        return (t.arg,)
    if isinstance(t, (Plus, Times)):
        return (t.left, t.right)
    return ()


def term_object_vars(t: Term) -> list[str]:
    if isinstance(t, ObjVar):
        return [t.name]
    out: list[str] = []
    for child in term_children(t):
        out.extend(term_object_vars(child))
    return out


def term_relations(t: Term) -> list[RelVar]:
    if isinstance(t, Abstraction):
        return [t.body] if isinstance(t.body, RelVar) else []
    out: list[RelVar] = []
    for child in term_children(t):
        out.extend(term_relations(child))
    return out


def iter_terms(t: Term):
    yield t
    for child in term_children(t):
        yield from iter_terms(child)


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, Membership):
        return f.args
    if isinstance(f, (Equal, Leq)):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, OBJ_QUANTIFIERS + REL_QUANTIFIERS):
        return (f.body,)
    return ()


def iter_formulas(f: Formula):
    yield f
    for child in subformulas(f):
        yield from iter_formulas(child)


def depth(f: Formula) -> int:
    children = subformulas(f)
    return 1 + max((depth(c) for c in children), default=0)


@dataclass(frozen=True)
class FreeVariables:
    """Free variables in order of first occurrence."""
    objects: tuple
    relations: tuple  # of RelVar

    def relation_names(self) -> set[str]:
        return {r.name for r in self.relations}


@lru_cache(maxsize=65536)
def free_variables(f: Formula) -> FreeVariables:
    objects: list[str] = []
    relations: list[RelVar] = []

    def add_obj(name: str):
        if name not in objects:
            objects.append(name)

    def add_rel(rel: RelVar):
        if rel not in relations:
            relations.append(rel)

    if isinstance(f, ATOMS):
        terms = atom_terms(f)
        if isinstance(f, Membership):
            for t in terms:
                for name in term_object_vars(t):
                    add_obj(name)
                for rel in term_relations(t):
                    add_rel(rel)
            add_rel(f.rel)
        else:
            for t in terms:
                for name in term_object_vars(t):
                    add_obj(name)
                for rel in term_relations(t):
                    add_rel(rel)
        return FreeVariables(tuple(objects), tuple(relations))

    if isinstance(f, OBJ_QUANTIFIERS):
        inner = free_variables(f.body)
        return FreeVariables(tuple(n for n in inner.objects if n != f.name), inner.relations)
    if isinstance(f, REL_QUANTIFIERS):
        inner = free_variables(f.body)
        return FreeVariables(inner.objects, tuple(r for r in inner.relations if r.name != f.name))

    for child in subformulas(f):
        inner = free_variables(child)
        for name in inner.objects:
            add_obj(name)
        for rel in inner.relations:
            add_rel(rel)
    return FreeVariables(tuple(objects), tuple(relations))


def all_names(f: Formula) -> set[str]:
    """Every variable name occurring in ``f``, bound or free, of either sort."""
    names: set[str] = set()
    for node in iter_formulas(f):
        if isinstance(node, OBJ_QUANTIFIERS + REL_QUANTIFIERS):
            names.add(node.name)
        if isinstance(node, Membership):
            names.add(node.rel.name)
        for t in atom_terms(node):
            for sub in iter_terms(t):
                if isinstance(sub, ObjVar):
                    names.add(sub.name)
                elif isinstance(sub, Abstraction) and isinstance(sub.body, RelVar):
                    names.add(sub.body.name)
    return names


def contains_abstraction(f: Formula, op: Optional[AbsOp] = None) -> bool:
    for node in iter_formulas(f):
        for t in atom_terms(node):
            for sub in iter_terms(t):
                if isinstance(sub, Abstraction) and (op is None or sub.op == op):
                    return True
    return False


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """Deterministic fresh variable: ``base`` itself if unused, else ``base1``, ``base2``, ..."""
    taken = set(avoid)
    stem = base.rstrip("0123456789") or base
    if base not in taken:
        return base
    counter = 1
    while f"{stem}{counter}" in taken:
        counter += 1
    return f"{stem}{counter}"


# ---------------------------------------------------------------------------
# Substitution

def substitute_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, ObjVar):
        return mapping.get(t.name, t)
    if isinstance(t, Succ):
        return Succ(substitute_term(t.arg, mapping))
    if isinstance(t, Plus):
        return Plus(substitute_term(t.left, mapping), substitute_term(t.right, mapping))
    if isinstance(t, Times):
        return Times(substitute_term(t.left, mapping), substitute_term(t.right, mapping))
    return t


def _rename_rel_in_term(t: Term, old: str, new: RelVar) -> Term:
    if isinstance(t, Abstraction) and isinstance(t.body, RelVar) and t.body.name == old:
        return Abstraction(t.op, new)
    if isinstance(t, Succ):
        return Succ(_rename_rel_in_term(t.arg, old, new))
    if isinstance(t, Plus):
        return Plus(_rename_rel_in_term(t.left, old, new), _rename_rel_in_term(t.right, old, new))
    if isinstance(t, Times):
        return Times(_rename_rel_in_term(t.left, old, new), _rename_rel_in_term(t.right, old, new))
    return t


def _map_atom_terms(f: Formula, fn) -> Formula:
    if isinstance(f, Membership):
        return Membership(tuple(fn(t) for t in f.args), f.rel)
    if isinstance(f, Equal):
        return Equal(fn(f.left), fn(f.right))
    if isinstance(f, Leq):
        return Leq(fn(f.left), fn(f.right))
    return f


def map_term(t: Term, fn) -> Term:
    """Apply ``fn`` bottom-up to every subterm of ``t``."""
    if isinstance(t, Succ):
        t = Succ(map_term(t.arg, fn))
    elif isinstance(t, Plus):
        t = Plus(map_term(t.left, fn), map_term(t.right, fn))
    elif isinstance(t, Times):
        t = Times(map_term(t.left, fn), map_term(t.right, fn))
    return fn(t)


def map_terms(f: Formula, fn) -> Formula:
    """Apply ``fn`` to every term of every atom; ``fn`` must not introduce variables."""
    if isinstance(f, ATOMS):
        return _map_atom_terms(f, lambda t: map_term(t, fn))
    children = subformulas(f)
    if not children:
        return f
    return rebuild(f, [map_terms(c, fn) for c in children])


def replace_constant(f: Formula, name: str, term: Term) -> Formula:
    """Replace the defined constant ``name`` by a closed term."""
    return map_terms(f, lambda t: term if isinstance(t, Const) and t.name == name else t)


def rebuild(f: Formula, children: list) -> Formula:
    """Copy of ``f`` with its immediate subformulas replaced."""
    if isinstance(f, Not):
        return Not(children[0])
    if isinstance(f, BINARY):
        return type(f)(children[0], children[1])
    if isinstance(f, OBJ_QUANTIFIERS):
        return type(f)(f.name, children[0])
    if isinstance(f, REL_QUANTIFIERS):
        return type(f)(f.name, f.arity, children[0])
    return f


def substitute(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Capture-avoiding substitution of terms for free object variables."""
    mapping = {k: v for k, v in mapping.items() if k in free_variables(f).objects}
    if not mapping:
        return f
    if isinstance(f, ATOMS):
        return _map_atom_terms(f, lambda t: substitute_term(t, mapping))
    if isinstance(f, OBJ_QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.name}
        incoming = {n for v in inner.values() for n in term_object_vars(v)}
        if f.name in incoming:
            new_name = fresh_name(f.name, all_names(f.body) | incoming | set(inner))
            body = substitute(f.body, {f.name: ObjVar(new_name)})
            return type(f)(new_name, substitute(body, inner))
        return type(f)(f.name, substitute(f.body, inner))
    if isinstance(f, REL_QUANTIFIERS):
        incoming_rels = {r.name for v in mapping.values() for r in term_relations(v)}
        if f.name in incoming_rels:
            new_name = fresh_name(f.name, all_names(f.body) | incoming_rels)
            body = rename_relation(f.body, f.name, RelVar(new_name, f.arity))
            return type(f)(new_name, f.arity, substitute(body, mapping))
        return type(f)(f.name, f.arity, substitute(f.body, mapping))
    return rebuild(f, [substitute(c, mapping) for c in subformulas(f)])


def rename_relation(f: Formula, old: str, new: RelVar) -> Formula:
    """Replace free occurrences of relation ``old`` by ``new`` (same arity), avoiding capture."""
    if old not in free_variables(f).relation_names():
        return f
    if isinstance(f, ATOMS):
        f = _map_atom_terms(f, lambda t: _rename_rel_in_term(t, old, new))
        if isinstance(f, Membership) and f.rel.name == old:
            return Membership(f.args, new)
        return f
    if isinstance(f, REL_QUANTIFIERS):
        if f.name == new.name:
            fresh = fresh_name(f.name, all_names(f.body) | {new.name, old})
            body = rename_relation(f.body, f.name, RelVar(fresh, f.arity))
            return type(f)(fresh, f.arity, rename_relation(body, old, new))
        return type(f)(f.name, f.arity, rename_relation(f.body, old, new))
    return rebuild(f, [rename_relation(c, old, new) for c in subformulas(f)])


def substitute_relation(f: Formula, rel: RelVar, params: tuple, definition: Formula) -> Formula:
    """Replace every free atom ``rel(t1..tn)`` by ``definition[params := t1..tn]``."""
    if rel.name not in free_variables(f).relation_names():
        return f
    if isinstance(f, Membership) and f.rel.name == rel.name:
        return substitute(definition, dict(zip(params, f.args)))
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, REL_QUANTIFIERS) and f.name == rel.name:
        return f
    if isinstance(f, OBJ_QUANTIFIERS + REL_QUANTIFIERS):
        clash = free_variables(definition)
        clash_names = set(clash.objects) | clash.relation_names()
        if f.name in clash_names:
            fresh = fresh_name(f.name, all_names(f) | all_names(definition))
            if isinstance(f, OBJ_QUANTIFIERS):
                f = type(f)(fresh, substitute(f.body, {f.name: ObjVar(fresh)}))
            else:
                f = type(f)(fresh, f.arity, rename_relation(f.body, f.name, RelVar(fresh, f.arity)))
    return rebuild(f, [substitute_relation(c, rel, params, definition) for c in subformulas(f)])


# ---------------------------------------------------------------------------
# Normal forms

def nnf(f: Formula) -> Formula:
    """Negation normal form with ``->`` and ``<->`` expanded.

    ``a <-> b`` becomes ``(not a or b) and (a or not b)``; its negation becomes the dual
    ``(a and not b) or (not a and b)``, so ``nnf(not f)`` is always the structural dual of
    ``nnf(f)``.
    """
    return _nnf(f, positive=True)


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, Truth):
        return f if positive else Truth(not f.value)
    if isinstance(f, ATOMS):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.body, not positive)
    if isinstance(f, And):
        cls = And if positive else Or
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Or):
        cls = Or if positive else And
        return cls(_nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Implies):
        if positive:
            return Or(_nnf(f.left, False), _nnf(f.right, True))
        return And(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if positive:
            return And(Or(_nnf(a, False), _nnf(b, True)), Or(_nnf(a, True), _nnf(b, False)))
        return Or(And(_nnf(a, True), _nnf(b, False)), And(_nnf(a, False), _nnf(b, True)))
    if isinstance(f, ForallObj):
        return (ForallObj if positive else ExistsObj)(f.name, _nnf(f.body, positive))
    if isinstance(f, ExistsObj):
        return (ExistsObj if positive else ForallObj)(f.name, _nnf(f.body, positive))
    if isinstance(f, ForallRel):
        return (ForallRel if positive else ExistsRel)(f.name, f.arity, _nnf(f.body, positive))
    if isinstance(f, ExistsRel):
        return (ExistsRel if positive else ForallRel)(f.name, f.arity, _nnf(f.body, positive))
    raise TypeError(f"not a formula: {f!r}")


def universal_closure(f: Formula) -> Formula:
    """Universally quantify every free variable of ``f`` (objects innermost)."""
    fv = free_variables(f)
    body = forall_objs(fv.objects, f)
    for rel in reversed(fv.relations):
        body = ForallRel(rel.name, rel.arity, body)
    return body


# ---------------------------------------------------------------------------
# JSON export

def term_to_json(t: Term) -> dict[str, Any]:
    if isinstance(t, ObjVar):
        return {"kind": "var", "name": t.name}
    if isinstance(t, Num):
        return {"kind": "num", "name": str(t.value)}
    if isinstance(t, Const):
        return {"kind": "const", "name": t.name}
    if isinstance(t, Succ):
        return {"kind": "succ", "args": [term_to_json(t.arg)]}
    if isinstance(t, Plus):
        return {"kind": "plus", "args": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Times):
        return {"kind": "times", "args": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Abstraction):
        body = ({"kind": "empty"} if isinstance(t.body, EmptySet)
                else {"kind": "setvar", "name": t.body.name, "arity": 1})
        return {"kind": t.op.value, "body": body}
    raise TypeError(f"not a term: {t!r}")


_BINARY_KINDS = {And: "and", Or: "or", Implies: "implies", Iff: "iff"}
_QUANT_KINDS = {ForallObj: "forall_obj", ExistsObj: "exists_obj",
                ForallRel: "forall_rel", ExistsRel: "exists_rel"}


def to_json(f: Formula) -> dict[str, Any]:
    """Tagged-union encoding with fields ``kind``, ``name``, ``arity``, ``body``, ``args``."""
    if isinstance(f, Truth):
        return {"kind": "true" if f.value else "false"}
    if isinstance(f, Membership):
        return {"kind": "member", "name": f.rel.name, "arity": f.rel.arity,
                "args": [term_to_json(t) for t in f.args]}
    if isinstance(f, Equal):
        return {"kind": "eq", "args": [term_to_json(f.left), term_to_json(f.right)]}
    if isinstance(f, Leq):
        return {"kind": "leq", "args": [term_to_json(f.left), term_to_json(f.right)]}
    if isinstance(f, Not):
        return {"kind": "not", "body": to_json(f.body)}
    if isinstance(f, BINARY):
        return {"kind": _BINARY_KINDS[type(f)], "args": [to_json(f.left), to_json(f.right)]}
    if isinstance(f, OBJ_QUANTIFIERS):
        return {"kind": _QUANT_KINDS[type(f)], "name": f.name, "body": to_json(f.body)}
    if isinstance(f, REL_QUANTIFIERS):
        return {"kind": _QUANT_KINDS[type(f)], "name": f.name, "arity": f.arity,
                "body": to_json(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def term_from_json(data: Mapping[str, Any]) -> Term:
    kind = data["kind"]
    if kind == "var":
        return ObjVar(data["name"])
    if kind == "num":
        return Num(int(data["name"]))
    if kind == "const":
        return Const(data["name"])
    if kind == "succ":
        return Succ(term_from_json(data["args"][0]))
    if kind in ("plus", "times"):
        left, right = (term_from_json(a) for a in data["args"])
        return (Plus if kind == "plus" else Times)(left, right)
    if kind in ("hash", "ext"):
        body = data["body"]
        set_term = EmptySet() if body["kind"] == "empty" else RelVar(body["name"], 1)
        return Abstraction(AbsOp(kind), set_term)
    raise SchemaError(f"unknown term kind {kind!r}")


def from_json(data: Mapping[str, Any]) -> Formula:
    kind = data["kind"]
    if kind in ("true", "false"):
        return Truth(kind == "true")
    if kind == "member":
        return Membership(tuple(term_from_json(a) for a in data["args"]),
                          RelVar(data["name"], data["arity"]))
    if kind in ("eq", "leq"):
        left, right = (term_from_json(a) for a in data["args"])
        return (Equal if kind == "eq" else Leq)(left, right)
    if kind == "not":
        return Not(from_json(data["body"]))
    for cls, name in _BINARY_KINDS.items():
        if kind == name:
            left, right = (from_json(a) for a in data["args"])
            return cls(left, right)
    for cls, name in _QUANT_KINDS.items():
        if kind == name:
            if cls in OBJ_QUANTIFIERS:
                return cls(data["name"], from_json(data["body"]))
            return cls(data["name"], data["arity"], from_json(data["body"]))
    raise SchemaError(f"unknown formula kind {kind!r}")
