"""Canonical text rendering of formulas; ``parse_formula(print_formula(f)) == f``."""

from logic.formula import (
    AbsOp, Abstraction, And, Const, EmptySet, Equal, ExistsObj, ForallObj,
    ForallRel, Formula, Iff, Implies, Leq, Membership, Not, Num, ObjVar, Or, Plus, RelVar,
    Succ, Term, Times, Truth,
)

_CONNECTIVES = {And: "and", Or: "or", Implies: "->", Iff: "<->"}


def print_term(t: Term) -> str:
    if isinstance(t, ObjVar):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Succ):
        return f"s({print_term(t.arg)})"
    if isinstance(t, Plus):
        return f"[{print_term(t.left)} + {print_term(t.right)}]"
    if isinstance(t, Times):
        return f"[{print_term(t.left)} * {print_term(t.right)}]"
    if isinstance(t, Abstraction):
        body = "{}" if isinstance(t.body, EmptySet) else t.body.name
        return f"#{body}" if t.op == AbsOp.HASH else f"ext({body})"
    raise TypeError(f"not a term: {t!r}")


def _is_set_name(rel: RelVar) -> bool:
    return rel.arity == 1 and rel.name[0].isupper()


def _quantifier_head(f: Formula) -> str:
    if isinstance(f, (ForallObj, ExistsObj)):
        word = "forall" if isinstance(f, ForallObj) else "exists"
        return f"{word} {f.name}."
    universal = isinstance(f, ForallRel)
    if f.arity == 1 and f.name[0].isupper():
        return f"{'forall' if universal else 'exists'} {f.name}."
    return f"{'forall2' if universal else 'exists2'} {f.name}:{f.arity}."


def _print(f: Formula, bare_quantifier: bool) -> str:
    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Membership):
        if _is_set_name(f.rel):
            return f"{print_term(f.args[0])} in {f.rel.name}"
        return f"{f.rel.name}({', '.join(print_term(a) for a in f.args)})"
    if isinstance(f, Equal):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, Leq):
        return f"{print_term(f.left)} <= {print_term(f.right)}"
    if isinstance(f, Not):
        return f"not {_print(f.body, False)}"
    if isinstance(f, tuple(_CONNECTIVES)):
        op = _CONNECTIVES[type(f)]
        return f"({_print(f.left, False)} {op} {_print(f.right, False)})"
    text = f"{_quantifier_head(f)} {_print(f.body, True)}"
    return text if bare_quantifier else f"({text})"


def print_formula(f: Formula) -> str:
    """Render ``f`` with every binary connective parenthesized.

    Quantifiers are printed bare at the top level and as quantifier bodies, and wrapped
    in parentheses anywhere else, since a quantifier body extends as far right as possible.
    """
    return _print(f, True)
