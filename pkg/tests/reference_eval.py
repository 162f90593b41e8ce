"""Naive recursive evaluator used as an oracle for the finite evaluator.

No caching and no normalization: relation quantifiers enumerate the family, object
quantifiers the universe.
"""

from finite.structure import FiniteStructure
from logic.formula import (
    Abstraction, And, EmptySet, Equal, ExistsObj, ExistsRel, ForallObj, ForallRel, Iff,
    Implies, Membership, Not, ObjVar, Or, Truth,
)


def _term(s: FiniteStructure, t, env):
    if isinstance(t, ObjVar):
        return env[t.name]
    if isinstance(t, Abstraction):
        subset = frozenset() if isinstance(t.body, EmptySet) else env[t.body.name]
        return s.abstraction.mapping[subset]
    raise ValueError(f"reference evaluator does not handle {t!r}")


def reference_eval(s: FiniteStructure, f, env=None) -> bool:
    env = dict(env or {})
    if isinstance(f, Truth):
        return f.value
    if isinstance(f, Membership):
        values = tuple(_term(s, a, env) for a in f.args)
        rel = env[f.rel.name]
        return values[0] in rel if len(values) == 1 else values in rel
    if isinstance(f, Equal):
        return _term(s, f.left, env) == _term(s, f.right, env)
    if isinstance(f, Not):
        return not reference_eval(s, f.body, env)
    if isinstance(f, And):
        return reference_eval(s, f.left, env) and reference_eval(s, f.right, env)
    if isinstance(f, Or):
        return reference_eval(s, f.left, env) or reference_eval(s, f.right, env)
    if isinstance(f, Implies):
        return not reference_eval(s, f.left, env) or reference_eval(s, f.right, env)
    if isinstance(f, Iff):
        return reference_eval(s, f.left, env) == reference_eval(s, f.right, env)
    if isinstance(f, ForallObj):
        return all(reference_eval(s, f.body, {**env, f.name: a}) for a in s.universe)
    if isinstance(f, ExistsObj):
        return any(reference_eval(s, f.body, {**env, f.name: a}) for a in s.universe)
    if isinstance(f, ForallRel):
        return all(reference_eval(s, f.body, {**env, f.name: r}) for r in s.family(f.arity))
    if isinstance(f, ExistsRel):
        return any(reference_eval(s, f.body, {**env, f.name: r}) for r in s.family(f.arity))
    raise ValueError(f"reference evaluator does not handle {f!r}")
