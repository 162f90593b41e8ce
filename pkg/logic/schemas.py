"""Instantiators for the comprehension, Δ¹₁-comprehension and Σ¹₁-choice schemas."""

import logging
from typing import Optional, Sequence

from common.errors import ClassificationViolation, SchemaError
from logic.classify import ARITHMETICAL, Classification, classify
from logic.formula import (
    ExistsRel, ForallRel, Formula, Iff, Implies, Membership, ObjVar, RelVar, all_names,
    forall_objs, free_variables, fresh_name,
)

logger = logging.getLogger(__name__)

SIGMA1 = Classification.sigma(1)
PI1 = Classification.pi(1)


def _distinguished(phi: Formula, arity: int, variables: Optional[Sequence[str]]) -> tuple:
    free = free_variables(phi).objects
    if variables is None:
        if len(free) < arity:
            raise SchemaError(
                f"formula has {len(free)} free object variables, comprehension needs {arity}")
        return tuple(free[:arity])
    if len(variables) != arity:
        raise SchemaError(f"{len(variables)} variables given for arity {arity}")
    if len(set(variables)) != arity:
        raise SchemaError("distinguished variables must be distinct")
    return tuple(variables)


def _require_absent(name: str, *formulas: Formula) -> None:
    for f in formulas:
        fv = free_variables(f)
        if name in fv.relation_names() or name in fv.objects:
            raise SchemaError(f"{name!r} occurs free in the schema formula")


def _comprehension_body(phi: Formula, rel: RelVar, variables: tuple) -> Formula:
    args = tuple(ObjVar(v) for v in variables)
    return forall_objs(variables, Iff(Membership(args, rel), phi))


def instantiate_comprehension(phi: Formula, rel_name: str = "F", arity: int = 1,
                              variables: Optional[Sequence[str]] = None) -> Formula:
    """``∃R ∀n̄ (n̄ ∈ R <-> phi)``.

    Args:
        phi: Defining formula
        rel_name: Name of the new relation variable
        arity: Arity of the relation
        variables: Distinguished free variables (default: the first ``arity`` ones)

    Raises:
        SchemaError: ``rel_name`` occurs free in ``phi``
    """
    _require_absent(rel_name, phi)
    chosen = _distinguished(phi, arity, variables)
    rel = RelVar(rel_name, arity)
    return ExistsRel(rel_name, arity, _comprehension_body(phi, rel, chosen))


def instantiate_delta11(phi: Formula, psi: Formula, rel_name: str = "F", arity: int = 1,
                        variables: Optional[Sequence[str]] = None) -> Formula:
    """``[∀n̄ (phi <-> psi)] -> [∃R ∀n̄ (n̄ ∈ R <-> phi)]`` for Σ¹₁ ``phi`` and Π¹₁ ``psi``."""
    found = classify(phi)
    if found not in (ARITHMETICAL, SIGMA1):
        raise ClassificationViolation("phi", str(found), "Arithmetical or Sigma(1)")
    found = classify(psi)
    if found not in (ARITHMETICAL, PI1):
        raise ClassificationViolation("psi", str(found), "Arithmetical or Pi(1)")
    _require_absent(rel_name, phi, psi)
    chosen = _distinguished(phi, arity, variables)
    rel = RelVar(rel_name, arity)
    hypothesis = forall_objs(chosen, Iff(phi, psi))
    return Implies(hypothesis, ExistsRel(rel_name, arity, _comprehension_body(phi, rel, chosen)))


def instantiate_choice(phi: Formula, set_var: Optional[str] = None,
                       variables: Optional[Sequence[str]] = None,
                       rel_name: Optional[str] = None) -> Formula:
    """Σ¹₁-choice: ``[∀n̄ ∃P phi] -> [∃R ∀n̄ ∀P ((∀m̄ (m̄ ∈ P <-> R(n̄, m̄))) -> phi)]``.

    ``P`` (arity k) is the chosen free relation of ``phi`` and ``R`` has arity n + k, so
    that the n̄-th column of R is a choice of P for n̄.
    """
    found = classify(phi)
    if found not in (ARITHMETICAL, SIGMA1):
        raise ClassificationViolation("phi", str(found), "Arithmetical or Sigma(1)")
    fv = free_variables(phi)
    if set_var is None:
        if not fv.relations:
            raise SchemaError("choice formula needs a free relation variable to choose")
        chosen_rel = fv.relations[0]
    else:
        matches = [r for r in fv.relations if r.name == set_var]
        if not matches:
            raise SchemaError(f"{set_var!r} is not free in the choice formula")
        chosen_rel = matches[0]
    ns = tuple(variables) if variables is not None else fv.objects
    missing = [v for v in ns if v not in fv.objects]
    if missing:
        raise SchemaError(f"variables {missing} are not free in the choice formula")

    avoid = all_names(phi)
    name = rel_name or fresh_name("R", avoid)
    _require_absent(name, phi)
    avoid.add(name)
    ms = []
    for _ in range(chosen_rel.arity):
        m = fresh_name("m", avoid)
        avoid.add(m)
        ms.append(m)

    k = chosen_rel.arity
    big = RelVar(name, len(ns) + k)
    column = forall_objs(ms, Iff(
        Membership(tuple(ObjVar(m) for m in ms), chosen_rel),
        Membership(tuple(ObjVar(v) for v in ns) + tuple(ObjVar(m) for m in ms), big)))
    antecedent = forall_objs(ns, ExistsRel(chosen_rel.name, k, phi))
    consequent = ExistsRel(name, big.arity, forall_objs(
        ns, ForallRel(chosen_rel.name, k, Implies(column, phi))))
    logger.debug(f"Choice instance over {chosen_rel.name}:{k} with {len(ns)} parameters")
    return Implies(antecedent, consequent)
