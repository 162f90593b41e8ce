"""Named theories: axiom cores, schema generators and the sentences Inf and SA."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

from common.errors import ClassificationViolation, SchemaError
from logic import macros
from logic.classify import ARITHMETICAL, classify
from logic.formula import (
    AbsOp, Abstraction, And, EmptySet, Equal, ExistsObj, ExistsRel, ForallObj, ForallRel,
    Formula, Iff, Implies, Leq, Membership, Not, Num, ObjVar, Or, Plus, RelVar, Succ, Term,
    Times, conj, forall_objs,
)
from logic.schemas import instantiate_choice, instantiate_comprehension, instantiate_delta11

logger = logging.getLogger(__name__)

Base = Literal["PA2", "HP2", "BL2"]
Comprehension = Literal["full", "arithmetical", "delta11", "sigma11_choice", "pi1n"]

_SUBSYSTEM_TAGS = {
    "Arithmetical": "arithmetical",
    "Delta11": "delta11",
    "Sigma11Choice": "sigma11_choice",
    "Pi1n": "pi1n",
}
_BASE_SUFFIX = {"CA0": "PA2", "HP0": "HP2", "BL0": "BL2"}


@dataclass(frozen=True)
class TheoryId:
    """A full second-order theory or one of its subsystems.

    Text forms: ``PA2``, ``HP2``, ``BL2`` and ``<tag>-<base>`` with tag one of
    ``Arithmetical``, ``Delta11``, ``Sigma11Choice``, ``Pi1n:<n>`` and base one of ``CA0``,
    ``HP0``, ``BL0`` (for example ``Pi1n:2-HP0``).
    """

    base: Base
    comprehension: Comprehension = "full"
    n: Optional[int] = None

    def __post_init__(self):
        if (self.comprehension == "pi1n") != (self.n is not None):
            raise SchemaError("Pi1n subsystems need a level n >= 1, other tags none")
        if self.n is not None and self.n < 1:
            raise SchemaError(f"Pi1n level must be positive, got {self.n}")

    @classmethod
    def parse(cls, text: str) -> "TheoryId":
        text = text.strip()
        if text in ("PA2", "HP2", "BL2"):
            return cls(text)
        tag, _, base = text.partition("-")
        if base not in _BASE_SUFFIX:
            raise SchemaError(f"unknown theory {text!r}")
        level = None
        if tag.startswith("Pi1n"):
            tag, _, raw = tag.partition(":")
            if not raw.isdigit():
                raise SchemaError(f"Pi1n subsystem needs a level, got {text!r}")
            level = int(raw)
        if tag not in _SUBSYSTEM_TAGS:
            raise SchemaError(f"unknown comprehension tag {tag!r}")
        return cls(_BASE_SUFFIX[base], _SUBSYSTEM_TAGS[tag], level)

    def __str__(self) -> str:
        if self.comprehension == "full":
            return self.base
        tag = {v: k for k, v in _SUBSYSTEM_TAGS.items()}[self.comprehension]
        if self.n is not None:
            tag = f"{tag}:{self.n}"
        base = {v: k for k, v in _BASE_SUFFIX.items()}[self.base]
        return f"{tag}-{base}"


@dataclass(frozen=True)
class NamedSentence:
    name: str
    formula: Formula


@dataclass
class Theory:
    """Finite axiom core plus callable schema generators."""

    id: TheoryId
    axioms: list[NamedSentence]
    schemas: dict[str, Callable[..., Formula]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Sentences

x, y, z, w, n = (ObjVar(v) for v in ("x", "y", "z", "w", "n"))
ZERO = Num(0)
X, Y, F = RelVar("X", 1), RelVar("Y", 1), RelVar("F", 1)


def q_axioms() -> list[NamedSentence]:
    """The eight axioms of Robinson's Q in the arithmetic language."""
    return [
        NamedSentence("Q1", ForallObj("x", Not(Equal(Succ(x), ZERO)))),
        NamedSentence("Q2", forall_objs(["x", "y"], Implies(Equal(Succ(x), Succ(y)), Equal(x, y)))),
        NamedSentence("Q3", ForallObj("x", Implies(
            Not(Equal(x, ZERO)), ExistsObj("w", Equal(x, Succ(w)))))),
        NamedSentence("Q4", ForallObj("x", Equal(Plus(x, ZERO), x))),
        NamedSentence("Q5", forall_objs(["x", "y"], Equal(Plus(x, Succ(y)), Succ(Plus(x, y))))),
        NamedSentence("Q6", ForallObj("x", Equal(Times(x, ZERO), ZERO))),
        NamedSentence("Q7", forall_objs(["x", "y"], Equal(Times(x, Succ(y)), Plus(Times(x, y), x)))),
        NamedSentence("Q8", forall_objs(["x", "y"], Iff(
            Leq(x, y), ExistsObj("z", Equal(Plus(x, z), y))))),
    ]


def induction_axiom() -> Formula:
    """``∀F [(0 ∈ F and ∀n (n ∈ F -> s(n) ∈ F)) -> ∀n n ∈ F]``."""
    step = ForallObj("n", Implies(Membership((n,), F), Membership((Succ(n),), F)))
    return ForallRel("F", 1, Implies(
        And(Membership((ZERO,), F), step),
        ForallObj("n", Membership((n,), F))))


def hp_sentence() -> Formula:
    """``∀X ∀Y (#X = #Y <-> ∃f bijection(f, X, Y))``."""
    f = RelVar("f", 2)
    return ForallRel("X", 1, ForallRel("Y", 1, Iff(
        Equal(Abstraction(AbsOp.HASH, X), Abstraction(AbsOp.HASH, Y)),
        ExistsRel("f", 2, macros.bijection(f, X, Y)))))


def blv_sentence() -> Formula:
    """``∀X ∀Y (ext(X) = ext(Y) <-> ∀x (x ∈ X <-> x ∈ Y))``."""
    return ForallRel("X", 1, ForallRel("Y", 1, Iff(
        Equal(Abstraction(AbsOp.EXT, X), Abstraction(AbsOp.EXT, Y)),
        ForallObj("x", Iff(Membership((x,), X), Membership((x,), Y))))))


def successor_relation(first: Term, second: Term, op: AbsOp = AbsOp.HASH) -> Formula:
    """``P(n, m)``: some X, Y with abstracts n, m where X is Y minus one element."""
    Xs, Ys = RelVar("X", 1), RelVar("Y", 1)
    removed = ExistsObj("y", And(
        Membership((y,), Ys),
        ForallObj("w", Iff(Membership((w,), Xs), And(Membership((w,), Ys), Not(Equal(w, y)))))))
    return ExistsRel("X", 1, ExistsRel("Y", 1, conj([
        Equal(Abstraction(op, Xs), first),
        Equal(Abstraction(op, Ys), second),
        removed,
    ])))


def _empty(op: AbsOp) -> Term:
    return Abstraction(op, EmptySet())


def hereditary(rel: RelVar, op: AbsOp = AbsOp.HASH) -> Formula:
    a, b = ObjVar("a"), ObjVar("b")
    return forall_objs(["a", "b"], Implies(
        And(Membership((a,), rel), successor_relation(a, b, op)), Membership((b,), rel)))


def closed(rel: RelVar, op: AbsOp = AbsOp.HASH) -> Formula:
    b = ObjVar("b")
    return ForallObj("b", Implies(successor_relation(_empty(op), b, op), Membership((b,), rel)))


def pseudo_number(t: Term, op: AbsOp = AbsOp.HASH) -> Formula:
    """``t`` is the abstract of the empty set or lies in every hereditary closed F."""
    G = RelVar("G", 1)
    return Or(Equal(t, _empty(op)), ForallRel("G", 1, Implies(
        And(hereditary(G, op), closed(G, op)), Membership((t,), G))))


def sa_sentence(op: AbsOp = AbsOp.HASH) -> Formula:
    """Every pseudo-number has a successor: ``∀n (pseudo(n) -> ∃m P(n, m))``."""
    m = ObjVar("m")
    return ForallObj("n", Implies(pseudo_number(n, op), ExistsObj("m", successor_relation(n, m, op))))


def inf_sentence(op: AbsOp = AbsOp.EXT) -> Formula:
    """Inf: the successor ``s(x) = op({x})`` exists, the natural numbers form the least set
    containing ``op({})`` closed under it, and the graphs of addition and multiplication on
    them satisfy Q1-Q8."""
    from interp.frege import inf_from_definitions
    return inf_from_definitions(op)


# ---------------------------------------------------------------------------
# Generators

def _restricted_comprehension(tag: Comprehension, n_level: Optional[int]):
    def generator(phi: Formula, rel_name: str = "F", arity: int = 1, variables=None) -> Formula:
        found = classify(phi)
        if tag == "arithmetical" and found != ARITHMETICAL:
            raise ClassificationViolation("phi", str(found), "Arithmetical")
        if tag == "pi1n":
            ok = found.n < n_level or (found.n == n_level and found.level == "Pi")
            if not ok:
                raise ClassificationViolation("phi", str(found), f"Pi({n_level}) or lower")
        return instantiate_comprehension(phi, rel_name, arity, variables)
    return generator


def _base_axioms(base: Base) -> list[NamedSentence]:
    if base == "PA2":
        return q_axioms() + [NamedSentence("Induction", induction_axiom())]
    if base == "HP2":
        return [NamedSentence("HP", hp_sentence())]
    return [NamedSentence("BLV", blv_sentence())]


def theory_axioms(theory: TheoryId) -> Theory:
    """Axiom core and schema generators of ``theory``.

    Args:
        theory: Full theory or subsystem

    Returns:
        Theory: Named finite axioms plus generators; ``Inf`` and ``SA`` builders included
    """
    axioms = _base_axioms(theory.base)
    schemas: dict[str, Callable[..., Formula]] = {}
    if theory.comprehension in ("full", "arithmetical", "pi1n"):
        schemas["comprehension"] = (instantiate_comprehension if theory.comprehension == "full"
                                    else _restricted_comprehension(theory.comprehension, theory.n))
    elif theory.comprehension == "delta11":
        schemas["comprehension"] = _restricted_comprehension("arithmetical", None)
        schemas["delta11"] = instantiate_delta11
    else:
        schemas["comprehension"] = _restricted_comprehension("arithmetical", None)
        schemas["choice"] = instantiate_choice
    op = AbsOp.EXT if theory.base == "BL2" else AbsOp.HASH
    schemas["Inf"] = lambda: inf_sentence(op)
    schemas["SA"] = lambda: sa_sentence(op)
    logger.debug(f"Built {len(axioms)} axioms and {len(schemas)} generators for {theory}")
    return Theory(theory, axioms, schemas)
