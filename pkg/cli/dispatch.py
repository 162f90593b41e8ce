"""Command-line front end: parses a command, runs the operation, renders the report.

Exit codes: 0 on success, 1 on a domain error (the JSON error report names it), 2 on a
usage error (the command grammar is printed to stderr).
"""

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence, TextIO

from pydantic import BaseModel

from acf.sets import AcfSet, acf_card, acf_hume_equiv, acf_number
from acf.successor import acf_sa_report, successor_closed_form, successor_witness
from acf.theta import acf_theta_prime
from cli.reports import TranslationReport, render
from common.errors import UsageError, WorkbenchError
from config.settings import settings
from finite.evaluator import eval_formula, relation_value
from finite.russell import blv_injection_search, russell_set
from finite.structure import FiniteStructure, powerset
from hmodel.canonical import h_card, h_gamma_iso, h_range_complement, h_swap_check, random_hset
from hmodel.ordinals import HSet, OrdElem
from interp.boolos import boolos_translate
from interp.frege import expand_definitions, flatten, frege_translate
from interp.pairing import cantor, iota_chain
from interp.partial_delta import (
    AcfBackend, Descriptor, FiniteBackend, RcfBackend, build_partial_abstraction,
)
from logic.classify import classify
from logic.formula import free_variables
from logic.parser import parse_formula
from logic.printer import print_formula
from logic.schemas import instantiate_choice, instantiate_comprehension, instantiate_delta11
from rcf.bijection import rcf_build_bijection, sample_points
from rcf.cells import RcfSet, rcf_hume_equiv, rcf_invariant, rcf_number
from rcf.decompose import rcf_decompose
from rcf.skolem import rcf_skolem_demo

logger = logging.getLogger(__name__)

HSET_EXAMPLE = '{"mode": "finite", "exceptions": ["n:0"]}'


class CommandParser(argparse.ArgumentParser):
    """Argument parser that raises ``UsageError`` instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class Command:
    verb: str
    action: Optional[str] = None
    options: dict = field(default_factory=dict)
    pretty: bool = False
    seed: int = 0


class IotaReport(BaseModel):
    b: int
    c: int
    indices: int
    inputs: int
    unfolded: list[str]
    injective: bool
    disjoint: bool


# ---------------------------------------------------------------------------
# argument readers

def _number(text: str):
    value = Fraction(text)
    return int(value) if value.denominator == 1 else str(value)


def _assignments(text: Optional[str]) -> dict[str, Any]:
    """``"a=1, b=1/2"`` as ``{"a": 1, "b": "1/2"}``."""
    if not text:
        return {}
    values = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"expected name=value, got {item.strip()!r}")
        name, value = item.split("=", 1)
        try:
            values[name.strip()] = _number(value.strip())
        except ValueError as e:
            raise UsageError(f"{value.strip()!r} is not a rational number") from e
    return values


def _descriptor(text: str) -> Descriptor:
    """``"x^2 - a = 0 @ a=4"``: condition text, then parameter values."""
    body, _, params = text.partition("@")
    return Descriptor.of(body.strip(), _assignments(params))


def _hset(text: str) -> HSet:
    try:
        return HSet.from_json(json.loads(text))
    except json.JSONDecodeError as e:
        raise UsageError(f"set must be HSet JSON such as {HSET_EXAMPLE}: {e}") from e


def _permutation(text: Optional[str]) -> dict[OrdElem, OrdElem]:
    if not text:
        return {}
    pairs = {}
    for item in text.split(","):
        source, _, target = item.partition("=")
        pairs[OrdElem.parse(source)] = OrdElem.parse(target)
    return pairs


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read JSON from {path}: {e}") from e


# ---------------------------------------------------------------------------
# handlers

def _classify(cmd: Command):
    return classify(parse_formula(cmd.options["formula"]))


def _instantiate(cmd: Command):
    o = cmd.options
    phi = parse_formula(o["formula"])
    variables = o["vars"].split(",") if o.get("vars") else None
    if cmd.action == "comprehension":
        result = instantiate_comprehension(phi, o["rel"], o["arity"], variables)
    elif cmd.action == "delta11":
        if not o.get("psi"):
            raise UsageError("delta11 needs --psi")
        result = instantiate_delta11(phi, parse_formula(o["psi"]), o["rel"], o["arity"], variables)
    else:
        result = instantiate_choice(phi, o.get("set_var"), variables, o.get("choice_rel"))
    return {"schema": cmd.action, "formula": print_formula(result),
            "classification": classify(result).to_json()}


def _translate(cmd: Command):
    o = cmd.options
    source = parse_formula(o["formula"])
    if cmd.action == "boolos":
        bound = o.get("finite_bound")
        translated = boolos_translate(source, "finite" if bound is not None else "arithmetic", bound)
        return TranslationReport(
            direction="boolos", input=print_formula(source),
            input_classification=classify(source).to_json(),
            translated=print_formula(translated),
            translated_classification=classify(translated).to_json(),
        )
    t = frege_translate(source)
    report = TranslationReport(
        direction="frege", input=print_formula(source),
        input_classification=classify(source).to_json(),
        translated=print_formula(t.translated),
        translated_classification=classify(t.translated).to_json(),
        definitions=[{
            "name": d.name,
            "params": list(d.params),
            "definition": print_formula(d.sentence()),
            "classification": d.classification().to_json(),
            "comprehension": None if d.comprehension() is None else print_formula(d.comprehension()),
        } for d in t.definitions],
    )
    if o.get("flatten", True):
        flat = flatten(t, closed=not o.get("open", False))
        report.flattened = print_formula(flat)
        report.flattened_classification = classify(flat).to_json()
    if o.get("expand"):
        expanded = expand_definitions(t)
        report.expanded = print_formula(expanded)
        report.expanded_classification = classify(expanded).to_json()
    return report


def _eval(cmd: Command):
    o = cmd.options
    structure = FiniteStructure.from_json(_load_json(o["structure"]))
    f = parse_formula(o["formula"])
    try:
        env = json.loads(o["env"]) if o.get("env") else {}
    except json.JSONDecodeError as e:
        raise UsageError(f"--env must be a JSON object: {e}") from e
    for rel in free_variables(f).relations:
        if rel.name in env:
            env[rel.name] = relation_value(structure, rel, env[rel.name])
    return {"value": eval_formula(structure, f, env)}


def _acf(cmd: Command):
    o = cmd.options
    if cmd.action == "number":
        X = AcfSet.parse(o["set"])
        return {"set": str(X), "number": acf_number(X)}
    if cmd.action == "card":
        return acf_card(AcfSet.parse(o["set"]))
    if cmd.action == "hume":
        X, Y = AcfSet.parse(o["first"]), AcfSet.parse(o["second"])
        return {"equivalent": acf_hume_equiv(X, Y), "numbers": [acf_number(X), acf_number(Y)]}
    if cmd.action == "successor":
        witness = successor_witness(o["n"], o["m"])
        return {"n": o["n"], "m": o["m"], "holds": witness is not None,
                "closed_form": successor_closed_form(o["n"], o["m"]),
                "witness": None if witness is None else witness.model_dump(mode="json")}
    if cmd.action == "sa-report":
        return acf_sa_report(o.get("bound"))
    theta = acf_theta_prime(o["theta"], o["params"].split(",") if o.get("params") else None)
    report = {"theta": theta.family.text, "params": list(theta.family.params),
              "n_theta": theta.n_theta, "value_var": theta.value_var,
              "formula": print_formula(theta.formula),
              "classification": classify(theta.formula).to_json()}
    if o.get("at"):
        report["values"] = theta.values(_assignments(o["at"]))
    return report


def _rcf(cmd: Command):
    o = cmd.options
    action = cmd.action
    if action == "build":
        X = RcfSet.parse(o["set"])
        return {"set": str(X), **X.to_json()}
    if action == "invariant":
        return rcf_invariant(RcfSet.parse(o["set"]))
    if action == "number":
        return {"number": rcf_number(RcfSet.parse(o["set"]))}
    if action == "hume":
        X, Y = RcfSet.parse(o["first"]), RcfSet.parse(o["second"])
        return {"equivalent": rcf_hume_equiv(X, Y), "numbers": [rcf_number(X), rcf_number(Y)]}
    if action == "bijection":
        X, Y = RcfSet.parse(o["first"]), RcfSet.parse(o["second"])
        bijection = rcf_build_bijection(X, Y)
        rng = random.Random(cmd.seed)
        samples = []
        for t in sample_points(X, o["samples"], rng):
            image = bijection.apply(t)
            samples.append({"t": str(t), "image_lo": str(image.lo), "image_hi": str(image.hi)})
        return {**bijection.report(X).model_dump(mode="json"), "samples": samples}
    if action == "decompose":
        targets = [RcfSet.parse(text) for text in o["sets"]]
        extra = [Fraction(v) for v in o["extra"].split(",")] if o.get("extra") else []
        conditions = " | ".join(o["sets"]) if o["sets"] else None
        decomposition = rcf_decompose(targets, extra, conditions)
        if o.get("plot"):
            from visualizer.plotter import plotter
            plotter.plot_decomposition(decomposition, Path(o["plot"]), names=o["sets"])
        return decomposition
    return rcf_skolem_demo()


def _hmodel(cmd: Command):
    o = cmd.options
    kappa = o["kappa"]
    if cmd.action == "card":
        return {"kappa": kappa, "card": str(h_card(kappa, _hset(o["set"])))}
    if cmd.action == "complement":
        found = h_range_complement(kappa)
        closed = [OrdElem.omega_plus(j) for j in range(1, kappa + 1)]
        return {"kappa": kappa, "complement": [str(x) for x in found], "size": len(found),
                "closed_form_agrees": found == closed}
    if cmd.action == "swap":
        rng = random.Random(cmd.seed)
        tests = [random_hset(kappa, rng) for _ in range(o["tests"])]
        return h_swap_check(kappa, OrdElem.parse(o["beta"]), OrdElem.parse(o["gamma"]), tests)
    rng = random.Random(cmd.seed)
    family = [random_hset(kappa, rng) for _ in range(o["tests"])]
    perm = _permutation(o.get("permute"))

    def sharp2(X: HSet) -> OrdElem:
        value = h_card(kappa, X)
        return perm.get(value, value)

    return h_gamma_iso(kappa, lambda X: h_card(kappa, X), sharp2, family)


def _russell_structure(m: int, rng: random.Random) -> tuple[FiniteStructure, frozenset]:
    s = FiniteStructure.full_powerset(m, max_arity=1)
    sets = list(s.sets())
    rng.shuffle(sets)
    domain = sets[:rng.randint(1, m)] if m else []
    atoms = rng.sample(range(m), len(domain))
    s = s.with_abstraction("ext", dict(zip(domain, atoms)))
    A = frozenset(rng.sample(atoms, rng.randint(0, len(atoms))))
    return s, A


def _demo(cmd: Command):
    o = cmd.options
    rng = random.Random(cmd.seed)
    if cmd.action == "russell":
        s, A = _russell_structure(o["universe"], rng)
        return russell_set(s, A)
    if cmd.action == "pigeonhole":
        m = o["universe"]
        return blv_injection_search(m, powerset(range(m)))
    if cmd.action == "iota":
        chain = iota_chain(cantor, 0, 1)
        n, inputs = o["n"], o["inputs"]
        ranges = [{chain(k, x) for x in range(inputs)} for k in range(n + 1)]
        disjoint = all(ranges[i].isdisjoint(ranges[j])
                       for i in range(n + 1) for j in range(i + 1, n + 1))
        return IotaReport(b=0, c=1, indices=n + 1, inputs=inputs,
                          unfolded=[chain.unfold(k) for k in range(min(n, 3) + 1)],
                          injective=all(len(r) == inputs for r in ranges), disjoint=disjoint)
    backend_name = o["backend"]
    if backend_name == "finite":
        backend = FiniteBackend(FiniteStructure.full_powerset(o["universe"], max_arity=1))
    else:
        backend = AcfBackend() if backend_name == "acf" else RcfBackend()
    return build_partial_abstraction([_descriptor(d) for d in o["descriptors"]], backend)


def _serve(cmd: Command):
    import uvicorn

    host = cmd.options.get("host") or settings.api_host
    port = cmd.options.get("port") or settings.api_port
    logger.info(f"Starting server on {host}:{port}")
    uvicorn.run("api.main:app", host=host, port=port, reload=settings.debug_mode)
    return {"status": "stopped"}


HANDLERS: dict[str, Callable[[Command], Any]] = {
    "classify": _classify,
    "instantiate": _instantiate,
    "translate": _translate,
    "eval": _eval,
    "acf": _acf,
    "rcf": _rcf,
    "hmodel": _hmodel,
    "demo": _demo,
    "serve": _serve,
}


# ---------------------------------------------------------------------------
# grammar

def _common(defaults: bool) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    suppress = argparse.SUPPRESS
    common.add_argument("--pretty", dest="pretty", action="store_true",
                        default=settings.output_format == "pretty" if defaults else suppress,
                        help="Human-readable tables instead of JSON")
    common.add_argument("--json", dest="pretty", action="store_false",
                        default=suppress, help="JSON report (default)")
    common.add_argument("--seed", type=int,
                        default=settings.default_seed if defaults else suppress,
                        help="Seed for random generators")
    return common


def build_parser() -> CommandParser:
    """The full command grammar."""
    parser = CommandParser(prog="hume-workbench", parents=[_common(True)],
                           description="Hume's Principle and Basic Law V workbench")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CommandParser)
    leaf = [_common(False)]

    p = verbs.add_parser("classify", parents=leaf, help="Analytical-hierarchy level of a formula")
    p.add_argument("formula")

    p = verbs.add_parser("instantiate", help="Comprehension, Delta-1-1 or choice instances")
    actions = p.add_subparsers(dest="action", required=True)
    for name in ("comprehension", "delta11", "choice"):
        a = actions.add_parser(name, parents=leaf)
        a.add_argument("formula")
        a.add_argument("--vars", help="Distinguished variables, comma separated")
        if name == "choice":
            a.add_argument("--set-var", dest="set_var")
            a.add_argument("--rel", dest="choice_rel")
        else:
            a.add_argument("--rel", default="F")
            a.add_argument("--arity", type=int, default=1)
        if name == "delta11":
            a.add_argument("--psi", required=True, help="The Pi-1-1 side")

    p = verbs.add_parser("translate", help="Frege or Boolos translation")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("frege", parents=leaf)
    a.add_argument("formula")
    a.add_argument("--flatten", action=argparse.BooleanOptionalAction, default=True)
    a.add_argument("--open", action="store_true", help="Leave defined symbols free when flattening")
    a.add_argument("--expand", action="store_true", help="Also substitute the definitions in place")
    a = actions.add_parser("boolos", parents=leaf)
    a.add_argument("formula")
    a.add_argument("--finite-bound", dest="finite_bound", type=int,
                   help="Use witness counts up to this cardinality")

    p = verbs.add_parser("eval", parents=leaf, help="Evaluate a formula on a finite structure")
    p.add_argument("--structure", required=True, help="Structure JSON file")
    p.add_argument("--formula", required=True)
    p.add_argument("--env", help="Assignment as a JSON object")

    p = verbs.add_parser("acf", help="Algebraically closed field backend")
    actions = p.add_subparsers(dest="action", required=True)
    for name in ("number", "card"):
        actions.add_parser(name, parents=leaf).add_argument("set")
    a = actions.add_parser("hume", parents=leaf)
    a.add_argument("first")
    a.add_argument("second")
    a = actions.add_parser("successor", parents=leaf)
    a.add_argument("n", type=int)
    a.add_argument("m", type=int)
    a = actions.add_parser("sa-report", parents=leaf)
    a.add_argument("--bound", type=int)
    a = actions.add_parser("theta-prime", parents=leaf)
    a.add_argument("theta")
    a.add_argument("--params", help="Parameter names, comma separated")
    a.add_argument("--at", help="Parameter values such as a=1,b=1/2")

    p = verbs.add_parser("rcf", help="Real closed field backend")
    actions = p.add_subparsers(dest="action", required=True)
    for name in ("build", "invariant", "number"):
        actions.add_parser(name, parents=leaf).add_argument("set")
    for name in ("hume", "bijection"):
        a = actions.add_parser(name, parents=leaf)
        a.add_argument("first")
        a.add_argument("second")
        if name == "bijection":
            a.add_argument("--samples", type=int, default=5)
    a = actions.add_parser("decompose", parents=leaf)
    a.add_argument("sets", nargs="*")
    a.add_argument("--extra", help="Additional rational breakpoints, comma separated")
    a.add_argument("--plot", help="PNG file for a plot of the decomposition")
    actions.add_parser("skolem-demo", parents=leaf)

    p = verbs.add_parser("hmodel", help="Canonical models H_kappa")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("card", parents=leaf)
    a.add_argument("set", help="HSet JSON")
    a.add_argument("--kappa", type=int, default=0)
    a = actions.add_parser("complement", parents=leaf)
    a.add_argument("--kappa", type=int, default=0)
    a = actions.add_parser("swap", parents=leaf)
    a.add_argument("beta")
    a.add_argument("gamma")
    a.add_argument("--kappa", type=int, default=2)
    a.add_argument("--tests", type=int, default=20)
    a = actions.add_parser("gamma", parents=leaf)
    a.add_argument("--kappa", type=int, default=2)
    a.add_argument("--tests", type=int, default=20)
    a.add_argument("--permute", help="Value permutation such as n:1=n:2,n:2=n:1")

    p = verbs.add_parser("demo", help="Worked examples")
    actions = p.add_subparsers(dest="action", required=True)
    for name in ("russell", "pigeonhole"):
        actions.add_parser(name, parents=leaf).add_argument("--universe", type=int, default=3)
    a = actions.add_parser("iota", parents=leaf)
    a.add_argument("--n", type=int, default=5)
    a.add_argument("--inputs", type=int, default=50)
    a = actions.add_parser("partial-delta", parents=leaf)
    a.add_argument("descriptors", nargs="*", help="Descriptor text, optionally '@ a=1,b=2'")
    a.add_argument("--backend", choices=("acf", "rcf", "finite"), default="acf")
    a.add_argument("--universe", type=int, default=3)

    p = verbs.add_parser("serve", parents=leaf, help="Start the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    return parser


def parse_command(argv: Sequence[str], parser: Optional[CommandParser] = None) -> Command:
    """Read argv into a Command.

    Raises:
        UsageError: argv does not follow the grammar
    """
    parser = parser or build_parser()
    ns = vars(parser.parse_args(list(argv)))
    verb = ns.pop("verb")
    action = ns.pop("action", None)
    pretty = ns.pop("pretty")
    seed = ns.pop("seed")
    return Command(verb, action, ns, pretty, seed)


def execute(cmd: Command) -> Any:
    """Run a command and return its report object."""
    logger.debug(f"Running {cmd.verb} {cmd.action or ''} with {cmd.options}")
    return HANDLERS[cmd.verb](cmd)


def dispatch(argv: Sequence[str], stdout: Optional[TextIO] = None,
             stderr: Optional[TextIO] = None) -> int:
    """Run one command line and print its report.

    Args:
        argv: Arguments after the program name
        stdout: Report stream (default ``sys.stdout``)
        stderr: Grammar help on usage errors (default ``sys.stderr``)

    Returns:
        int: 0 on success, 1 on a domain error, 2 on a usage error
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        cmd = parse_command(argv, parser)
        report = execute(cmd)
    except UsageError as e:
        logger.error(f"Usage error: {e.message}")
        stderr.write(parser.format_help())
        stdout.write(render(e.to_json()) + "\n")
        return 2
    except SystemExit as e:
        return int(e.code or 0)
    except WorkbenchError as e:
        logger.error(f"{e.code}: {e.message}")
        stdout.write(render(e.to_json(), pretty=False) + "\n")
        return 1
    stdout.write(render(report, pretty=cmd.pretty) + "\n")
    return 0
