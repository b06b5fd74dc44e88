"""Batch command-line front end.

Every subcommand prints one JSON document on stdout (or to ``--out``) and
exits 0 on success, 1 when a check finds a falsifying witness, and 2 on
malformed input or a failed precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import catops, extensivity, quantale, saturate
from .core import Morphism, Structure, identity, is_pi_morphism, validate_structure
from .generate import random_morphism_into
from .serialize import (
    SchemaError,
    distmatrix_from_json,
    distmatrix_to_json,
    dumps,
    load_file,
    morphism_from_json,
    morphism_to_json,
    quantale_from_json,
    structure_from_json,
    structure_to_json,
    theory_from_json,
    theory_to_json,
)
from .theory import (
    Theory,
    check_variable_condition,
    is_model,
    model_counterexample,
    strip_equality,
    uses_equality,
    validate_theory,
)

OK, PROPERTY_FAILED, INPUT_ERROR = "ok", "property-failed", "input-error"
EXIT_CODES = {OK: 0, PROPERTY_FAILED: 1, INPUT_ERROR: 2}


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list[str] = field(default_factory=list)
    out: str | None = field(default=None, repr=False)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_usage()}")


COMMANDS = (
    "check-theory", "is-model", "saturate", "free", "reflect", "product", "pullback",
    "equalizer", "coproduct", "coequalizer", "check-extensivity", "check-distributivity",
    "hom-count", "final-density", "gen-theory", "translate", "validate-quantale",
)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--theory")
    common.add_argument("--structure", action="append", default=[])
    common.add_argument("--morphism", action="append", default=[])
    common.add_argument("--domain", help="domain structure for --morphism in check-extensivity")
    common.add_argument("--quantale")
    common.add_argument("--flavor", choices=quantale.FLAVORS, default="vcat")
    common.add_argument("--matrix")
    common.add_argument("--dir", choices=("to-distance", "from-distance"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=20)
    common.add_argument("--bound", type=int, default=2)
    common.add_argument("--trace", help="write saturation derivations as JSON lines to this path ('-' for stderr)")
    common.add_argument("--out")

    parser = _Parser(prog="horncat", description="Relational Horn theories: closures, limits, colimits, checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


# -- loading -----------------------------------------------------------------


def _need(value, flag: str):
    if value is None or value == []:
        raise SchemaError(f"{flag} is required")
    return value


def _theory(args) -> Theory:
    T = theory_from_json(load_file(_need(args.theory, "--theory")))
    validate_theory(T)
    return T


def _structures(args, T: Theory | None = None, count: int | None = None) -> list[Structure]:
    out = [structure_from_json(load_file(p)) for p in args.structure]
    if count is not None and len(out) != count:
        raise SchemaError(f"expected {count} --structure arguments, got {len(out)}")
    if T is not None:
        for X in out:
            validate_structure(T.signature, X)
    return out


def _models(args, T: Theory, count: int | None = None) -> list[Structure]:
    out = _structures(args, T, count)
    for i, X in enumerate(out):
        if not is_model(T, X):
            raise SchemaError(f"structure {i} is not a model of the theory")
    return out


def _morphisms(args, T: Theory, ends: Sequence[tuple[Structure, Structure]]) -> list[Morphism]:
    if len(args.morphism) != len(ends):
        raise SchemaError(f"expected {len(ends)} --morphism arguments, got {len(args.morphism)}")
    out = []
    for path, (dom, cod) in zip(args.morphism, ends):
        h = morphism_from_json(load_file(path), dom, cod)
        if not is_pi_morphism(T.signature, h):
            raise SchemaError(f"{path} is not a morphism of structures")
        out.append(h)
    return out


def _quantale(args) -> quantale.Quantale:
    Q = quantale_from_json(load_file(_need(args.quantale, "--quantale")))
    bad = quantale.validate_quantale(Q)
    if bad:
        raise SchemaError("quantale fails its laws: " + "; ".join(map(str, bad[:5])))
    return Q


def _limit_json(res: catops.LimitResult, key: str) -> dict:
    return {"object": structure_to_json(res.object), key: [morphism_to_json(h) for h in res.legs]}


# -- subcommands -------------------------------------------------------------


def cmd_check_theory(args) -> CommandResult:
    T = _theory(args)
    violations = check_variable_condition(T)
    payload = {
        "axioms": len(T.axioms),
        "uses_equality": uses_equality(T),
        "variable_condition": "ok" if not violations else [str(v) for v in violations],
    }
    return CommandResult(PROPERTY_FAILED if violations else OK, payload)


def cmd_is_model(args) -> CommandResult:
    T = _theory(args)
    (X,) = _structures(args, T, 1)
    found = model_counterexample(T, X)
    if found is None:
        return CommandResult(OK, {"is_model": True})
    i, val = found
    payload = {"is_model": False, "counterexample": {"axiom": i, "valuation": dict(sorted(val.items()))}}
    return CommandResult(PROPERTY_FAILED, payload)


def _write_trace(path: str, trace: saturate.SaturationTrace) -> None:
    lines = "".join(json.dumps(d.as_json(), sort_keys=True) + "\n" for d in trace.rounds)
    if path == "-":
        sys.stderr.write(lines)
    else:
        with open(path, "w") as fh:
            fh.write(lines)


def cmd_saturate(args) -> CommandResult:
    T = _theory(args)
    (X,) = _structures(args, T, 1)
    if args.trace:
        edges, trace = saturate.closure(T, X.carrier, X.edges, trace=True)
        _write_trace(args.trace, trace)
    else:
        edges = saturate.closure(T, X.carrier, X.edges)
    return CommandResult(OK, structure_to_json(Structure(X.carrier, edges)))


def cmd_free(args) -> CommandResult:
    T = _theory(args)
    (X,) = _structures(args, T, 1)
    M = saturate.free_model(T, X)
    return CommandResult(OK, {"model": structure_to_json(M), "unit": morphism_to_json(identity(X))})


def cmd_reflect(args) -> CommandResult:
    T = _theory(args)
    (X,) = _structures(args, T, 1)
    res = saturate.reflect_with_equality(T, X)
    return CommandResult(OK, {"model": structure_to_json(res.model), "quotient": morphism_to_json(res.quotient)})


def cmd_product(args) -> CommandResult:
    T = _theory(args)
    factors = _models(args, T)
    return CommandResult(OK, _limit_json(catops.product(strip_equality(T), factors), "projections"))


def cmd_pullback(args) -> CommandResult:
    T = _theory(args)
    A, B, C = _models(args, T, 3)
    f, g = _morphisms(args, T, [(A, C), (B, C)])
    pb = catops.pullback(strip_equality(T), f, g)
    return CommandResult(OK, {
        "object": structure_to_json(pb.object),
        "projections": [morphism_to_json(pb.proj_left), morphism_to_json(pb.proj_right)],
    })


def cmd_equalizer(args) -> CommandResult:
    T = _theory(args)
    X, Y = _models(args, T, 2)
    f, g = _morphisms(args, T, [(X, Y), (X, Y)])
    return CommandResult(OK, _limit_json(catops.equalizer(strip_equality(T), f, g), "inclusion"))


def cmd_coproduct(args) -> CommandResult:
    T = _theory(args)
    family = _models(args, T)
    cop = catops.coproduct(T, family)
    return CommandResult(OK, {
        "object": structure_to_json(cop.object),
        "insertions": [morphism_to_json(s) for s in cop.insertions],
    })


def cmd_coequalizer(args) -> CommandResult:
    T = _theory(args)
    X, Y = _models(args, T, 2)
    f, g = _morphisms(args, T, [(X, Y), (X, Y)])
    q = catops.coequalizer(T, f, g)
    return CommandResult(OK, {"object": structure_to_json(q.cod), "quotient": morphism_to_json(q)})


def cmd_check_extensivity(args) -> CommandResult:
    T = _theory(args)
    family = _models(args, T)
    if check_variable_condition(T):
        raise SchemaError("theory fails the variable condition; run check-theory for details")
    cop = catops.coproduct(T, family)
    if args.domain:
        Y = structure_from_json(load_file(args.domain))
        validate_structure(T.signature, Y)
        if not is_model(T, Y):
            raise SchemaError("--domain is not a model of the theory")
        maps = _morphisms(args, T, [(Y, cop.object)])
    else:
        rng = random.Random(args.seed)
        maps = [random_morphism_into(rng, T, cop.object, max_size=args.bound) for _ in range(args.samples)]
    report = extensivity.check_extensivity(T, family, maps)
    payload = report.as_json()
    payload["instances"] = len(maps)
    return CommandResult(OK if report.ok else PROPERTY_FAILED, payload)


def cmd_check_distributivity(args) -> CommandResult:
    T = _theory(args)
    models = _models(args, T)
    if not models:
        raise SchemaError("expected at least one --structure (the factor X)")
    X, family = models[0], models[1:]
    canon = extensivity.canonical_distributor(T, X, family)
    iso = is_pi_morphism(T.signature, canon) and catops.is_isomorphism(T, canon)
    payload = {"isomorphism": iso, "canonical": morphism_to_json(canon)}
    return CommandResult(OK if iso else PROPERTY_FAILED, payload)


def cmd_hom_count(args) -> CommandResult:
    T = _theory(args)
    A, X = _structures(args, T, 2)
    hs = extensivity.hom_set(T, A, X)
    return CommandResult(OK, {"count": len(hs), "homs": [morphism_to_json(h) for h in hs]})


def cmd_final_density(args) -> CommandResult:
    T = _theory(args)
    (X,) = _models(args, T, 1)
    sink, final = extensivity.final_density_sink(T, X)
    payload = {
        "final": final,
        "legs": [{"domain": structure_to_json(h.dom), "map": dict(sorted(h.map.items()))} for h in sink.legs],
    }
    return CommandResult(OK if final else PROPERTY_FAILED, payload)


def cmd_gen_theory(args) -> CommandResult:
    Q = _quantale(args)
    return CommandResult(OK, theory_to_json(quantale.gen_theory(Q, args.flavor)))


def cmd_translate(args) -> CommandResult:
    Q = _quantale(args)
    direction = _need(args.dir, "--dir")
    if direction == "to-distance":
        (X,) = _structures(args, count=1)
        return CommandResult(OK, distmatrix_to_json(quantale.to_distance(Q, X)))
    D = distmatrix_from_json(load_file(_need(args.matrix, "--matrix")))
    return CommandResult(OK, structure_to_json(quantale.from_distance(Q, D)))


def cmd_validate_quantale(args) -> CommandResult:
    Q = quantale_from_json(load_file(_need(args.quantale, "--quantale")))
    bad = quantale.validate_quantale(Q)
    payload = {"ok": not bad, "violations": [{"law": v.law, "witness": repr(v.witness)} for v in bad]}
    return CommandResult(PROPERTY_FAILED if bad else OK, payload)


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def run(argv: Sequence[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        return CommandResult(INPUT_ERROR, None, [str(exc)])
    if args.command is None:
        return CommandResult(INPUT_ERROR, None, ["no subcommand given\n\n" + parser.format_usage()])
    env_bound = os.environ.get("HORNCAT_BOUND")
    if env_bound:
        try:
            args.bound = int(env_bound)
        except ValueError:
            return CommandResult(INPUT_ERROR, None, [f"HORNCAT_BOUND must be an integer, got {env_bound!r}"])
    try:
        result = HANDLERS[args.command](args)
    except ValueError as exc:
        return CommandResult(INPUT_ERROR, None, [f"{type(exc).__name__}: {exc}"])
    result.out = args.out
    return result


def main(argv: Sequence[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    for msg in result.diagnostics:
        print(msg, file=sys.stderr)
    if result.payload is not None:
        text = dumps(result.payload) + "\n"
        if result.out:
            with open(result.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return result.exit_code
