"""Command line interface: stratify, fiber, check-free, tangent, verify.

Exit codes: 0 success, 1 mathematical Unresolved/Incomplete outcome,
2 input error, 3 step-budget exhaustion.  JSON output is canonical: two
runs on the same input produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__, budget
from .budget import BudgetExceeded
from .derivations import (
    DerivationModule,
    close_under_bracket,
    logarithmic_derivations,
    saito_free_check,
    verify_bracket_closed,
)
from .groebner import Ideal
from .parse import ParseError
from .primes import is_prime
from .problem import ProblemSpec, parse_problem
from .stratify import (
    PointNotOnVariety,
    StratificationError,
    UncertifiedPrimeError,
    UnresolvedFiber,
    defining_prime_of_point,
    mark_holonomic,
    stratify,
    verify_frontier,
)

COMMANDS = ("stratify", "fiber", "check-free", "tangent", "verify")

EXIT_OK = 0
EXIT_UNRESOLVED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass
class Options:
    point: tuple | None = None
    output: str = "text"
    first_integral_degree: int = 3
    step_budget: int | None = None
    strict_bracket: bool = False


@dataclass
class Report:
    exit_code: int
    text: str
    payload: dict

    def rendered(self, output: str) -> str:
        if output == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"
        return self.text


class InputProblem(ValueError):
    pass


def _parse_point(text: str, arity: int) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != arity:
        raise InputProblem(
            f"--point needs {arity} comma-separated coordinates, got {len(parts)}"
        )
    try:
        return tuple(Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputProblem(f"bad point coordinate: {exc}") from exc


def _build_module(spec: ProblemSpec, ideal: Ideal, opts: Options):
    """Returns (module, source note).  Explicit modules are bracket closed
    automatically unless --strict-bracket asks for rejection instead."""
    if spec.derivation_source == "tangent":
        return logarithmic_derivations(ideal), "tangent"
    module = DerivationModule(spec.derivations, ring=spec.ring)
    if verify_bracket_closed(module):
        return (
            DerivationModule(module.generators, bracket_closed=True, ring=spec.ring),
            "explicit",
        )
    if opts.strict_bracket:
        raise InputProblem(
            "explicit derivation module is not bracket closed (--strict-bracket)"
        )
    return close_under_bracket(module), "explicit, closed under brackets"


def _node_json(node) -> dict:
    return {
        "id": node.node_id,
        "prime_generators": [str(g) for g in node.prime.groebner_basis()],
        "certified": node.profile.prime.status,
        "dim": node.dim,
        "rank": node.rank,
        "kind": node.kind,
        "fiber_dim": node.fiber_dim,
        "holonomic": node.holonomic,
        "children": [c.node_id for c in node.children],
    }


def _envelope(command: str, spec: ProblemSpec, opts: Options) -> dict:
    return {
        "tool": "logstrat",
        "version": __version__,
        "command": command,
        "options": {
            "first_integral_degree": opts.first_integral_degree,
            "strict_bracket": opts.strict_bracket,
            "output": opts.output,
        },
        "problem": {
            "ring": {
                "variables": list(spec.ring.variables),
                "order": spec.ring.order,
            },
            "ideal": [str(g) for g in spec.ideal_generators] or ["0"],
            "derivations": "tangent"
            if spec.derivation_source == "tangent"
            else [str(d) for d in spec.derivations],
        },
    }


def _finish(payload: dict, lines: list | None = None) -> None:
    payload["budget"] = {
        "step_limit": budget.step_limit(),
        "steps_used": budget.steps_used(),
    }
    if lines is not None:
        lines.append(
            f"budget: steps_used={budget.steps_used()} "
            f"step_limit={budget.step_limit()}"
        )


def _header(command: str, spec: ProblemSpec) -> list:
    return [
        f"logstrat {__version__} :: {command}",
        "problem: " + " | ".join(spec.canonical_text().strip().splitlines()),
    ]


def run(command: str, spec: ProblemSpec, opts: Options) -> Report:
    """Execute one command against a parsed problem; never raises for the
    documented failure classes, which are encoded in the exit code."""
    previous_limit = budget.step_limit()
    if opts.step_budget is not None:
        budget.set_step_limit(opts.step_budget)
    budget.reset_steps()
    try:
        return _run(command, spec, opts)
    finally:
        budget.set_step_limit(previous_limit)


def _run(command: str, spec: ProblemSpec, opts: Options) -> Report:
    payload = _envelope(command, spec, opts)
    lines = _header(command, spec)
    try:
        ideal = Ideal(spec.ring, spec.ideal_generators)
        if command == "tangent":
            module = logarithmic_derivations(ideal)
            payload["generators"] = [str(d) for d in module.generators]
            lines.append(f"tangent module generators ({len(module.generators)}):")
            lines.extend(f"  {d}" for d in module.generators)
            _finish(payload, lines)
            return Report(EXIT_OK, "\n".join(lines) + "\n", payload)

        if command == "check-free":
            if len(spec.ideal_generators) != 1:
                raise InputProblem("check-free needs a principal ideal (one generator)")
            f = spec.ideal_generators[0]
            if spec.derivation_source == "explicit":
                derivs = list(spec.derivations)
            else:
                derivs = list(logarithmic_derivations(ideal).generators)
            if len(derivs) != spec.ring.nvars:
                payload["verdict"] = "inconclusive"
                payload["reason"] = (
                    f"{len(derivs)} generators for {spec.ring.nvars} variables"
                )
                _finish(payload, lines)
                lines.append("inconclusive: generator count does not match arity")
                return Report(EXIT_UNRESOLVED, "\n".join(lines) + "\n", payload)
            try:
                result = saito_free_check(derivs, f)
            except ValueError as exc:
                raise InputProblem(str(exc)) from exc
            payload["verdict"] = result.verdict
            payload["determinant"] = str(result.determinant)
            payload["constant"] = (
                str(result.constant) if result.constant is not None else None
            )
            _finish(payload, lines)
            if result.verdict == "free_with_basis":
                rel = "f" if result.constant == 1 else f"({result.constant})*f"
                lines.append(f"free_with_basis, det = {rel}")
                return Report(EXIT_OK, "\n".join(lines) + "\n", payload)
            lines.append("inconclusive")
            return Report(EXIT_UNRESOLVED, "\n".join(lines) + "\n", payload)

        module, source_note = _build_module(spec, ideal, opts)
        payload["module"] = {
            "source": source_note,
            "generators": [str(d) for d in module.generators],
        }
        if ideal.is_unit():
            raise InputProblem("the ideal is the unit ideal; nothing to stratify")
        dag = mark_holonomic(stratify(ideal, module))
        payload["nodes"] = [_node_json(n) for n in dag.nodes]
        payload["roots"] = [n.node_id for n in dag.roots]

        if command == "stratify":
            _finish(payload, lines)
            lines.append(f"module: {source_note}")
            counts = (
                len(dag.nodes),
                sum(1 for n in dag.nodes if n.is_defining()),
                sum(1 for n in dag.nodes if n.is_family()),
                sum(1 for n in dag.nodes if n.holonomic),
            )
            lines.append(
                "nodes: %d (defining %d, family %d, holonomic %d)" % counts
            )
            statuses = sorted({n["certified"] for n in payload["nodes"]})
            lines.append("prime certification: " + ", ".join(statuses))
            for n in dag.nodes:
                lines.append(
                    f"  {n.node_id}: prime={n.prime} dim={n.dim} rank={n.rank} "
                    f"kind={n.kind} holonomic={n.holonomic} "
                    f"children={[c.node_id for c in n.children]}"
                )
            return Report(EXIT_OK, "\n".join(lines) + "\n", payload)

        if command == "fiber":
            if opts.point is None:
                raise InputProblem("fiber needs --point a,b,c")
            point = opts.point
            assignment = defining_prime_of_point(
                point, dag, integral_degree_bound=opts.first_integral_degree
            )
            payload["fiber"] = {
                "point": [str(c) for c in point],
                "prime_generators": [
                    str(g) for g in assignment.prime.groebner_basis()
                ],
                "via": assignment.via,
                "defining": True,
                "certified": is_prime(assignment.prime),
                "holonomic": assignment.holonomic,
            }
            _finish(payload, lines)
            holo = "holonomic" if assignment.holonomic else "non-holonomic"
            lines.append(f"{assignment.prime}, defining, {holo}")
            lines.append(f"certified: {payload['fiber']['certified']}")
            return Report(EXIT_OK, "\n".join(lines) + "\n", payload)

        if command == "verify":
            report = verify_frontier(
                dag, integral_degree_bound=opts.first_integral_degree
            )
            payload["frontier"] = {
                "ok": report.ok,
                "pair_checks": report.pair_checks,
                "point_checks": report.point_checks,
                "sampled_points": report.sampled_points,
                "violations": list(report.violations),
            }
            _finish(payload, lines)
            lines.append(report.summary())
            code = EXIT_OK if report.ok else EXIT_UNRESOLVED
            return Report(code, "\n".join(lines) + "\n", payload)

        raise InputProblem(f"unknown command {command!r}")

    except BudgetExceeded as exc:
        payload["error"] = {"kind": "budget", "message": str(exc)}
        _finish(payload)
        return Report(EXIT_BUDGET, f"error: {exc}\n", payload)
    except (UncertifiedPrimeError, UnresolvedFiber) as exc:
        payload["error"] = {"kind": "unresolved", "message": str(exc)}
        _finish(payload)
        return Report(EXIT_UNRESOLVED, f"unresolved: {exc}\n", payload)
    except StratificationError as exc:
        payload["error"] = {"kind": "invariant", "message": str(exc)}
        _finish(payload)
        return Report(EXIT_UNRESOLVED, f"unresolved: {exc}\n", payload)
    except (InputProblem, PointNotOnVariety, ParseError, ValueError) as exc:
        payload["error"] = {"kind": "input", "message": str(exc)}
        _finish(payload)
        return Report(EXIT_INPUT, f"input error: {exc}\n", payload)


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logstrat",
        description="Stratify the closed points of an affine variety by a "
        "bracket-closed module of tangent vector fields.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("file", help="problem file (ring / ideal / derivations)")
    parser.add_argument("--point", help="rational coordinates a,b,c for fiber")
    parser.add_argument(
        "--output", choices=("text", "json"), default="text", help="report format"
    )
    parser.add_argument(
        "--first-integral-degree",
        type=int,
        default=3,
        metavar="N",
        help="degree bound for family fiber construction (default 3)",
    )
    parser.add_argument(
        "--step-budget", type=int, metavar="N", help="computation step limit"
    )
    parser.add_argument(
        "--strict-bracket",
        action="store_true",
        help="reject explicit derivation modules that are not bracket closed",
    )
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    try:
        spec = parse_problem(text)
    except ParseError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    opts = Options(
        output=args.output,
        first_integral_degree=args.first_integral_degree,
        step_budget=args.step_budget,
        strict_bracket=args.strict_bracket,
    )
    if args.point is not None:
        try:
            opts.point = _parse_point(args.point, spec.ring.nvars)
        except InputProblem as exc:
            sys.stderr.write(f"input error: {exc}\n")
            return EXIT_INPUT
    report = run(args.command, spec, opts)
    sys.stdout.write(report.rendered(opts.output))
    return report.exit_code


def console_main() -> None:
    sys.exit(main())
