"""Command-line interface.

Subcommands: ``verify`` (run identity checks), ``reduce`` (build a map from a
reduced pair), ``compose`` (compose two maps and classify the result),
``classify`` (classification and reduction expressions of one map) and
``demo-cocycle`` (random chains over three superdomains with both cocycle
verdicts).  Exit status: 0 on success, 1 when a check fails, 2 on usage or
input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, Optional, Sequence

from .errors import BerezinianDoesNotExist
from .serialization import (
    SerializationError,
    decode_map,
    decode_reduced_pair,
    encode_map,
    encode_superfield,
)
from .transforms import (
    ReductionKind,
    build_reduced,
    classify_berezinian,
    compose,
    InvertibilityTest,
    mixed_cocycle_holds,
    reduction_conditions,
    reduction_kind,
    standard_cocycle_holds,
)
from .verification import (
    CheckConfig,
    random_map,
    render_report_text,
    report_to_dict,
    run_suite,
)

_USAGE_ERROR = 2
_CHECK_FAILED = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superspace",
        description="Exact identity checking and map calculus on (1|1) superspace.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--generators", type=int, default=4, metavar="L",
                       help="number of Grassmann generators (default 4)")
        p.add_argument("--max-degree", type=int, default=3,
                       help="maximum polynomial degree for random instances (default 3)")
        p.add_argument("--trials", type=int, default=1000,
                       help="trials per check (default 1000)")
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--format", choices=("json", "text"), default="text",
                       help="output format (default text)")
        p.add_argument("--input", metavar="FILE", help="input file (default stdin)")
        p.add_argument("--output", metavar="FILE", help="output file (default stdout)")

    verify = sub.add_parser("verify", help="run the identity-check suite")
    add_common(verify)
    verify.add_argument("--suite", default="all",
                        help="comma-separated check names, or 'all' (default)")
    verify.add_argument("--timing", action="store_true",
                        help="include per-check wall time in JSON output")

    for name, help_text in (
        ("reduce", "build a map from a (g, psi, spin) reduced pair"),
        ("compose", "compose two maps (the one under 'first' acts first)"),
        ("classify", "classify a map and report its reduction expressions"),
        ("demo-cocycle", "random chains over three superdomains; cocycle verdicts"),
    ):
        p = sub.add_parser(name, help=help_text)
        add_common(p)
    return parser


def _read_input(args) -> Any:
    if args.input:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise SerializationError(f"cannot read {args.input}: {exc}") from exc
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _write_output(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
            if not text.endswith("\n"):
                handle.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit(args, document: Dict[str, Any], text_lines: Sequence[str]) -> None:
    if args.format == "json":
        _write_output(args, json.dumps(document, sort_keys=True, indent=2))
    else:
        _write_output(args, "\n".join(text_lines))


def _config_from(args, suite: Sequence[str]) -> CheckConfig:
    return CheckConfig(
        generator_count=args.generators,
        max_degree=args.max_degree,
        coefficient_bound=5,
        trials=args.trials,
        seed=args.seed,
        suite=tuple(suite),
    )


def _cmd_verify(args) -> int:
    suite = tuple(part.strip() for part in args.suite.split(",") if part.strip())
    if not suite:
        suite = ("all",)
    cfg = _config_from(args, suite)
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    report = run_suite(cfg)
    if args.format == "json":
        document = report_to_dict(report, include_timing=args.timing)
        _write_output(args, json.dumps(document, sort_keys=True, indent=2))
    else:
        _write_output(args, render_report_text(report))
    return _CHECK_FAILED if report.failed else 0


def _cmd_reduce(args) -> int:
    pair = decode_reduced_pair(_read_input(args))
    built = build_reduced(pair)
    document = encode_map(built)
    lines = [
        f"spin {pair.spin} map over {pair.gens} generators:",
        f"  f   = {built.f}",
        f"  chi = {built.chi}",
        f"  psi = {built.psi}",
        f"  g   = {built.g}",
    ]
    _emit(args, document, lines)
    return 0


def _cmd_compose(args) -> int:
    doc = _read_input(args)
    if not isinstance(doc, dict) or set(doc) != {"first", "second"}:
        raise SerializationError(
            "$: expected an object with exactly the keys 'first' and 'second'"
        )
    first = decode_map(doc["first"], "$.first")
    second = decode_map(doc["second"], "$.second")
    composite = compose(second, first)
    kind = reduction_kind(composite)
    ber_class = classify_berezinian(composite)
    document = {
        "composite": encode_map(composite),
        "reduction_kind": kind.value,
        "berezinian_class": ber_class.value,
    }
    lines = [
        f"reduction kind:   {kind.value}",
        f"berezinian class: {ber_class.value}",
        f"  f   = {composite.f}",
        f"  chi = {composite.chi}",
        f"  psi = {composite.psi}",
        f"  g   = {composite.g}",
    ]
    _emit(args, document, lines)
    return 0


def _cmd_classify(args) -> int:
    transform = decode_map(_read_input(args))
    conditions = reduction_conditions(transform)
    kind = reduction_kind(transform)
    by_function = classify_berezinian(transform, InvertibilityTest.FUNCTION_BODY)
    by_derivative = classify_berezinian(transform, InvertibilityTest.DERIVATIVE_BODY)
    document = {
        "reduction_kind": kind.value,
        "berezinian_class": {
            "function_body": by_function.value,
            "derivative_body": by_derivative.value,
        },
        "conditions": {
            "twist": encode_superfield(conditions.twist),
            "conformal": encode_superfield(conditions.conformal),
            "conformal_reduced": encode_superfield(conditions.conformal_reduced),
        },
    }
    lines = [
        f"reduction kind:              {kind.value}",
        f"berezinian (function body):  {by_function.value}",
        f"berezinian (derivative):     {by_derivative.value}",
        f"twist condition Q:           {conditions.twist}",
        f"conformal condition DL:      {conditions.conformal}",
        f"reduced condition DL0:       {conditions.conformal_reduced}",
    ]
    _emit(args, document, lines)
    return 0


def _cmd_demo_cocycle(args) -> int:
    cfg = _config_from(args, ("all",))
    conformal_inner = random_map(ReductionKind.SUPERCONFORMAL, cfg, 0)
    conformal_outer = random_map(ReductionKind.SUPERCONFORMAL, cfg, 1)
    twist_inner = random_map(ReductionKind.TWIST_PARITY, cfg, 2)
    standard = standard_cocycle_holds(conformal_outer, conformal_inner)
    mixed = mixed_cocycle_holds(conformal_outer, twist_inner)
    document = {
        "standard_cocycle": {
            "chain": "superconformal after superconformal",
            "holds": standard,
        },
        "mixed_cocycle": {
            "chain": "superconformal after twist-parity",
            "holds": mixed,
        },
    }
    lines = [
        f"standard cocycle (conformal chain): {'holds' if standard else 'FAILS'}",
        f"mixed cocycle (conformal after twist): {'holds' if mixed else 'FAILS'}",
    ]
    _emit(args, document, lines)
    return 0 if standard and mixed else _CHECK_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "reduce": _cmd_reduce,
        "compose": _cmd_compose,
        "classify": _cmd_classify,
        "demo-cocycle": _cmd_demo_cocycle,
    }
    try:
        return handlers[args.subcommand](args)
    except SerializationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR
    except BerezinianDoesNotExist as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
