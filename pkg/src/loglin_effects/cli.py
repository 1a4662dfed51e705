"""Command-line interface over table files.

Subcommands: ``fit`` (loglinear + causal parameters), ``effects`` (full
odds-ratio effect report, optionally oracle-verified), ``test``
(additive-interaction z-test and linearity bonds), and ``oracle``
(probability-space effects straight from the table).

Exit codes: 0 success, 1 input error, 2 fit/computation failure,
3 verification failure.  JSON mode emits exactly one document on stdout;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .causal import (
    CausalModelError,
    conditional_probabilities,
    fit_causal,
)
from .effects import DegenerateProbabilityError, effects_report
from .fitting import FitError, fit_poisson, saturated_spec, two_way_spec
from .inference import TestError, additive_zero_test, linearity_bonds
from .oracle import OracleError, oracle_effects
from .tables import TableError, joint_probabilities, parse_table, validate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FIT = 2
EXIT_VERIFY = 3

_EFFECT_FIELDS = (
    "te", "ie", "ie_reverse", "nde", "additive_interaction",
    "multiplicative_interaction",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loglin-effects",
        description="Causal odds-ratio effects for 2x2x2 contingency tables.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p, model=True, direction=False):
        p.add_argument("--input", required=True, help="table file path")
        p.add_argument(
            "--format", choices=("csv", "json"), default=None,
            help="input format (default: by file extension)",
        )
        p.add_argument(
            "--zero-cells", default="error", metavar="error|correct:C|allow",
            help="zero-cell policy (default: error)",
        )
        p.add_argument(
            "--output", choices=("text", "json"), default="text",
        )
        if model:
            p.add_argument(
                "--model", choices=("two-way", "saturated"), default="two-way",
            )
        if direction:
            p.add_argument(
                "--from", dest="from_level", type=int, choices=(0, 1), default=0,
            )
            p.add_argument(
                "--to", dest="to_level", type=int, choices=(0, 1), default=1,
            )

    p_fit = sub.add_parser("fit", help="fit loglinear and causal parameters")
    add_common(p_fit)

    p_eff = sub.add_parser("effects", help="compute the effect report")
    add_common(p_eff, direction=True)
    p_eff.add_argument(
        "--verify", action="store_true",
        help="cross-check against the probability-space oracle",
    )

    p_test = sub.add_parser("test", help="additive-interaction z-test")
    add_common(p_test)

    p_orc = sub.add_parser(
        "oracle", help="probability-space effects directly from the table"
    )
    add_common(p_orc, model=False, direction=True)

    return parser


def _load_table(args):
    fmt = args.format
    if fmt is None:
        fmt = "json" if Path(args.input).suffix.lower() == ".json" else "csv"
    raw = Path(args.input).read_bytes()
    table = parse_table(raw, fmt)

    policy = args.zero_cells
    correction = 0.5
    if policy.startswith("correct"):
        if ":" in policy:
            policy, amount = policy.split(":", 1)
            correction = float(amount)
        policy = "correct"
    if policy not in ("error", "correct", "allow"):
        raise TableError(f"unknown zero-cell policy {args.zero_cells!r}")
    return validate(table, policy=policy, correction=correction)


def _emit(args, doc: dict, text_lines):
    if args.output == "json":
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _param_lines(title, mapping, fmtspec=".6g"):
    lines = [title]
    for k, v in mapping.items():
        lines.append(f"  {k:<6} {v:{fmtspec}}")
    return lines


def cmd_fit(args) -> int:
    table = _load_table(args)
    spec = saturated_spec() if args.model == "saturated" else two_way_spec()
    fit = fit_poisson(table, spec)
    cp = fit_causal(table, with_interaction=(args.model == "saturated"))

    doc = {
        "model": args.model,
        "loglinear": json.loads(fit.to_json()),
        "causal": json.loads(cp.to_json()),
    }
    lines = []
    lines += _param_lines("loglinear parameters (multiplicative):",
                          doc["loglinear"]["multiplicative"])
    lines += _param_lines("loglinear parameters (additive):",
                          doc["loglinear"]["additive"])
    causal_mult = {k: doc["causal"][k]
                   for k in ("Xc", "Zc", "XZc", "Y", "XY", "ZY", "XZY")}
    lines += _param_lines("causal parameters (multiplicative):", causal_mult)
    lines.append(
        f"deviance {fit.deviance:.6g}  iterations {fit.iterations}  "
        f"converged {fit.converged}"
    )
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_effects(args) -> int:
    table = _load_table(args)
    if args.from_level == args.to_level:
        raise TableError("--from and --to must differ")
    cp = fit_causal(table, with_interaction=(args.model == "saturated"))
    report = effects_report(cp, args.from_level, args.to_level)

    doc = json.loads(report.to_json())
    discrepancy = None
    if args.verify:
        joint = conditional_probabilities(cp).joint()
        ora = oracle_effects(joint, args.from_level, args.to_level)
        discrepancy = max(
            *(abs(getattr(report, f) - getattr(ora, f))
              for f in _EFFECT_FIELDS),
            *(abs(report.lde[z] - ora.lde[z]) for z in (0, 1)),
            *(abs(report.cell[z] - ora.cell[z]) for z in (0, 1)),
        )
        doc["verify_max_discrepancy"] = discrepancy
        print(f"oracle max discrepancy: {discrepancy:.3e}", file=sys.stderr)

    lines = [
        f"direction: X {args.from_level} -> {args.to_level}  (model {args.model})",
        f"TE    {report.te:.4f}",
        f"LDE   z=0: {report.lde[0]:.4f}  z=1: {report.lde[1]:.4f}",
        f"cell  z=0: {report.cell[0]:.4f}  z=1: {report.cell[1]:.4f}",
        f"IE    {report.ie:.4f}   IE(reverse) {report.ie_reverse:.4f}",
        f"NDE   {report.nde:.4f}",
        f"additive interaction       {report.additive_interaction:.4f}",
        f"multiplicative interaction {report.multiplicative_interaction:.4f}",
    ]
    _emit(args, doc, lines)
    if discrepancy is not None and discrepancy > 1e-8:
        print("oracle verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_test(args) -> int:
    table = _load_table(args)
    if args.model != "two-way":
        raise TestError("test defined for two-way model")
    fit = fit_poisson(table, two_way_spec())
    cp = fit_causal(table, with_interaction=False)
    result = additive_zero_test(fit)
    bonds = linearity_bonds(cp, fit)

    doc = {
        "additive_zero_test": json.loads(result.to_json()),
        "linearity": json.loads(bonds.to_json()),
    }
    lines = [
        f"H0: {result.combination}",
        f"beta_hat {result.beta_hat:.4f}  se {result.se:.4f}  "
        f"z {result.z:.4f}  p {result.p_two_sided:.4f}",
        f"linearity bond 1 residual {bonds.bond1_residual:.4f}",
        f"linearity bond 2 residual {bonds.bond2_residual:.4f}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_oracle(args) -> int:
    table = _load_table(args)
    if args.from_level == args.to_level:
        raise TableError("--from and --to must differ")
    joint = joint_probabilities(table)
    report = oracle_effects(joint, args.from_level, args.to_level)
    doc = json.loads(report.to_json())
    lines = [
        f"direction: X {args.from_level} -> {args.to_level}  (oracle)",
        f"TE    {report.te:.4f}",
        f"LDE   z=0: {report.lde[0]:.4f}  z=1: {report.lde[1]:.4f}",
        f"cell  z=0: {report.cell[0]:.4f}  z=1: {report.cell[1]:.4f}",
        f"IE    {report.ie:.4f}   IE(reverse) {report.ie_reverse:.4f}",
        f"NDE   {report.nde:.4f}",
        f"additive interaction       {report.additive_interaction:.4f}",
        f"multiplicative interaction {report.multiplicative_interaction:.4f}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


_COMMANDS = {
    "fit": cmd_fit,
    "effects": cmd_effects,
    "test": cmd_test,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.subcommand](args)
    except (TableError, FileNotFoundError, OSError, ValueError) as exc:
        # computation-stage ValueErrors are remapped below before this point
        if isinstance(exc, (CausalModelError, DegenerateProbabilityError,
                            OracleError, TestError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FIT
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FitError as exc:
        print(f"fit error: {exc}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
