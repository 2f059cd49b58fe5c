"""Command-line entry point.

Reports go to stdout, diagnostics to stderr.  Exit codes: 0 when the spec
passes, 1 when findings reach the --fail-on threshold, 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .engine import AnalysisConfig, RULE_SETTINGS, analyze
from .model_spec import INPUT_TYPES, PROBLEM_TYPES, ModelSpecError, parse_model_spec
from .report import exit_code, render_machine, render_text
from .rules import RULES

EXIT_PASS = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2

PROFILES = ("default", "minimal", "strict-llm")
PROFILE_ENV_VAR = "THEIA_LINT_PROFILE"


class UsageError(Exception):
    """Bad invocation or unreadable/invalid input."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theia-lint",
        description="Check a model spec document for structural configuration bugs.",
    )
    parser.add_argument("spec_path", help="path to the model spec JSON document")
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="report format (default: text)",
    )
    parser.add_argument(
        "--fail-on",
        choices=("error", "warning"),
        default="error",
        help="lowest severity that fails the run (default: error)",
    )
    parser.add_argument(
        "--rule",
        action="append",
        default=[],
        metavar="RULE=SETTING",
        help="override one rule: RULE=error|warning|off (repeatable)",
    )
    parser.add_argument(
        "--profile",
        choices=PROFILES,
        default=None,
        help=f"rule profile (default: ${PROFILE_ENV_VAR} or 'default')",
    )
    parser.add_argument(
        "--lenient",
        action="store_true",
        help="accept unknown keys in the spec document",
    )
    parser.add_argument(
        "--problem-type",
        choices=PROBLEM_TYPES,
        default=None,
        help="supply or override the dataset problem type",
    )
    parser.add_argument(
        "--input-type",
        choices=INPUT_TYPES,
        default=None,
        help="supply or override the dataset input type",
    )
    parser.add_argument(
        "--value-range",
        metavar="MIN,MAX",
        default=None,
        help="supply or override the dataset value range",
    )
    return parser


def _resolve_profile(option: Optional[str]) -> str:
    if option is not None:
        return option
    profile = os.environ.get(PROFILE_ENV_VAR, "default")
    if profile not in PROFILES:
        raise UsageError(
            f"{PROFILE_ENV_VAR} must be one of {', '.join(PROFILES)}; got {profile!r}"
        )
    return profile


def _parse_rule_overrides(entries: Sequence[str]) -> dict[str, str]:
    overrides: dict[str, str] = {}
    for entry in entries:
        rule_id, separator, setting = entry.partition("=")
        if not separator:
            raise UsageError(f"--rule expects RULE=SETTING, got {entry!r}")
        rule_id = rule_id.strip().upper()
        setting = setting.strip().lower()
        if rule_id not in RULES:
            raise UsageError(f"unknown rule id {rule_id!r}")
        if setting not in RULE_SETTINGS:
            raise UsageError(
                f"bad setting {setting!r} for rule {rule_id}; "
                f"expected one of {', '.join(RULE_SETTINGS)}"
            )
        overrides[rule_id] = setting
    return overrides


def _parse_value_range(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--value-range expects MIN,MAX, got {text!r}")
    try:
        return [float(parts[0]), float(parts[1])]
    except ValueError as exc:
        raise UsageError(f"--value-range expects numbers, got {text!r}") from exc


def _build_config(args: argparse.Namespace) -> AnalysisConfig:
    profile = _resolve_profile(args.profile)
    overrides: dict[str, str] = {}
    if profile == "minimal":
        overrides["MNL"] = "off"
    overrides.update(_parse_rule_overrides(args.rule))
    return AnalysisConfig(
        severity_overrides=overrides,
        fail_on=args.fail_on,
        lenient_parsing=args.lenient,
        strict_llm=profile == "strict-llm",
    )


def run(argv: Sequence[str] | None = None) -> int:
    """Run the linter; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage to stderr
        return EXIT_USAGE if exc.code else EXIT_PASS

    try:
        config = _build_config(args)
        dataset_overrides: dict[str, Any] = {}
        if args.problem_type:
            dataset_overrides["problem_type"] = args.problem_type
        if args.input_type:
            dataset_overrides["input_type"] = args.input_type
        if args.value_range:
            dataset_overrides["value_range"] = _parse_value_range(args.value_range)

        try:
            text = Path(args.spec_path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec_path}: {exc}") from exc
        try:
            spec = parse_model_spec(
                text,
                lenient=config.lenient_parsing,
                dataset_overrides=dataset_overrides or None,
            )
        except ModelSpecError as exc:
            raise UsageError(f"invalid spec {args.spec_path}: {exc}") from exc
    except UsageError as exc:
        print(f"theia-lint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = analyze(spec, config)
    if args.format == "json":
        sys.stdout.write(render_machine(report))
    else:
        sys.stdout.write(render_text(report))
    return exit_code(report, config.fail_on)


def main() -> int:
    return run()


if __name__ == "__main__":
    raise SystemExit(main())
