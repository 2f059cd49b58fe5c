"""Two-pass analysis engine.

Pass 1 walks the layer sequence once, tracking call-string context
(anchors, activation/dropout counters, convolution runs).  Pass 2 checks
individual parameters against the dataset profile and learner settings.
The merged report lists pass-1 findings before pass-2 findings, each pass
ordered by layer index then rule id.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import rules
from .model_spec import (
    CONV_KINDS,
    POOLING_KINDS,
    ModelSpec,
    infer_shapes,
    spec_fingerprint,
)
from .report import Finding, Report, SkipNote, SEVERITIES, verdict_for
from .rules import CALL_STRINGS, PARAMETER_SENSITIVE, RULES

RULE_SETTINGS = SEVERITIES + ("off",)

PASS_ONE_RULES = tuple(
    rule_id for rule_id, desc in RULES.items() if desc.technique == CALL_STRINGS
)
PASS_TWO_RULES = tuple(
    rule_id for rule_id, desc in RULES.items() if desc.technique == PARAMETER_SENSITIVE
)

_ANCHOR_KINDS = CONV_KINDS | {"dense"}
# layers that neither extend nor break a convolution run
_RUN_TRANSPARENT_KINDS = frozenset({"activation", "batch_normalization", "dropout"})


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for one analysis run."""

    severity_overrides: Mapping[str, str] = field(default_factory=dict)
    fail_on: str = "error"
    lenient_parsing: bool = False
    strict_llm: bool = False


@dataclass
class CallStringState:
    """Counters carried along the pass-1 walk."""

    conv_count: int = 0
    dense_count: int = 0
    consecutive_conv_run: int = 0
    activation_count_since_anchor: int = 0
    dropout_count_since_anchor: int = 0
    anchor_index: Optional[int] = None


def _validate_config(config: AnalysisConfig) -> None:
    for rule_id, setting in config.severity_overrides.items():
        if rule_id not in RULES:
            raise ValueError(f"unknown rule id {rule_id!r}")
        if setting not in RULE_SETTINGS:
            raise ValueError(
                f"bad setting {setting!r} for rule {rule_id}; "
                f"expected one of {RULE_SETTINGS}"
            )
    if config.fail_on not in SEVERITIES:
        raise ValueError(f"fail_on must be one of {SEVERITIES}")


def _severities(config: AnalysisConfig, rule_ids: tuple[str, ...]) -> dict[str, Optional[str]]:
    """Effective severity per rule; None means the rule is off."""
    table: dict[str, Optional[str]] = {}
    for rule_id in rule_ids:
        setting = config.severity_overrides.get(rule_id)
        if setting == "off":
            table[rule_id] = None
        elif setting in SEVERITIES:
            table[rule_id] = setting
        else:
            table[rule_id] = RULES[rule_id].default_severity
    return table


def _sorted_findings(findings: list[Finding], layer_count: int) -> list[Finding]:
    def key(finding: Finding) -> tuple[int, str]:
        index = finding.layer_index if finding.layer_index is not None else layer_count
        return (index, finding.rule_id)

    return sorted(findings, key=key)


def _output_layer_index(spec: ModelSpec) -> Optional[int]:
    for layer in reversed(spec.layers):
        if layer.kind == "dense":
            return layer.index
    return None


def _effective_output_activation(spec: ModelSpec, output_index: int) -> str:
    """Inline activation if present, else the next activation layer, else linear."""
    output_layer = spec.layers[output_index]
    if output_layer.inline_activation is not None:
        return output_layer.inline_activation
    for layer in spec.layers[output_index + 1 :]:
        if layer.kind == "activation":
            return layer.activation_name
    return "linear"


def run_call_strings_pass(
    spec: ModelSpec, config: AnalysisConfig
) -> tuple[list[Finding], list[SkipNote]]:
    """Evaluate the sequence-structure rules: CNL, IDS, MRD, MNL, ICL, IFL."""
    severity = _severities(config, PASS_ONE_RULES)
    findings: list[Finding] = []
    state = CallStringState()
    conv2d_count = 0
    run_already_reported = False
    output_index = _output_layer_index(spec)
    problem_type = spec.dataset.problem_type
    layers = spec.layers

    def adjudicate_anchor() -> None:
        if state.anchor_index is None:
            return
        anchor = layers[state.anchor_index]
        if severity["CNL"]:
            findings.extend(
                rules.rule_cnl(
                    anchor,
                    state.activation_count_since_anchor,
                    problem_type,
                    anchor.index == output_index,
                    severity["CNL"],
                )
            )
        if severity["MRD"]:
            findings.extend(
                rules.rule_mrd(
                    anchor,
                    state.activation_count_since_anchor,
                    state.dropout_count_since_anchor,
                    severity["MRD"],
                )
            )

    for layer in layers:
        kind = layer.kind
        if kind in _ANCHOR_KINDS:
            adjudicate_anchor()
            state.anchor_index = layer.index
            state.activation_count_since_anchor = 1 if layer.inline_activation else 0
            state.dropout_count_since_anchor = 0
            if severity["MNL"]:
                next_index = layer.index + 1
                next_kind = layers[next_index].kind if next_index < len(layers) else None
                findings.extend(rules.rule_mnl(layer, next_kind, severity["MNL"]))
            if kind == "dense":
                state.dense_count += 1
            else:
                state.conv_count += 1
                if kind == "conv2d":
                    conv2d_count += 1
        elif kind in POOLING_KINDS:
            adjudicate_anchor()
            state.anchor_index = None
        elif kind == "activation":
            # linear is the identity, not an activation event
            if state.anchor_index is not None and layer.activation_name != "linear":
                state.activation_count_since_anchor += 1
        elif kind == "dropout":
            if state.anchor_index is not None:
                state.dropout_count_since_anchor += 1

        if kind in CONV_KINDS:
            state.consecutive_conv_run += 1
            if not run_already_reported and severity["IDS"] is not None:
                reported = rules.rule_ids(layer, state.consecutive_conv_run, severity["IDS"])
                if reported:
                    findings.extend(reported)
                    run_already_reported = True
        elif kind not in _RUN_TRANSPARENT_KINDS:
            state.consecutive_conv_run = 0
            run_already_reported = False

    adjudicate_anchor()

    if spec.dataset.input_type in rules.MIN_CONV_LAYERS and state.conv_count >= 1:
        if severity["ICL"]:
            findings.extend(
                rules.rule_icl(conv2d_count, spec.dataset.input_type, severity["ICL"])
            )
        if severity["IFL"]:
            findings.extend(rules.rule_ifl(state.dense_count, severity["IFL"]))

    return _sorted_findings(findings, len(layers)), []


def run_parameter_pass(
    spec: ModelSpec, config: AnalysisConfig
) -> tuple[list[Finding], list[SkipNote]]:
    """Evaluate the parameter rules: INF, INN, IDN, LLM, LOB, IBS."""
    severity = _severities(config, PASS_TWO_RULES)
    findings: list[Finding] = []
    skips: list[SkipNote] = []
    dataset = spec.dataset
    learner = spec.learner
    output_index = _output_layer_index(spec)
    has_conv = any(layer.kind in CONV_KINDS for layer in spec.layers)
    shapes = infer_shapes(spec) if severity["INN"] else []

    previous_hidden_units: Optional[int] = None
    for position, layer in enumerate(spec.layers):
        if layer.kind in CONV_KINDS and severity["INF"]:
            findings.extend(rules.rule_inf(layer, dataset.input_type, severity["INF"]))
        if layer.kind == "dense" and layer.index != output_index and severity["INN"]:
            incoming = dataset.input_shape if position == 0 else shapes[position - 1]
            if incoming is not None and len(incoming) == 1:
                input_size: Optional[int] = incoming[0]
            else:
                input_size = None
                skips.append(
                    SkipNote("INN", f"input size for dense layer {position} is unknown")
                )
            findings.extend(
                rules.rule_inn(
                    layer, input_size, previous_hidden_units, has_conv, severity["INN"]
                )
            )
            previous_hidden_units = layer.units

    if severity["IDN"]:
        if dataset.value_range is None:
            skips.append(SkipNote("IDN", "value_range is not specified"))
        else:
            findings.extend(rules.rule_idn(dataset.value_range, severity["IDN"]))

    if severity["LLM"]:
        if dataset.problem_type == "multilabel_classification":
            skips.append(
                SkipNote(
                    "LLM",
                    "no activation/loss mapping is defined for multilabel classification",
                )
            )
        else:
            output_layer = None
            effective_activation = None
            if output_index is None:
                skips.append(SkipNote("LLM", "model has no dense output layer"))
            else:
                output_layer = spec.layers[output_index]
                effective_activation = _effective_output_activation(spec, output_index)
            if learner.loss is None:
                skips.append(SkipNote("LLM", "loss is not specified"))
            findings.extend(
                rules.rule_llm(
                    dataset.problem_type,
                    output_layer,
                    effective_activation,
                    learner.loss,
                    config.strict_llm,
                    severity["LLM"],
                )
            )

    if severity["LOB"]:
        if learner.learning_rate is None:
            skips.append(SkipNote("LOB", "learning_rate is not specified"))
        else:
            findings.extend(rules.rule_lob(learner.learning_rate, severity["LOB"]))

    if severity["IBS"]:
        if learner.batch_size is None:
            skips.append(SkipNote("IBS", "batch_size is not specified"))
        else:
            findings.extend(rules.rule_ibs(learner.batch_size, severity["IBS"]))

    return _sorted_findings(findings, len(spec.layers)), skips


def analyze(spec: ModelSpec, config: AnalysisConfig | None = None) -> Report:
    """Run both passes and merge their findings into a report."""
    config = config or AnalysisConfig()
    _validate_config(config)
    findings_one, skips_one = run_call_strings_pass(spec, config)
    findings_two, skips_two = run_parameter_pass(spec, config)
    findings = tuple(findings_one + findings_two)
    return Report(
        findings=findings,
        skip_notes=tuple(skips_one + skips_two),
        verdict=verdict_for(findings),
        spec_fingerprint=spec_fingerprint(spec),
    )
