"""Detection rules for structural model-configuration bugs.

Each rule is a pure function over inputs extracted from a validated
ModelSpec.  Rules return findings only; recording skip notes for absent
inputs is the engine's job.  Thresholds compare strictly, so the boundary
values themselves are acceptable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model_spec import CONV_KINDS, LayerSpec
from .report import Finding, SEVERITY_ERROR, SEVERITY_WARNING

# in-range filter counts per input type (inclusive bounds)
FILTER_BOUNDS = {
    "color_images": (16, 512),
    "grayscale_images": (6, 256),
    "tabular": (6, 256),
}
# minimum conv2d layers per image type
MIN_CONV_LAYERS = {"color_images": 3, "grayscale_images": 2}
MAX_DENSE_LAYERS = 3
MAX_CONV_RUN = 4
LEARNING_RATE_BOUNDS = (0.0001, 0.01)
BATCH_SIZE_BOUNDS = (32, 256)
ACCEPTED_VALUE_RANGES = ((0.0, 1.0), (-1.0, 1.0))

CALL_STRINGS = "call_strings"
PARAMETER_SENSITIVE = "parameter_sensitive"


@dataclass(frozen=True)
class RuleDescriptor:
    """Static metadata for one rule."""

    rule_id: str
    technique: str
    default_severity: str
    dataset_characteristics: tuple[str, ...]
    summary: str


RULES: dict[str, RuleDescriptor] = {
    descriptor.rule_id: descriptor
    for descriptor in (
        RuleDescriptor(
            "CNL",
            CALL_STRINGS,
            SEVERITY_ERROR,
            ("number_of_classes", "problem_type"),
            "dense/conv layer with zero or multiple activation functions",
        ),
        RuleDescriptor(
            "INF",
            PARAMETER_SENSITIVE,
            SEVERITY_ERROR,
            ("image_type",),
            "convolution filter count outside the recommended range",
        ),
        RuleDescriptor(
            "INN",
            PARAMETER_SENSITIVE,
            SEVERITY_ERROR,
            ("image_type", "problem_type"),
            "hidden dense layer wider than its input or widening toward output",
        ),
        RuleDescriptor(
            "IDS",
            CALL_STRINGS,
            SEVERITY_ERROR,
            ("any",),
            "too many consecutive convolutions without pooling",
        ),
        RuleDescriptor(
            "MRD",
            CALL_STRINGS,
            SEVERITY_WARNING,
            ("any",),
            "missing or redundant dropout around a dense/conv layer",
        ),
        RuleDescriptor(
            "MNL",
            CALL_STRINGS,
            SEVERITY_WARNING,
            ("any",),
            "missing batch normalization between a layer and its activation",
        ),
        RuleDescriptor(
            "ICL",
            CALL_STRINGS,
            SEVERITY_ERROR,
            ("image_type",),
            "too few convolution layers for the image type",
        ),
        RuleDescriptor(
            "IFL",
            CALL_STRINGS,
            SEVERITY_WARNING,
            ("image_type",),
            "too many dense layers in a convolutional model",
        ),
        RuleDescriptor(
            "IDN",
            PARAMETER_SENSITIVE,
            SEVERITY_ERROR,
            ("any",),
            "input values not normalized into [0,1] or [-1,1]",
        ),
        RuleDescriptor(
            "LLM",
            PARAMETER_SENSITIVE,
            SEVERITY_ERROR,
            ("number_of_classes", "problem_type"),
            "output activation or loss mismatched with the problem type",
        ),
        RuleDescriptor(
            "LOB",
            PARAMETER_SENSITIVE,
            SEVERITY_ERROR,
            ("any",),
            "learning rate outside the stable range",
        ),
        RuleDescriptor(
            "IBS",
            PARAMETER_SENSITIVE,
            SEVERITY_WARNING,
            ("training_set_size",),
            "batch size outside the recommended range",
        ),
    )
}

RULE_IDS = tuple(RULES)

_INPUT_LABELS = {
    "color_images": "color images",
    "grayscale_images": "grayscale images",
    "tabular": "tabular data",
}
_PROBLEM_LABELS = {
    "binary_classification": "binary classification",
    "multiclass_classification": "multiclass classification",
    "multilabel_classification": "multilabel classification",
    "regression": "regression",
}
_OUTPUT_ACTIVATIONS = {
    "binary_classification": "sigmoid",
    "multiclass_classification": "softmax",
    "multilabel_classification": "sigmoid",
}


def _kind_label(kind: str) -> str:
    return "convolution" if kind in CONV_KINDS else kind


def _located(layer: LayerSpec, rule_id: str, severity: str, message: str, fix: str) -> Finding:
    return Finding(
        rule_id=rule_id,
        severity=severity,
        message=message,
        fix_suggestion=fix,
        layer_index=layer.index,
        source_location=layer.source_location,
    )


def rule_cnl(
    anchor: LayerSpec,
    activation_count: int,
    problem_type: str,
    is_output: bool,
    severity: str,
) -> list[Finding]:
    """Each dense/conv layer needs exactly one activation function."""
    label = _kind_label(anchor.kind)
    if activation_count == 0:
        if is_output and problem_type == "regression":
            # a linear output is the correct choice for regression
            return []
        if is_output:
            wanted = _OUTPUT_ACTIVATIONS.get(problem_type, "softmax")
            return [
                _located(
                    anchor,
                    "CNL",
                    severity,
                    "Missing activation function on the output layer",
                    f"Add last layer activation function → Use {wanted}",
                )
            ]
        return [
            _located(
                anchor,
                "CNL",
                severity,
                f"Missing activation function for this {label} layer",
                "Add activation function → Use a non-saturating activation such as relu",
            )
        ]
    if activation_count > 1:
        return [
            _located(
                anchor,
                "CNL",
                severity,
                f"{activation_count} activation functions apply to this {label} layer",
                "Remove redundant activation → Keep one activation per layer",
            )
        ]
    return []


def rule_inf(layer: LayerSpec, input_type: str, severity: str) -> list[Finding]:
    """Convolution filter counts should fit the input type's range."""
    low, high = FILTER_BOUNDS[input_type]
    label = _INPUT_LABELS[input_type]
    if layer.filters < low:
        return [
            _located(
                layer,
                "INF",
                severity,
                f"Convolution layer uses {layer.filters} filters, fewer than "
                f"the recommended minimum of {low} for {label}",
                "Increase convolution layer filters while going deeper → "
                f"Use between {low} and {high} filters",
            )
        ]
    if layer.filters > high:
        return [
            _located(
                layer,
                "INF",
                severity,
                f"Convolution layer uses {layer.filters} filters, more than "
                f"the recommended maximum of {high} for {label}",
                f"Reduce convolution layer filters → Use between {low} and {high} filters",
            )
        ]
    return []


def rule_inn(
    layer: LayerSpec,
    input_size: Optional[int],
    previous_hidden_units: Optional[int],
    has_conv_layers: bool,
    severity: str,
) -> list[Finding]:
    """Hidden dense layers must not out-size their input nor widen in CNNs."""
    findings = []
    if input_size is not None and layer.units > input_size:
        findings.append(
            _located(
                layer,
                "INN",
                severity,
                f"Dense layer has {layer.units} units but receives an input of size {input_size}",
                f"Reduce units in dense layer → Use at most {input_size} units",
            )
        )
    if (
        has_conv_layers
        and previous_hidden_units is not None
        and layer.units > previous_hidden_units
    ):
        findings.append(
            _located(
                layer,
                "INN",
                severity,
                f"Dense layer widens from {previous_hidden_units} to {layer.units} "
                "units toward the output",
                "Reduce units in dense layer → Keep dense layer widths "
                "non-increasing toward the output",
            )
        )
    return findings


def rule_ids(layer: LayerSpec, run_length: int, severity: str) -> list[Finding]:
    """A pooling layer should appear within every run of 4 convolutions."""
    if run_length <= MAX_CONV_RUN:
        return []
    return [
        _located(
            layer,
            "IDS",
            severity,
            f"More than {MAX_CONV_RUN} consecutive convolution layers without a pooling layer",
            "Add pooling layer → Insert a pooling layer after at most "
            f"{MAX_CONV_RUN} consecutive convolution layers",
        )
    ]


def rule_mrd(
    anchor: LayerSpec,
    activation_count: int,
    dropout_count: int,
    severity: str,
) -> list[Finding]:
    """One dropout should follow each dense/conv layer's activation."""
    label = _kind_label(anchor.kind)
    if dropout_count > 1:
        return [
            _located(
                anchor,
                "MRD",
                severity,
                f"{dropout_count} dropout layers apply to this {label} layer",
                "Remove redundant dropout → Keep a single dropout after this layer",
            )
        ]
    if activation_count > 0 and dropout_count == 0:
        return [
            _located(
                anchor,
                "MRD",
                severity,
                f"No dropout follows the activation of this {label} layer",
                "Add dropout layers after hidden layers → Apply dropout once "
                "after this layer's activation",
            )
        ]
    return []


def rule_mnl(anchor: LayerSpec, next_kind: Optional[str], severity: str) -> list[Finding]:
    """Batch normalization belongs between a dense/conv layer and its activation."""
    label = _kind_label(anchor.kind)
    if anchor.inline_activation is None and next_kind == "batch_normalization":
        return []
    return [
        _located(
            anchor,
            "MNL",
            severity,
            f"No batch normalization between this {label} layer and its activation",
            "Add Batch Normalization → Insert batch normalization after this "
            "layer, before its activation",
        )
    ]


def rule_icl(conv2d_count: int, input_type: str, severity: str) -> list[Finding]:
    """Image models need a minimum number of convolution layers."""
    minimum = MIN_CONV_LAYERS[input_type]
    if conv2d_count >= minimum:
        return []
    label = _INPUT_LABELS[input_type]
    noun = "layer" if conv2d_count == 1 else "layers"
    return [
        Finding(
            rule_id="ICL",
            severity=severity,
            message=f"Model uses {conv2d_count} conv2d {noun}; at least "
            f"{minimum} are recommended for {label}",
            fix_suggestion="Increase network depth → Add convolution layers "
            f"(at least {minimum} for {label})",
        )
    ]


def rule_ifl(dense_count: int, severity: str) -> list[Finding]:
    """Convolutional models should keep at most 3 dense layers."""
    if dense_count <= MAX_DENSE_LAYERS:
        return []
    return [
        Finding(
            rule_id="IFL",
            severity=severity,
            message=f"Model uses {dense_count} dense layers, more than the "
            f"recommended maximum of {MAX_DENSE_LAYERS}",
            fix_suggestion="Reduce the number of fully connected layers → "
            f"Use at most {MAX_DENSE_LAYERS} dense layers",
        )
    ]


def rule_idn(value_range: tuple[float, float], severity: str) -> list[Finding]:
    """Input values should already be scaled into [0,1] or [-1,1]."""
    low, high = value_range
    for accepted_low, accepted_high in ACCEPTED_VALUE_RANGES:
        if low >= accepted_low and high <= accepted_high:
            return []
    return [
        Finding(
            rule_id="IDN",
            severity=severity,
            message=f"Input values span [{low}, {high}], outside [0,1] and [-1,1]",
            fix_suggestion="Normalize the data → Scale input values into [0,1] or [-1,1]",
        )
    ]


def rule_llm(
    problem_type: str,
    output_layer: Optional[LayerSpec],
    effective_activation: Optional[str],
    loss: Optional[str],
    strict: bool,
    severity: str,
) -> list[Finding]:
    """Output activation and loss must both match the problem type.

    Pass ``None`` for inputs that are unavailable; the corresponding
    component is simply not checked.  Multilabel problems have no defined
    mapping and are never checked here.
    """
    if problem_type == "multilabel_classification":
        return []
    problem_label = _PROBLEM_LABELS[problem_type]
    findings = []

    if output_layer is not None and effective_activation is not None:
        if problem_type == "regression":
            if effective_activation != "linear":
                if effective_activation == "softmax":
                    fix = "Remove last softmax activation layer"
                else:
                    fix = "Remove last layer activation → Use a linear output for regression"
                findings.append(
                    _located(
                        output_layer,
                        "LLM",
                        severity,
                        f"Output layer activation '{effective_activation}' "
                        f"does not match {problem_label}",
                        fix,
                    )
                )
        else:
            wanted = _OUTPUT_ACTIVATIONS[problem_type]
            if effective_activation != wanted:
                findings.append(
                    _located(
                        output_layer,
                        "LLM",
                        severity,
                        f"Output layer activation '{effective_activation}' "
                        f"does not match {problem_label}",
                        f"Change last layer activation function → Use {wanted}",
                    )
                )

    if loss is not None:
        if problem_type == "binary_classification":
            accepted, suggestion = {"binary_crossentropy"}, "binary_crossentropy"
        elif problem_type == "multiclass_classification":
            accepted = {"categorical_crossentropy"}
            if not strict:
                accepted.add("sparse_categorical_crossentropy")
            suggestion = "categorical_crossentropy"
        else:
            accepted, suggestion = {"mse", "mae"}, "mse or mae"
        if loss not in accepted:
            findings.append(
                Finding(
                    rule_id="LLM",
                    severity=severity,
                    message=f"Loss function '{loss}' does not match {problem_label}",
                    fix_suggestion=f"Change loss function → Use {suggestion}",
                )
            )
    return findings


def rule_lob(learning_rate: float, severity: str) -> list[Finding]:
    """Learning rate should sit within [0.0001, 0.01]."""
    low, high = LEARNING_RATE_BOUNDS
    if learning_rate > high:
        return [
            Finding(
                rule_id="LOB",
                severity=severity,
                message=f"Learning rate {learning_rate} is above {high}",
                fix_suggestion=f"Reduce the learning rate → Use a value between {low} and {high}",
            )
        ]
    if learning_rate < low:
        return [
            Finding(
                rule_id="LOB",
                severity=severity,
                message=f"Learning rate {learning_rate} is below {low}",
                fix_suggestion=f"Increase the learning rate → Use a value between {low} and {high}",
            )
        ]
    return []


def rule_ibs(batch_size: int, severity: str) -> list[Finding]:
    """Batch size should sit within [32, 256]."""
    low, high = BATCH_SIZE_BOUNDS
    if batch_size < low:
        return [
            Finding(
                rule_id="IBS",
                severity=severity,
                message=f"Batch size {batch_size} is below {low}",
                fix_suggestion=f"Increase the batch size → Start with {low} "
                f"and double it up to {high} as needed",
            )
        ]
    if batch_size > high:
        return [
            Finding(
                rule_id="IBS",
                severity=severity,
                message=f"Batch size {batch_size} is above {high}",
                fix_suggestion=f"Reduce the batch size → Use between {low} and {high}",
            )
        ]
    return []
