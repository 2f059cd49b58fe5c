"""Static linter for deep-learning model configurations.

Checks a model spec document (layers, dataset profile, learner settings)
against structural rules before any training starts, and localizes each
finding with a fix suggestion.
"""

from .engine import (
    AnalysisConfig,
    CallStringState,
    PASS_ONE_RULES,
    PASS_TWO_RULES,
    analyze,
    run_call_strings_pass,
    run_parameter_pass,
)
from .model_spec import (
    DatasetProfile,
    InvariantError,
    LayerSpec,
    LearnerSpec,
    ModelSpec,
    ModelSpecError,
    SchemaError,
    SourceLocation,
    canonicalize_activation,
    canonicalize_layer_kind,
    canonicalize_loss,
    infer_shapes,
    parse_model_spec,
    serialize_model_spec,
    spec_fingerprint,
    to_document,
)
from .report import (
    Finding,
    Report,
    ReportParseError,
    SkipNote,
    exit_code,
    parse_report,
    render_machine,
    render_text,
)
from .rules import RULES, RULE_IDS, RuleDescriptor

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "CallStringState",
    "DatasetProfile",
    "Finding",
    "InvariantError",
    "LayerSpec",
    "LearnerSpec",
    "ModelSpec",
    "ModelSpecError",
    "PASS_ONE_RULES",
    "PASS_TWO_RULES",
    "Report",
    "ReportParseError",
    "RULES",
    "RULE_IDS",
    "RuleDescriptor",
    "SchemaError",
    "SkipNote",
    "SourceLocation",
    "analyze",
    "canonicalize_activation",
    "canonicalize_layer_kind",
    "canonicalize_loss",
    "exit_code",
    "infer_shapes",
    "parse_model_spec",
    "parse_report",
    "render_machine",
    "render_text",
    "run_call_strings_pass",
    "run_parameter_pass",
    "serialize_model_spec",
    "spec_fingerprint",
    "to_document",
    "__version__",
]
