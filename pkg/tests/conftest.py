"""Shared builders for spec documents used across the test suite."""

from __future__ import annotations

import json
import random
from pathlib import Path

from theia_lint import (
    AnalysisConfig,
    Finding,
    ModelSpec,
    RULE_IDS,
    SkipNote,
    analyze,
    parse_model_spec,
)

FIXTURES = Path(__file__).parent / "fixtures"

COLOR_DATASET = {
    "input_type": "color_images",
    "channels": 3,
    "problem_type": "multiclass_classification",
    "num_classes": 10,
    "input_shape": [32, 32, 3],
    "value_range": [0.0, 1.0],
}
GRAY_DATASET = {
    "input_type": "grayscale_images",
    "channels": 1,
    "problem_type": "multiclass_classification",
    "num_classes": 10,
    "input_shape": [28, 28, 1],
    "value_range": [0.0, 1.0],
}
TABULAR_DATASET = {
    "input_type": "tabular",
    "channels": 1,
    "problem_type": "binary_classification",
    "num_classes": 2,
    "input_shape": [20],
    "value_range": [0.0, 1.0],
}


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_fixture(name: str) -> dict:
    return json.loads(fixture_path(name).read_text(encoding="utf-8"))


def document(layers: list[dict], dataset: dict | None = None, learner: dict | None = None) -> dict:
    indexed = [{"index": i, **layer} for i, layer in enumerate(layers)]
    return {
        "version": 1,
        "dataset": dict(dataset if dataset is not None else TABULAR_DATASET),
        "layers": indexed,
        "learner": dict(learner or {}),
        "metadata": {},
    }


def spec_of(layers: list[dict], dataset: dict | None = None, learner: dict | None = None) -> ModelSpec:
    return parse_model_spec(json.dumps(document(layers, dataset, learner)))


def conv2d(filters: int = 32, kernel: int = 3, **extra) -> dict:
    return {"kind": "conv2d", "filters": filters, "kernel_size": [kernel, kernel], **extra}


def conv1d(filters: int = 32, kernel: int = 3, **extra) -> dict:
    return {"kind": "conv1d", "filters": filters, "kernel_size": [kernel], **extra}


def dense(units: int, **extra) -> dict:
    return {"kind": "dense", "units": units, **extra}


def activation(name: str = "relu") -> dict:
    return {"kind": "activation", "activation_name": name}


def pooling(size: int = 2) -> dict:
    return {"kind": "maxpooling2d", "pool_size": [size, size]}


def dropout(rate: float = 0.5) -> dict:
    return {"kind": "dropout", "rate": rate}


def batch_norm() -> dict:
    return {"kind": "batch_normalization"}


def flatten() -> dict:
    return {"kind": "flatten"}


def only_rule(rule_id: str) -> AnalysisConfig:
    """Config that evaluates a single rule in isolation."""
    return AnalysisConfig(
        severity_overrides={other: "off" for other in RULE_IDS if other != rule_id}
    )


def rule_findings(spec: ModelSpec, rule_id: str) -> list[Finding]:
    return list(analyze(spec, only_rule(rule_id)).findings)


def rule_skips(spec: ModelSpec, rule_id: str) -> list[SkipNote]:
    return list(analyze(spec, only_rule(rule_id)).skip_notes)


_RANDOM_KINDS = (
    "conv2d",
    "conv2d",
    "conv1d",
    "dense",
    "dense",
    "activation",
    "dropout",
    "batch_normalization",
    "flatten",
    "maxpooling2d",
    "averagepooling2d",
    "other",
)
_RANDOM_LOSSES = (
    None,
    "binary_crossentropy",
    "categorical_crossentropy",
    "sparse_categorical_crossentropy",
    "mse",
    "mae",
    "hinge",
)
_RANDOM_RANGES = (None, [0.0, 1.0], [-1.0, 1.0], [0.0, 255.0], [-3.0, 7.0], [0.1, 0.9])


def random_document(rng: random.Random) -> dict:
    """One structurally valid but otherwise arbitrary spec document."""
    input_type = rng.choice(["color_images", "grayscale_images", "tabular"])
    channels = 3 if input_type == "color_images" else 1
    problem = rng.choice(
        [
            "binary_classification",
            "multiclass_classification",
            "multilabel_classification",
            "regression",
        ]
    )
    dataset: dict = {
        "input_type": input_type,
        "channels": channels,
        "problem_type": problem,
    }
    if problem != "regression":
        dataset["num_classes"] = rng.randint(2, 20)
    if rng.random() < 0.85:
        if input_type == "tabular":
            dataset["input_shape"] = [rng.randint(2, 128)]
        else:
            dataset["input_shape"] = [rng.randint(8, 64), rng.randint(8, 64), channels]
    value_range = rng.choice(_RANDOM_RANGES)
    if value_range is not None:
        dataset["value_range"] = value_range
    if rng.random() < 0.5:
        dataset["training_set_size"] = rng.randint(10, 100000)

    layers = []
    for position in range(rng.randint(1, 14)):
        kind = rng.choice(_RANDOM_KINDS)
        if kind in ("conv2d", "conv1d"):
            window = rng.choice([3, 5])
            entry = {
                "kind": kind,
                "filters": rng.randint(1, 600),
                "kernel_size": [window] if kind == "conv1d" else [window, window],
            }
            if rng.random() < 0.3:
                entry["padding"] = rng.choice(["same", "valid"])
            if rng.random() < 0.4:
                entry["inline_activation"] = rng.choice(["relu", "sigmoid", "linear", "tanh"])
        elif kind == "dense":
            entry = {"kind": "dense", "units": rng.randint(1, 600)}
            if rng.random() < 0.4:
                entry["inline_activation"] = rng.choice(["relu", "softmax", "linear", "sigmoid"])
        elif kind == "activation":
            entry = {
                "kind": "activation",
                "activation_name": rng.choice(["relu", "sigmoid", "softmax", "tanh", "linear", "elu"]),
            }
        elif kind == "dropout":
            entry = {"kind": "dropout", "rate": round(rng.random(), 3)}
        elif kind in ("maxpooling2d", "averagepooling2d"):
            entry = {"kind": kind}
            if rng.random() < 0.8:
                entry["pool_size"] = [2, 2]
        elif kind == "other":
            entry = {"kind": rng.choice(["CustomBlock", "Reshape", "GlobalAveragePooling2D"])}
        else:
            entry = {"kind": kind}
        entry["index"] = position
        layers.append(entry)

    learner: dict = {}
    loss = rng.choice(_RANDOM_LOSSES)
    if loss is not None:
        learner["loss"] = loss
    if rng.random() < 0.7:
        learner["optimizer"] = rng.choice(["adam", "sgd", "rmsprop"])
    if rng.random() < 0.7:
        learner["learning_rate"] = round(10 ** rng.uniform(-5, -0.5), 8)
    if rng.random() < 0.7:
        learner["batch_size"] = rng.randint(1, 512)
    if rng.random() < 0.5:
        learner["epochs"] = rng.randint(1, 100)

    return {
        "version": 1,
        "dataset": dataset,
        "layers": layers,
        "learner": learner,
        "metadata": {},
    }


def random_specs(count: int, seed: int = 20260814) -> list[ModelSpec]:
    rng = random.Random(seed)
    return [parse_model_spec(json.dumps(random_document(rng))) for _ in range(count)]
