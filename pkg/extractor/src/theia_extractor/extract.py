"""Turn a live Keras or PyTorch model into a neutral spec document.

The document layout is the input contract of the ``theia-lint`` linter:
dataset characteristics, layers in forward order, learner configuration.
Nothing here imports the linter; the two packages meet only at the JSON
schema and the linter's command line.
"""

from __future__ import annotations

from typing import Any, Mapping, Optional

import numpy as np

from .errors import UnsupportedFramework

# Fallbacks applied when a value is declared neither in training_args nor
# on the model. Sources: keras Model.fit docs ("If unspecified,
# `batch_size` will default to 32"); torch DataLoader signature
# (batch_size=1). Checked against the installed frameworks by the tests.
FRAMEWORK_DEFAULTS = {
    "keras": {"batch_size": 32},
    "torch": {"batch_size": 1},
}

_LEARNER_KEYS = ("loss", "optimizer", "learning_rate", "batch_size", "epochs")


def detect_framework(model) -> str:
    """Classify ``model`` as keras or torch by its class's module tree."""
    for klass in type(model).__mro__:
        root = klass.__module__.split(".")[0]
        if root in ("keras", "tensorflow", "tf_keras"):
            return "keras"
        if root == "torch":
            return "torch"
    raise UnsupportedFramework(f"cannot introspect {type(model).__name__} objects")


def _sample_array(data_sample) -> np.ndarray:
    if data_sample is None:
        raise ValueError("data_sample is required")
    if hasattr(data_sample, "detach"):  # torch tensor
        data_sample = data_sample.detach().cpu().numpy()
    array = np.asarray(data_sample, dtype=float)
    if array.size == 0:
        raise ValueError("data_sample is empty")
    if array.ndim < 2:
        raise ValueError("data_sample must carry a leading batch axis")
    return array


def _input_shape(array: np.ndarray, framework: str) -> list[int]:
    """Per-example shape, channels-last, with an explicit channel axis."""
    shape = [int(dim) for dim in array.shape[1:]]
    if len(shape) == 1:
        return shape
    if len(shape) == 2:  # images without a channel axis
        return shape + [1]
    if len(shape) == 3:
        if framework == "torch":  # (C, H, W) to (H, W, C)
            return [shape[1], shape[2], shape[0]]
        return shape
    raise ValueError(f"unsupported sample rank {array.ndim}")


def _input_type(shape: list[int], supplied: Optional[str]) -> str:
    if supplied is not None:
        return supplied
    if len(shape) == 1:
        return "tabular"
    return "color_images" if shape[-1] == 3 else "grayscale_images"


def _loss_name(loss) -> str:
    if isinstance(loss, str):
        return loss
    name = getattr(loss, "name", None)
    if isinstance(name, str):
        return name
    return type(loss).__name__


def _optimizer_fields(optimizer) -> dict:
    fields: dict[str, Any] = {"optimizer": type(optimizer).__name__.lower()}
    groups = getattr(optimizer, "param_groups", None)
    if groups:  # torch style
        fields["learning_rate"] = float(groups[0]["lr"])
        return fields
    rate = getattr(optimizer, "learning_rate", None)  # keras style
    if rate is not None:
        fields["learning_rate"] = float(rate)
    return fields


def _resolve_learner(model, training_args: Mapping[str, Any], framework: str) -> dict:
    learner: dict[str, Any] = {}
    for key in _LEARNER_KEYS:
        value = training_args.get(key)
        if value is not None:
            learner[key] = value
    if "loss" in learner:
        learner["loss"] = _loss_name(learner["loss"])
    if "optimizer" in learner and not isinstance(learner["optimizer"], str):
        fields = _optimizer_fields(learner.pop("optimizer"))
        for key, value in fields.items():
            learner.setdefault(key, value)
    if framework == "keras":
        compiled_loss = getattr(model, "loss", None)
        if compiled_loss is not None and "loss" not in learner:
            learner["loss"] = _loss_name(compiled_loss)
        compiled_optimizer = getattr(model, "optimizer", None)
        if compiled_optimizer is not None:
            for key, value in _optimizer_fields(compiled_optimizer).items():
                learner.setdefault(key, value)
    if "learning_rate" in learner:
        learner["learning_rate"] = float(learner["learning_rate"])
    learner.setdefault("batch_size", FRAMEWORK_DEFAULTS[framework]["batch_size"])
    return learner


def extract(
    model,
    training_args: Optional[Mapping[str, Any]] = None,
    data_sample=None,
    problem_type: Optional[str] = None,
    num_classes: Optional[int] = None,
    input_type: Optional[str] = None,
) -> dict:
    """Introspect ``model`` and return a spec document as a plain dict.

    ``training_args`` may carry loss/optimizer/learning_rate/batch_size/
    epochs as strings, numbers, or live framework objects; anything not
    supplied there is read off the model (a compiled Keras model knows
    its loss and optimizer) or filled from the documented framework
    default. ``data_sample`` is an array-like batch of training inputs;
    only its shape and observed min/max matter. ``problem_type`` and,
    for classification, ``num_classes`` come from the caller.
    """
    if problem_type is None:
        raise ValueError("problem_type is required")
    framework = detect_framework(model)
    if framework == "keras":
        from . import _keras as backend
    else:
        from . import _torch as backend
    entries = backend.layer_entries(model)

    array = _sample_array(data_sample)
    shape = _input_shape(array, framework)
    resolved_type = _input_type(shape, input_type)
    dataset: dict[str, Any] = {
        "input_type": resolved_type,
        "channels": 1 if resolved_type == "tabular" else shape[-1],
        "problem_type": problem_type,
        "input_shape": shape,
        "value_range": [float(array.min()), float(array.max())],
    }
    if num_classes is not None:
        dataset["num_classes"] = int(num_classes)

    return {
        "version": 1,
        "dataset": dataset,
        "layers": [{"index": i, **entry} for i, entry in enumerate(entries)],
        "learner": _resolve_learner(model, dict(training_args or {}), framework),
        "metadata": {"framework": framework},
    }
