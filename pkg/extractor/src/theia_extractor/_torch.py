"""PyTorch ``nn.Sequential`` introspection via module attributes."""

from __future__ import annotations

from typing import Optional

from .errors import UnsupportedTopology

_KIND_BY_CLASS = {
    "Conv1d": "conv1d",
    "Conv2d": "conv2d",
    "Linear": "dense",
    "MaxPool1d": "maxpooling1d",
    "MaxPool2d": "maxpooling2d",
    "AvgPool1d": "averagepooling1d",
    "AvgPool2d": "averagepooling2d",
    "BatchNorm1d": "batch_normalization",
    "BatchNorm2d": "batch_normalization",
    "BatchNorm3d": "batch_normalization",
    "Dropout": "dropout",
    "Dropout1d": "dropout",
    "Dropout2d": "dropout",
    "Flatten": "flatten",
}
_ACTIVATION_BY_CLASS = {
    "ReLU": "relu",
    "LeakyReLU": "leaky_relu",
    "Sigmoid": "sigmoid",
    "Softmax": "softmax",
    "Tanh": "tanh",
    "ELU": "elu",
    "GELU": "gelu",
    "Identity": "linear",
}
_RECURRENT = {"RNN", "LSTM", "GRU", "RNNCell", "LSTMCell", "GRUCell"}


def _dims(value, rank: int) -> list[int]:
    if isinstance(value, int):
        return [value] * rank
    return [int(v) for v in value]


def _padding(value, kernel: list[int]) -> Optional[str]:
    """Translate torch padding into the schema's same/valid vocabulary."""
    if isinstance(value, str):
        return value
    amounts = _dims(value, len(kernel))
    if all(amount == 0 for amount in amounts):
        return "valid"
    if all(2 * amount == window - 1 for amount, window in zip(amounts, kernel)):
        return "same"
    return None  # no schema spelling for asymmetric padding; omit


def layer_entries(model) -> list[dict]:
    """Map the modules of an ``nn.Sequential`` to spec layer dicts."""
    import torch.nn as nn

    if not isinstance(model, nn.Sequential):
        raise UnsupportedTopology("only nn.Sequential models can be extracted")
    entries = []
    for module in model:
        class_name = type(module).__name__
        if class_name in _RECURRENT:
            raise UnsupportedTopology(f"unsupported recurrent layer {class_name}")
        if class_name in _ACTIVATION_BY_CLASS:
            entries.append(
                {"kind": "activation", "activation_name": _ACTIVATION_BY_CLASS[class_name]}
            )
            continue
        kind = _KIND_BY_CLASS.get(class_name)
        entry: dict = {"kind": kind or class_name}
        if kind in ("conv1d", "conv2d"):
            rank = 1 if kind == "conv1d" else 2
            entry["filters"] = int(module.out_channels)
            entry["kernel_size"] = _dims(module.kernel_size, rank)
            entry["strides"] = _dims(module.stride, rank)
            padding = _padding(module.padding, entry["kernel_size"])
            if padding is not None:
                entry["padding"] = padding
        elif kind == "dense":
            entry["units"] = int(module.out_features)
        elif kind in ("maxpooling1d", "maxpooling2d", "averagepooling1d", "averagepooling2d"):
            rank = 1 if kind.endswith("1d") else 2
            entry["pool_size"] = _dims(module.kernel_size, rank)
            entry["strides"] = _dims(module.stride or module.kernel_size, rank)
        elif kind == "dropout":
            entry["rate"] = float(module.p)
        entries.append(entry)
    return entries
