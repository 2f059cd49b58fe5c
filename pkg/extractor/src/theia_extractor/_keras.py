"""Keras Sequential introspection via each layer's ``get_config``."""

from __future__ import annotations

from typing import Optional

from .errors import UnsupportedTopology

_KIND_BY_CLASS = {
    "Conv1D": "conv1d",
    "Conv2D": "conv2d",
    "Dense": "dense",
    "Activation": "activation",
    "MaxPooling1D": "maxpooling1d",
    "MaxPooling2D": "maxpooling2d",
    "AveragePooling1D": "averagepooling1d",
    "AveragePooling2D": "averagepooling2d",
    "BatchNormalization": "batch_normalization",
    "Dropout": "dropout",
    "Flatten": "flatten",
}
_POOLING_KINDS = ("maxpooling1d", "maxpooling2d", "averagepooling1d", "averagepooling2d")
_RECURRENT = {
    "RNN",
    "SimpleRNN",
    "LSTM",
    "GRU",
    "Bidirectional",
    "ConvLSTM1D",
    "ConvLSTM2D",
    "ConvLSTM3D",
    "TimeDistributed",
}


def _ints(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    return [int(v) for v in value]


def _inline_activation(config: dict) -> Optional[str]:
    name = config.get("activation")
    # keras reports 'linear' when no activation was given
    if isinstance(name, str) and name != "linear":
        return name
    return None


def layer_entries(model) -> list[dict]:
    """Map ``model.layers`` to spec layer dicts, in forward order."""
    if not any(klass.__name__ == "Sequential" for klass in type(model).__mro__):
        raise UnsupportedTopology("only Sequential models can be extracted")
    entries = []
    for layer in model.layers:
        class_name = type(layer).__name__
        if class_name in _RECURRENT:
            raise UnsupportedTopology(f"unsupported recurrent layer {class_name}")
        if class_name == "InputLayer":
            continue
        config = layer.get_config()
        kind = _KIND_BY_CLASS.get(class_name, class_name)
        entry: dict = {"kind": kind}
        if kind in ("conv1d", "conv2d"):
            entry["filters"] = int(config["filters"])
            entry["kernel_size"] = _ints(config["kernel_size"])
            entry["strides"] = _ints(config["strides"])
            entry["padding"] = config["padding"]
            inline = _inline_activation(config)
            if inline is not None:
                entry["inline_activation"] = inline
        elif kind == "dense":
            entry["units"] = int(config["units"])
            inline = _inline_activation(config)
            if inline is not None:
                entry["inline_activation"] = inline
        elif kind == "activation":
            entry["activation_name"] = str(config["activation"])
        elif kind in _POOLING_KINDS:
            entry["pool_size"] = _ints(config["pool_size"])
            entry["strides"] = _ints(config.get("strides") or config["pool_size"])
            entry["padding"] = config["padding"]
        elif kind == "dropout":
            entry["rate"] = float(config["rate"])
        entries.append(entry)
    return entries
