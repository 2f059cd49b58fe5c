"""Shared fixtures: live models and the linter package's spec fixtures."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

# The hand-written spec documents committed with the linter package.
# Read as data files; the extractor never imports the linter's code.
LINTER_FIXTURES = Path(__file__).resolve().parents[2] / "tests" / "fixtures"


def load_linter_fixture(name: str) -> dict:
    return json.loads((LINTER_FIXTURES / name).read_text(encoding="utf-8"))


def unit_sample(shape: tuple[int, ...]) -> np.ndarray:
    """A batch with observed min 0.0 and max 1.0."""
    sample = np.linspace(0.0, 1.0, num=int(np.prod(shape)))
    return sample.reshape(shape)


@pytest.fixture(scope="session")
def keras():
    from tensorflow import keras as keras_module

    return keras_module


@pytest.fixture(scope="session")
def buggy_model(keras):
    from cnn_program import build_model

    return build_model()


@pytest.fixture(scope="session")
def image_sample():
    from cnn_program import build_sample

    return build_sample()


@pytest.fixture(scope="session")
def clean_model(keras):
    """Live twin of the linter's clean-model fixture, compiled for training."""
    layers = [keras.Input(shape=(32, 32, 3))]
    for filters, pool in ((32, False), (64, True), (128, True)):
        layers += [
            keras.layers.Conv2D(filters, (3, 3), padding="same"),
            keras.layers.BatchNormalization(),
            keras.layers.Activation("relu"),
            keras.layers.Dropout(0.25),
        ]
        if pool:
            layers.append(keras.layers.MaxPooling2D((2, 2)))
    layers += [
        keras.layers.Flatten(),
        keras.layers.Dense(128),
        keras.layers.BatchNormalization(),
        keras.layers.Activation("relu"),
        keras.layers.Dropout(0.5),
        keras.layers.Dense(10),
        keras.layers.BatchNormalization(),
        keras.layers.Activation("softmax"),
        keras.layers.Dropout(0.2),
    ]
    model = keras.Sequential(layers)
    model.compile(
        optimizer=keras.optimizers.Adam(learning_rate=0.001),
        loss="categorical_crossentropy",
    )
    return model
