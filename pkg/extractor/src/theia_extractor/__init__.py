"""Model introspection for the theia-lint document format.

``extract`` reads a live Keras or PyTorch model plus training arguments
and a data sample and emits the linter's neutral spec document.
``guard_training`` runs the linter on that document and refuses to let
training start when it reports errors.
"""

from .errors import (
    ConfigurationError,
    ExtractionError,
    TrainingAborted,
    UnsupportedFramework,
    UnsupportedTopology,
)
from .extract import FRAMEWORK_DEFAULTS, detect_framework, extract
from .guard import guard_training

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "ExtractionError",
    "FRAMEWORK_DEFAULTS",
    "TrainingAborted",
    "UnsupportedFramework",
    "UnsupportedTopology",
    "detect_framework",
    "extract",
    "guard_training",
    "__version__",
]
