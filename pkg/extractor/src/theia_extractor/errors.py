"""Errors raised while extracting a model or guarding a training run."""


class ExtractionError(Exception):
    """Base class for extractor failures."""


class UnsupportedFramework(ExtractionError):
    """The model object comes from a framework we cannot introspect."""


class UnsupportedTopology(ExtractionError):
    """The model is not a plain sequential stack of supported layers."""


class ConfigurationError(ExtractionError):
    """The linter is unavailable or rejected the extracted document."""


class TrainingAborted(ExtractionError):
    """The linter found errors; training must not start."""

    def __init__(self, message: str, report: dict) -> None:
        super().__init__(message)
        self.report = report
