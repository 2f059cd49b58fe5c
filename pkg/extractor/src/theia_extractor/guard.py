"""Pre-training guard: lint the extracted document, abort on errors."""

from __future__ import annotations

import json
import subprocess
import tempfile
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence

from .errors import ConfigurationError, TrainingAborted
from .extract import extract


def guard_training(
    model,
    training_args: Optional[Mapping[str, Any]] = None,
    data_sample=None,
    problem_type: Optional[str] = None,
    num_classes: Optional[int] = None,
    input_type: Optional[str] = None,
    linter: str = "theia-lint",
    extra_args: Sequence[str] = (),
) -> dict:
    """Extract ``model``, run the linter on it, and gate the training run.

    Returns the parsed JSON report when the linter passes (exit 0).
    Raises ``TrainingAborted`` carrying the report when it finds failing
    findings (exit 1), and ``ConfigurationError`` when the linter is
    missing or rejects the document (exit 2). Fails closed: training
    never starts unless the linter passed.
    """
    document = extract(
        model,
        training_args,
        data_sample,
        problem_type,
        num_classes=num_classes,
        input_type=input_type,
    )
    with tempfile.TemporaryDirectory(prefix="theia-extract-") as workdir:
        spec_path = Path(workdir) / "model_spec.json"
        spec_path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        command = [linter, str(spec_path), "--format", "json", *extra_args]
        try:
            process = subprocess.run(command, capture_output=True, text=True)
        except FileNotFoundError as error:
            raise ConfigurationError(
                f"linter executable {linter!r} not found; training not started"
            ) from error
    if process.returncode == 0:
        return _parse_report(process.stdout, linter)
    if process.returncode == 1:
        report = _parse_report(process.stdout, linter)
        raise TrainingAborted(f"training aborted: verdict {report['verdict']}", report)
    raise ConfigurationError(
        f"linter rejected the extracted document: {process.stderr.strip()}"
    )


def _parse_report(stdout: str, linter: str) -> dict:
    try:
        return json.loads(stdout)
    except json.JSONDecodeError as error:
        raise ConfigurationError(f"{linter} did not emit a JSON report") from error
