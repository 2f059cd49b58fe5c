"""Findings, reports, and their text/JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .model_spec import SourceLocation

REPORT_VERSION = 1

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"
SEVERITIES = (SEVERITY_ERROR, SEVERITY_WARNING)

VERDICT_CLEAN = "clean"
VERDICT_WARNINGS = "warnings"
VERDICT_ERRORS = "errors"


class ReportParseError(ValueError):
    """Raised when text is not a valid report document."""


@dataclass(frozen=True)
class Finding:
    """One localized defect with its suggested fix."""

    rule_id: str
    severity: str
    message: str
    fix_suggestion: str
    layer_index: Optional[int] = None
    source_location: Optional[SourceLocation] = None


@dataclass(frozen=True)
class SkipNote:
    """Record that a rule produced no verdict because an input was absent."""

    rule_id: str
    reason: str


@dataclass(frozen=True)
class Report:
    """Outcome of analyzing one model spec."""

    findings: tuple[Finding, ...]
    skip_notes: tuple[SkipNote, ...]
    verdict: str
    spec_fingerprint: str

    def count(self, severity: str) -> int:
        return sum(1 for finding in self.findings if finding.severity == severity)


def verdict_for(findings: tuple[Finding, ...]) -> str:
    if any(f.severity == SEVERITY_ERROR for f in findings):
        return VERDICT_ERRORS
    if findings:
        return VERDICT_WARNINGS
    return VERDICT_CLEAN


def _plural(count: int, noun: str) -> str:
    return f"{count} {noun}" if count == 1 else f"{count} {noun}s"


def render_text(report: Report) -> str:
    """Human-readable report: one line per finding, then skips and verdict."""
    if not report.findings and not report.skip_notes:
        return "verdict: clean (0 findings)\n"
    lines = []
    for finding in report.findings:
        head = f"[{finding.severity.upper()}] {finding.rule_id}"
        if finding.layer_index is not None:
            head += f" layer {finding.layer_index}"
        if finding.source_location is not None:
            head += f" ({finding.source_location.file}:{finding.source_location.line})"
        lines.append(f"{head}: {finding.message} — fix: {finding.fix_suggestion}")
    for note in report.skip_notes:
        lines.append(f"skipped {note.rule_id}: {note.reason}")
    if report.verdict == VERDICT_CLEAN:
        lines.append("verdict: clean (0 findings)")
    else:
        errors = _plural(report.count(SEVERITY_ERROR), "error")
        warnings = _plural(report.count(SEVERITY_WARNING), "warning")
        lines.append(f"verdict: {report.verdict} ({errors}, {warnings})")
    return "\n".join(lines) + "\n"


def _finding_document(finding: Finding) -> dict:
    location = None
    if finding.source_location is not None:
        location = {
            "file": finding.source_location.file,
            "line": finding.source_location.line,
        }
    return {
        "rule_id": finding.rule_id,
        "severity": finding.severity,
        "layer_index": finding.layer_index,
        "source_location": location,
        "message": finding.message,
        "fix_suggestion": finding.fix_suggestion,
    }


def render_machine(report: Report) -> str:
    """Stable JSON document for the report; lossless under parse_report."""
    document = {
        "version": REPORT_VERSION,
        "verdict": report.verdict,
        "findings": [_finding_document(f) for f in report.findings],
        "skip_notes": [
            {"rule_id": note.rule_id, "reason": note.reason}
            for note in report.skip_notes
        ],
        "spec_fingerprint": report.spec_fingerprint,
    }
    return json.dumps(document, indent=2) + "\n"


def _parse_finding(raw: dict, position: int) -> Finding:
    try:
        location = raw.get("source_location")
        if location is not None:
            location = SourceLocation(file=location["file"], line=location["line"])
        severity = raw["severity"]
        if severity not in SEVERITIES:
            raise ReportParseError(f"findings[{position}]: bad severity {severity!r}")
        return Finding(
            rule_id=raw["rule_id"],
            severity=severity,
            message=raw["message"],
            fix_suggestion=raw["fix_suggestion"],
            layer_index=raw.get("layer_index"),
            source_location=location,
        )
    except (KeyError, TypeError) as exc:
        raise ReportParseError(f"findings[{position}]: {exc}") from exc


def parse_report(text: str) -> Report:
    """Parse a document produced by render_machine back into a Report."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportParseError(f"not valid JSON: {exc.msg}") from exc
    if not isinstance(document, dict):
        raise ReportParseError("report must be an object")
    if document.get("version") != REPORT_VERSION:
        raise ReportParseError(f"unsupported version {document.get('version')!r}")
    try:
        findings = tuple(
            _parse_finding(raw, i) for i, raw in enumerate(document["findings"])
        )
        skip_notes = tuple(
            SkipNote(rule_id=raw["rule_id"], reason=raw["reason"])
            for raw in document["skip_notes"]
        )
        report = Report(
            findings=findings,
            skip_notes=skip_notes,
            verdict=document["verdict"],
            spec_fingerprint=document["spec_fingerprint"],
        )
    except (KeyError, TypeError) as exc:
        raise ReportParseError(str(exc)) from exc
    if report.verdict != verdict_for(findings):
        raise ReportParseError(f"verdict {report.verdict!r} does not match findings")
    return report


def exit_code(report: Report, fail_on: str = SEVERITY_ERROR) -> int:
    """Process exit code the CLI reports: 0 pass, 1 findings at/above fail_on."""
    if fail_on == SEVERITY_WARNING:
        return 1 if report.findings else 0
    return 1 if report.count(SEVERITY_ERROR) else 0
