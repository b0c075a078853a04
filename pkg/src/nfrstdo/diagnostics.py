"""Shared diagnostic types: severities, source locations, and coded findings.

Rule codes follow two catalogs: ``R-###`` for instance-document rules and
``L-###`` for ontological-architecture layering rules.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class SourceLocation:
    """1-based line/column position in an input file."""

    line: int
    column: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One validation finding, identified by a stable rule code."""

    code: str
    severity: Severity
    message: str
    subject: str
    location: SourceLocation | None = None

    def sort_key(self) -> tuple[str, str, str]:
        return (self.code, self.subject, self.message)


def sort_diagnostics(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    return sorted(diagnostics, key=Diagnostic.sort_key)


def render_text(diagnostic: Diagnostic, path: str, color: bool = False) -> str:
    """Render as ``<file>:<line>:<col>: <severity> <code>: <message> [<subject>]``."""
    severity = diagnostic.severity.value
    if color:
        tint = "\x1b[31m" if diagnostic.severity is Severity.ERROR else "\x1b[33m"
        severity = f"{tint}{severity}\x1b[0m"
    prefix = path
    if diagnostic.location is not None:
        prefix = f"{path}:{diagnostic.location.line}:{diagnostic.location.column}"
    return f"{prefix}: {severity} {diagnostic.code}: {diagnostic.message} [{diagnostic.subject}]"


def render_json(diagnostics: list[Diagnostic], path: str) -> str:
    """Render a sorted diagnostic array as one compact JSON document."""
    records = []
    for d in sort_diagnostics(diagnostics):
        records.append(
            {
                "code": d.code,
                "column": d.location.column if d.location else None,
                "file": path,
                "line": d.location.line if d.location else None,
                "message": d.message,
                "severity": d.severity.value,
                "subject": d.subject,
            }
        )
    return json.dumps(records, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
