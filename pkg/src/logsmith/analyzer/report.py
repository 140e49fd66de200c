"""Static-analysis report: structured form plus the textual rendering.

The textual layout is fixed and rendered byte-identically for identical
inputs: a header with the call count, one analysis section per log call
with its numbered paths and steps, and a trailing total line. User-method
steps reproduce the callee source inline; other steps render a one-line
kind description.
"""

from __future__ import annotations

from dataclasses import dataclass

from .paths import KIND_USER, PathEnumeration

UNDEFINED_TEMPLATE = "undefined template"

_KIND_TEXT = {
    "log-invocation": "log method invocation",
    "built-in": "built-in method",
    "unknown": "unknown method",
}


@dataclass(frozen=True)
class ReportEntry:
    line: int
    level: str
    initial_template: str
    enumeration: PathEnumeration


@dataclass(frozen=True)
class StaticReport:
    entries: tuple[ReportEntry, ...]

    @property
    def call_count(self) -> int:
        return len(self.entries)

    @property
    def total_paths(self) -> int:
        return sum(len(entry.enumeration.paths) for entry in self.entries)

    def to_dict(self) -> dict:
        return {
            "call_count": self.call_count,
            "total_paths": self.total_paths,
            "calls": [_entry_dict(entry) for entry in self.entries],
        }


def _entry_dict(entry: ReportEntry) -> dict:
    enum = entry.enumeration
    return {
        "line": entry.line,
        "level": entry.level,
        "initial_template": entry.initial_template,
        "flags": {
            "involves_conditional": enum.involves_conditional,
            "involves_external_call": enum.involves_external_call,
            "placeholder_mismatch": enum.placeholder_mismatch,
            "truncated": enum.truncated,
            "cycles": [list(cycle.chain) for cycle in enum.cycles],
        },
        "paths": [
            {
                "yielded": path.yielded.render(),
                "steps": [
                    {
                        "class": step.class_fqn,
                        "call_code": step.call_code,
                        "kind": step.callee_kind,
                        **({"source": step.callee_source}
                           if step.callee_source is not None else {}),
                    }
                    for step in path.steps
                ],
            }
            for path in enum.paths
        ],
    }


def build_report(enumerations: list[PathEnumeration]) -> StaticReport:
    entries = []
    for enum in enumerations:
        literal = enum.site.literal_format
        entries.append(ReportEntry(
            line=enum.site.line,
            level=enum.site.level,
            initial_template=literal if literal is not None else UNDEFINED_TEMPLATE,
            enumeration=enum,
        ))
    return StaticReport(entries=tuple(entries))


def render_report(report: StaticReport) -> str:
    lines = [f"Extracted {report.call_count} log calls", ""]
    for index, entry in enumerate(report.entries, 1):
        paths = entry.enumeration.paths
        lines.append(f"=== Analysis of log call {index} ===")
        lines.append(f"Location: line {entry.line}, method: {entry.level}")
        lines.append(f"Template: {entry.initial_template}")
        lines.append("")
        lines.append(f"=== Call path analysis results ({len(paths)} paths in total) ===")
        lines.append("")
        for number, path in enumerate(paths, 1):
            lines.append(f"--- Path {number} ---")
            for position, step in enumerate(path.steps, 1):
                lines.append(f"  {position}. Class: {step.class_fqn}")
                lines.append(f"     Call code: {step.call_code}")
                if step.callee_kind == KIND_USER:
                    lines.append("     Callee information:")
                    for source_line in (step.callee_source or "").splitlines():
                        lines.append(f"       {source_line}" if source_line else "")
                else:
                    lines.append(f"     Callee information: {_KIND_TEXT[step.callee_kind]}")
            lines.append("")
    lines.append(f"A total of {report.call_count} log calls, "
                 f"with {report.total_paths} complete paths found.")
    return "\n".join(lines) + "\n"
