"""Log template representation shared by every stage of the pipeline.

A template is an ordered sequence of constant text segments and wildcard
slots. White-box extraction, black-box clustering, matching and evaluation
all exchange templates in this form; the textual rendering uses ``<.*>``
for a wildcard slot.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

WILDCARD_TOKEN = "<.*>"

# Recognized log levels, ordered from least to most severe.
LEVELS = ("trace", "debug", "info", "warn", "error", "fatal")
_LEVEL_RANK = {name: rank for rank, name in enumerate(LEVELS)}


@dataclass(frozen=True)
class Wildcard:
    """Marker segment for a variable slot inside a template."""

    def __repr__(self) -> str:
        return WILDCARD_TOKEN


WILD = Wildcard()

# A segment is either constant text (str) or a Wildcard.
Segment = str | Wildcard


@dataclass(frozen=True)
class TemplateBody:
    """Normalized segment sequence: no adjacent constants, no adjacent wildcards.

    Construct through :meth:`from_segments` or :meth:`parse`, which merge
    adjacent constants, collapse runs of wildcards and drop empty constants.
    """

    segments: tuple[str | Wildcard, ...]

    @classmethod
    def from_segments(cls, raw: Iterable[str | Wildcard]) -> "TemplateBody":
        merged: list[str | Wildcard] = []
        for seg in raw:
            if isinstance(seg, Wildcard):
                if merged and isinstance(merged[-1], Wildcard):
                    continue
                merged.append(WILD)
            else:
                if seg == "":
                    continue
                if merged and isinstance(merged[-1], str):
                    merged[-1] = merged[-1] + seg
                else:
                    merged.append(seg)
        return cls(tuple(merged))

    @classmethod
    def parse(cls, text: str, token: str = WILDCARD_TOKEN) -> "TemplateBody":
        """Parse a rendered template string, splitting on the wildcard token."""
        pieces = text.split(token)
        raw: list[str | Wildcard] = []
        for i, piece in enumerate(pieces):
            if i > 0:
                raw.append(WILD)
            raw.append(piece)
        return cls.from_segments(raw)

    def render(self, token: str = WILDCARD_TOKEN) -> str:
        return "".join(token if isinstance(s, Wildcard) else s for s in self.segments)

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(s for s in self.segments if isinstance(s, str))

    @property
    def constant_chars(self) -> int:
        return sum(len(s) for s in self.constants)

    @property
    def wildcard_count(self) -> int:
        return sum(1 for s in self.segments if isinstance(s, Wildcard))

    @property
    def has_constant(self) -> bool:
        return any(isinstance(s, str) for s in self.segments)

    def __str__(self) -> str:
        return self.render()


def level_rank(level: str) -> int:
    """Severity rank of a log level (0 = trace ... 5 = fatal)."""
    try:
        return _LEVEL_RANK[level]
    except KeyError:
        raise ValueError(f"unknown log level: {level!r}") from None


@dataclass
class Template:
    """A repository entry: a template body plus its provenance metadata."""

    body: TemplateBody
    level: str | None = None
    methods: tuple[str, ...] = ()
    source: str = "whitebox"
    match_count: int | None = None

    def to_record(self) -> dict:
        record = {
            "template": self.body.render(),
            "level": self.level,
            "methods": list(self.methods),
            "source": self.source,
        }
        if self.match_count is not None:
            record["match_count"] = self.match_count
        return record

    @classmethod
    def from_record(cls, record: dict) -> "Template":
        return cls(
            body=TemplateBody.parse(record["template"]),
            level=record.get("level"),
            methods=tuple(record.get("methods", ())),
            source=record.get("source", "whitebox"),
            match_count=record.get("match_count"),
        )


def save_repository(templates: Iterable[Template], path: str | Path) -> None:
    """Write templates as line-oriented JSON records."""
    with open(path, "w", encoding="utf-8") as handle:
        for template in templates:
            handle.write(json.dumps(template.to_record(), ensure_ascii=False) + "\n")


def append_repository(templates: Iterable[Template], path: str | Path) -> int:
    """Append templates to a repository file, skipping bodies already present.

    Returns the number of templates actually appended.
    """
    path = Path(path)
    existing = set()
    if path.exists():
        existing = {t.body for t in load_repository(path)}
    appended = 0
    with open(path, "a", encoding="utf-8") as handle:
        for template in templates:
            if template.body in existing:
                continue
            handle.write(json.dumps(template.to_record(), ensure_ascii=False) + "\n")
            existing.add(template.body)
            appended += 1
    return appended


def load_repository(path: str | Path) -> list[Template]:
    templates = []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            templates.append(Template.from_record(json.loads(line)))
    return templates
