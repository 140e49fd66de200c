"""Template compilation and streaming log matching.

Templates compile to anchored regular expressions: constants are escaped
so metacharacters match literally, wildcards become non-greedy captures
(length >= 1 between constants, >= 0 at the template edges). The compiled
repository is scanned in a fixed order — most constant characters first,
then fewest wildcards — so the most specific template wins when several
match. Lines matching nothing are routed to the black-box cluster tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .blackbox import ClusterTree
from .templates import Template, TemplateBody, Wildcard


class DuplicateTemplate(Exception):
    def __init__(self, body: TemplateBody):
        super().__init__(f"duplicate template body: {body.render()}")
        self.body = body


@dataclass(frozen=True)
class CompiledEntry:
    template_id: int
    template: Template
    pattern: re.Pattern


@dataclass(frozen=True)
class CompiledRepository:
    entries: tuple[CompiledEntry, ...]
    allow_empty_inner: bool = False

    def __len__(self) -> int:
        return len(self.entries)


def compile_body(body: TemplateBody, allow_empty_inner: bool = False) -> re.Pattern:
    last = len(body.segments) - 1
    parts = []
    for i, segment in enumerate(body.segments):
        if isinstance(segment, Wildcard):
            at_edge = i == 0 or i == last
            if at_edge or allow_empty_inner:
                parts.append("(.*?)")
            else:
                parts.append("(.+?)")
        else:
            parts.append(re.escape(segment))
    return re.compile("".join(parts))


def compile_repository(templates: list[Template],
                       allow_empty_inner: bool = False) -> CompiledRepository:
    """Compile templates in matching order; duplicate bodies are rejected.

    Ordering key: constant characters descending, wildcard count
    ascending, rendered text — a pure function of the template set.
    """
    seen: set[TemplateBody] = set()
    for template in templates:
        if template.body in seen:
            raise DuplicateTemplate(template.body)
        seen.add(template.body)
    ordered = sorted(
        enumerate(templates),
        key=lambda pair: (-pair[1].body.constant_chars,
                          pair[1].body.wildcard_count,
                          pair[1].body.render(),
                          pair[0]),
    )
    entries = tuple(
        CompiledEntry(
            template_id=position,
            template=template,
            pattern=compile_body(template.body, allow_empty_inner),
        )
        for position, (_, template) in enumerate(ordered)
    )
    return CompiledRepository(entries=entries, allow_empty_inner=allow_empty_inner)


@dataclass(frozen=True)
class MatchResult:
    log_line: str
    matched: bool
    template_id: int | None = None
    template: str | None = None
    captures: tuple[str, ...] = ()
    cluster_id: int | None = None
    cluster_template: str | None = None


def match_line(repo: CompiledRepository, line: str,
               tree: ClusterTree | None = None) -> MatchResult:
    """Match one line; on a miss, ingest it into the cluster tree if given.

    The line's surrounding whitespace is ignored. An all-whitespace line
    can still match an edge-wildcard template; otherwise it raises
    EmptyMessage when a tree is present.
    """
    message = line.strip()
    for entry in repo.entries:
        hit = entry.pattern.fullmatch(message)
        if hit is not None:
            return MatchResult(
                log_line=line,
                matched=True,
                template_id=entry.template_id,
                template=entry.template.body.render(),
                captures=hit.groups(),
            )
    if tree is None:
        return MatchResult(log_line=line, matched=False)
    cluster_id, cluster_template = tree.ingest(message)
    return MatchResult(log_line=line, matched=False, cluster_id=cluster_id,
                       cluster_template=cluster_template)


@dataclass
class MatchCounts:
    per_template: dict[int, int] = field(default_factory=dict)
    routed: int = 0
    dropped_empty: int = 0
    total: int = 0

    @property
    def matched(self) -> int:
        return sum(self.per_template.values())

    @property
    def match_rate(self) -> float:
        return self.matched / self.total if self.total else 0.0


def report_counts(results: list[MatchResult]) -> MatchCounts:
    counts = MatchCounts(total=len(results))
    for result in results:
        if result.matched:
            counts.per_template[result.template_id] = (
                counts.per_template.get(result.template_id, 0) + 1)
        else:
            counts.routed += 1
    return counts


def run_stream(repo: CompiledRepository, lines, tree: ClusterTree | None = None,
               header_pattern: str | None = None) -> tuple[list[MatchResult], MatchCounts]:
    """Match a line stream, stripping the configured header prefix first.

    Lines empty after header stripping are dropped and counted; for the
    rest, matched + routed equals the number of surviving lines.
    """
    header = re.compile(header_pattern) if header_pattern else None
    results: list[MatchResult] = []
    dropped = 0
    total = 0
    for line in lines:
        total += 1
        message = line.rstrip("\n")
        if header is not None:
            prefix = header.match(message)
            if prefix is not None:
                message = message[prefix.end():]
        if not message.strip():
            dropped += 1
            continue
        results.append(match_line(repo, message, tree))
    counts = report_counts(results)
    counts.dropped_empty = dropped
    counts.total = total
    return results, counts
