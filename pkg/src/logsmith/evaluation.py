"""Strict template-level evaluation and online-parsing timing.

A parsed template is correct only when it equals a ground-truth template
segment for segment: same constants in the same order, wildcards in the
same positions. Scoring pairs templates one-to-one (multiset semantics),
and timing measures the full streaming match pass averaged over
repetitions, with repository compilation excluded.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from .blackbox import ClusterTree
from .matcher import CompiledRepository, run_stream
from .templates import TemplateBody, Wildcard


class GroundTruthError(Exception):
    """A ground-truth file line that is not a normalized template."""


@dataclass(frozen=True)
class GroundTruth:
    templates: tuple[TemplateBody, ...]
    labels: dict[int, int] | None = None


@dataclass
class EvalReport:
    precision: float
    recall: float
    f1: float
    matched_pairs: list[tuple[int, int]] = field(default_factory=list)
    timing: float | None = None


def _canonical(body: TemplateBody) -> TemplateBody:
    """Collapse whitespace-only constants sandwiched between wildcards.

    Equality treats "a <.*> <.*> b" and "a <.*> b" as the same template:
    consecutive wildcard slots separated only by whitespace carry no
    distinguishable structure.
    """
    segments = body.segments
    out: list = []
    for i, segment in enumerate(segments):
        if (isinstance(segment, str) and segment.strip() == ""
                and out and isinstance(out[-1], Wildcard)
                and i + 1 < len(segments) and isinstance(segments[i + 1], Wildcard)):
            continue
        out.append(segment)
    return TemplateBody.from_segments(out)


def templates_equal(a: TemplateBody, b: TemplateBody) -> bool:
    """Strict equality: any mistake in static text or variable bounds counts."""
    return _canonical(a) == _canonical(b)


def load_ground_truth(path: str | Path) -> GroundTruth:
    """Read line-oriented ground-truth templates; blank lines are skipped.

    Each line must already be a normalized template (its parse renders
    back to the identical string); anything else raises GroundTruthError
    naming the line number.
    """
    bodies = []
    with open(path, "r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            body = TemplateBody.parse(line)
            if body.render() != line:
                raise GroundTruthError(
                    f"line {number}: not a normalized template: {line!r}")
            bodies.append(body)
    return GroundTruth(templates=tuple(bodies))


def score(parsed: list[TemplateBody], truth: GroundTruth) -> EvalReport:
    """Greedy one-to-one matching of parsed templates against ground truth.

    recall = matched / |truth|, precision = matched / |parsed|; an empty
    side scores 0 on its metric. Duplicate identical templates pair at
    most once each (multiset semantics).
    """
    unmatched = list(range(len(truth.templates)))
    pairs: list[tuple[int, int]] = []
    for parsed_index, body in enumerate(parsed):
        for position, truth_index in enumerate(unmatched):
            if templates_equal(body, truth.templates[truth_index]):
                pairs.append((parsed_index, truth_index))
                del unmatched[position]
                break
    matched = len(pairs)
    precision = matched / len(parsed) if parsed else 0.0
    recall = matched / len(truth.templates) if truth.templates else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    return EvalReport(precision=precision, recall=recall, f1=f1,
                      matched_pairs=pairs)


def time_online(repo: CompiledRepository, lines: list[str], repetitions: int = 10,
                tree_factory=ClusterTree) -> float:
    """Average wall-clock seconds for one full match pass over ``lines``.

    Each repetition runs against a fresh cluster tree so black-box routing
    cost is included without cross-repetition interference. Compilation of
    the repository happens before this call and is not measured.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    elapsed = 0.0
    for _ in range(repetitions):
        tree = tree_factory() if tree_factory is not None else None
        start = time.perf_counter()
        run_stream(repo, lines, tree)
        elapsed += time.perf_counter() - start
    return elapsed / repetitions
