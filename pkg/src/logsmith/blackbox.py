"""Streaming black-box template discovery over unmatched logs.

A fixed-depth prefix tree groups messages by token count and the first
few tokens, then merges each message into the most similar leaf cluster
(or seeds a new one). Tokens containing digits never become tree keys —
they route to a catch-all child, as does any token once a node is full.
Cluster templates only generalize: a position that became a wildcard
stays a wildcard.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .templates import Template, TemplateBody, WILD

CLUSTER_WILDCARD = "<*>"


class EmptyMessage(Exception):
    """Raised for all-whitespace input; the message is dropped and counted."""


@dataclass
class Cluster:
    cluster_id: int
    template_tokens: list[str]
    match_count: int = 1


@dataclass
class _Node:
    children: dict = field(default_factory=dict)
    clusters: list[Cluster] = field(default_factory=list)


class ClusterTree:
    """Drain-style fixed-depth prefix tree of log message clusters."""

    def __init__(self, depth: int = 4, sim_threshold: float = 0.4,
                 max_children: int = 100):
        if depth < 2:
            raise ValueError("depth must be >= 2")
        if not 0.0 < sim_threshold <= 1.0:
            raise ValueError("sim_threshold must be in (0, 1]")
        if max_children < 1:
            raise ValueError("max_children must be >= 1")
        self.depth = depth
        self.sim_threshold = sim_threshold
        self.max_children = max_children
        self.root: dict[int, _Node] = {}
        self.dropped = 0
        self._clusters: list[Cluster] = []
        self._next_id = 1

    def ingest(self, message: str) -> tuple[int, str]:
        """Cluster one message; returns (cluster_id, current template string)."""
        tokens = message.split()
        if not tokens:
            self.dropped += 1
            raise EmptyMessage("all-whitespace message")

        node = self.root.setdefault(len(tokens), _Node())
        for token in tokens[:self.depth - 1]:
            key = self._child_key(node, token)
            node = node.children.setdefault(key, _Node())

        best: Cluster | None = None
        best_sim = -1.0
        for cluster in node.clusters:
            sim = _similarity(cluster.template_tokens, tokens)
            if sim > best_sim:
                best, best_sim = cluster, sim

        if best is not None and best_sim >= self.sim_threshold:
            _merge(best.template_tokens, tokens)
            best.match_count += 1
            cluster = best
        else:
            cluster = Cluster(cluster_id=self._next_id, template_tokens=list(tokens))
            self._next_id += 1
            node.clusters.append(cluster)
            self._clusters.append(cluster)
        return cluster.cluster_id, " ".join(cluster.template_tokens)

    def _child_key(self, node: _Node, token: str) -> str:
        if any(ch.isdigit() for ch in token):
            return CLUSTER_WILDCARD
        if token in node.children:
            return token
        # reserve headroom: past the cap, unseen tokens share the catch-all
        if len(node.children) - (CLUSTER_WILDCARD in node.children) < self.max_children:
            return token
        return CLUSTER_WILDCARD

    @property
    def clusters(self) -> list[Cluster]:
        return list(self._clusters)

    def export_templates(self) -> list[Template]:
        """One repository template per cluster, in creation order."""
        exported = []
        for cluster in self._clusters:
            segments: list = []
            for i, token in enumerate(cluster.template_tokens):
                if i > 0:
                    segments.append(" ")
                if token == CLUSTER_WILDCARD:
                    segments.append(WILD)
                else:
                    segments.append(token)
            exported.append(Template(
                body=TemplateBody.from_segments(segments),
                source="blackbox",
                match_count=cluster.match_count,
            ))
        return exported


def _similarity(template_tokens: list[str], tokens: list[str]) -> float:
    """Fraction of positions where tokens agree or the cluster holds a wildcard."""
    same = sum(
        1 for ours, theirs in zip(template_tokens, tokens)
        if ours == theirs or ours == CLUSTER_WILDCARD
    )
    return same / len(tokens)


def _merge(template_tokens: list[str], tokens: list[str]) -> None:
    for i, token in enumerate(tokens):
        if template_tokens[i] != token:
            template_tokens[i] = CLUSTER_WILDCARD
