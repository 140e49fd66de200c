"""Declarative configuration for the pipeline.

One YAML file configures every stage; command-line flags override file
values, and credentials come only from the environment. Unknown keys are
rejected rather than ignored so typos fail loudly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .analyzer import DEFAULT_BUILTIN_METHODS, PathBudget
from .blackbox import ClusterTree
from .whitebox import GatewayConfig, PostProcessPolicy


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    gateway: GatewayConfig = field(default_factory=GatewayConfig)
    postprocess: PostProcessPolicy = field(default_factory=PostProcessPolicy)
    tree_depth: int = 4
    tree_sim_threshold: float = 0.4
    tree_max_children: int = 100
    budget: PathBudget = field(default_factory=PathBudget)
    header_pattern: str | None = None
    allow_empty_inner: bool = False
    builtin_methods: tuple[str, ...] = DEFAULT_BUILTIN_METHODS
    workers: int = 1

    def __post_init__(self):
        # delegate range checks to the tree constructor
        self.make_tree()
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.header_pattern is not None:
            try:
                re.compile(self.header_pattern)
            except re.error as exc:
                raise ValueError(f"invalid header_pattern: {exc}") from exc

    def make_tree(self) -> ClusterTree:
        return ClusterTree(depth=self.tree_depth,
                           sim_threshold=self.tree_sim_threshold,
                           max_children=self.tree_max_children)


def _section(data: dict, name: str, allowed: set[str]) -> dict:
    section = data.get(name) or {}
    if not isinstance(section, dict):
        raise ConfigError(f"section {name!r} must be a mapping")
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {name!r}: {', '.join(sorted(unknown))}")
    return section


def load_config(path: str | Path) -> Config:
    """Load and validate a YAML config file; missing sections use defaults."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")

    top_level = {"gateway", "postprocess", "tree", "paths", "matching",
                 "analyzer", "workers"}
    unknown = set(data) - top_level
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(sorted(unknown))}")

    gateway = _section(data, "gateway",
                       {"endpoint", "model", "temperature", "timeout", "max_retries"})
    postprocess = _section(data, "postprocess",
                           {"min_const_chars", "min_const_token_ratio",
                            "enable_verifier"})
    tree = _section(data, "tree", {"depth", "sim_threshold", "max_children"})
    paths = _section(data, "paths", {"max_call_depth", "max_paths_per_site"})
    matching = _section(data, "matching", {"header_pattern", "allow_empty_inner"})
    analyzer = _section(data, "analyzer", {"builtin_methods"})

    builtins = analyzer.get("builtin_methods", list(DEFAULT_BUILTIN_METHODS))
    if (not isinstance(builtins, list)
            or not all(isinstance(name, str) for name in builtins)):
        raise ConfigError("analyzer.builtin_methods must be a list of strings")

    try:
        return Config(
            gateway=GatewayConfig(**gateway),
            postprocess=PostProcessPolicy(**postprocess),
            tree_depth=tree.get("depth", 4),
            tree_sim_threshold=tree.get("sim_threshold", 0.4),
            tree_max_children=tree.get("max_children", 100),
            budget=PathBudget(**paths),
            header_pattern=matching.get("header_pattern"),
            allow_empty_inner=bool(matching.get("allow_empty_inner", False)),
            builtin_methods=tuple(builtins),
            workers=data.get("workers", 1),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
