"""logsmith: proactive log template extraction and streaming log parsing.

The pipeline has four stages: static analysis of source code (analyzer),
template extraction through a pluggable gateway (whitebox), streaming
clustering of unmatched logs (blackbox), and template matching with
strict template-level evaluation (matcher, evaluation).
"""

from .templates import (
    LEVELS,
    WILDCARD_TOKEN,
    Template,
    TemplateBody,
    Wildcard,
    WILD,
    level_rank,
    load_repository,
    save_repository,
)

__version__ = "0.1.0"

__all__ = [
    "LEVELS",
    "Template",
    "TemplateBody",
    "WILD",
    "WILDCARD_TOKEN",
    "Wildcard",
    "__version__",
    "level_rank",
    "load_repository",
    "save_repository",
]
