"""Utterance- and document-level syntactic similarity.

Sentence similarity is a normalized label-based tree kernel over
constituency parse trees; document similarity pairs sentences by optimal
assignment and averages the paired values.  A tree-edit-distance baseline,
an evaluation kit, and a runtime benchmark harness are included.
"""

from . import errors
from .assignment import Assignment, ScoreMatrix, solve
from .docsim import (
    DocScoreConfig,
    cassim_score,
    fastkassim_score,
    score_report,
    syntax_features,
)
from .evalkit import (
    LabeledPairScore,
    classification_metrics,
    pearson,
    quantile_transform,
)
from .ingest import ParseStats, cached_parse, parse_external, segment
from .kernel import (
    KernelConfig,
    KernelStats,
    delta_lb,
    enumerate_common_fragments,
    ltk,
    ltk_normalized,
)
from .treebank import (
    Document,
    Node,
    ParseTree,
    read_bracketed,
    same_label_pairs,
    size,
    write_bracketed,
)
from .treedit import cassim_normalized_distance, tree_edit_distance

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "DocScoreConfig",
    "Document",
    "KernelConfig",
    "KernelStats",
    "LabeledPairScore",
    "Node",
    "ParseStats",
    "ParseTree",
    "ScoreMatrix",
    "cached_parse",
    "cassim_normalized_distance",
    "cassim_score",
    "classification_metrics",
    "delta_lb",
    "enumerate_common_fragments",
    "errors",
    "fastkassim_score",
    "ltk",
    "ltk_normalized",
    "parse_external",
    "pearson",
    "quantile_transform",
    "read_bracketed",
    "same_label_pairs",
    "score_report",
    "segment",
    "size",
    "solve",
    "syntax_features",
    "tree_edit_distance",
    "write_bracketed",
    "__version__",
]
