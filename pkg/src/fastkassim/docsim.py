"""Document-level similarity scores.

Both metrics build a sentence-pair score matrix, solve an optimal
assignment over it, and aggregate the paired values: the kernel method
pairs by maximum similarity, the edit-distance baseline by minimum
normalized distance.

Scoring is made exactly symmetric by orienting every document pair
canonically before computing and by summing paired values in sorted order,
so ``score(d1, d2) == score(d2, d1)`` to the last bit.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field
from math import sqrt
from typing import Iterable, Literal, Sequence

from .assignment import ScoreMatrix, solve
from .errors import DegenerateTree, EmptyDocument, EmptyReferenceSet
from .kernel import KernelConfig, KernelStats, ltk
from .treebank import Document
from .treedit import cassim_normalized_distance

Denominator = Literal["longer_doc", "pairings"]
Method = Literal["fastkassim", "cassim"]


@dataclass(frozen=True)
class DocScoreConfig:
    """Document scoring parameters.

    ``denominator`` applies to the kernel method: ``longer_doc`` divides the
    paired-similarity sum by the larger sentence count (unpaired sentences
    count against the score), ``pairings`` by the number of pairings.
    """

    kernel: KernelConfig = field(default_factory=KernelConfig)
    denominator: Denominator = "longer_doc"
    method: Method = "fastkassim"

    def as_dict(self) -> dict:
        return {
            "lambda": self.kernel.decay,
            "sigma": self.kernel.sigma,
            "denominator": self.denominator,
            "method": self.method,
        }


def _require_scorable(doc: Document) -> None:
    if not doc.trees:
        raise EmptyDocument(f"document {doc.id!r} has no sentences")


def _oriented(d1: Document, d2: Document) -> tuple[Document, Document, bool]:
    """Order a document pair canonically; returns (a, b, swapped)."""
    if (len(d2.trees), d2.signature) < (len(d1.trees), d1.signature):
        return d2, d1, True
    return d1, d2, False


def _self_kernels(doc: Document, cfg: KernelConfig) -> list[float]:
    kernels = []
    for idx, tree in enumerate(doc.trees):
        try:
            value, _ = ltk(tree, tree, cfg)
        except DegenerateTree as e:
            raise DegenerateTree(
                f"document {doc.id!r} sentence {idx}: {e}"
            ) from e
        kernels.append(value)
    return kernels


def _kernel_matrix(
    a: Document, b: Document, cfg: KernelConfig, stats: KernelStats | None = None
) -> ScoreMatrix:
    """Matrix of normalized kernel values over all sentence pairs."""
    self_a = _self_kernels(a, cfg)
    self_b = _self_kernels(b, cfg)
    values = []
    for i, ta in enumerate(a.trees):
        for j, tb in enumerate(b.trees):
            raw, cell_stats = ltk(ta, tb, cfg)
            if stats is not None:
                stats.delta_calls += cell_stats.delta_calls
                stats.cache_entries += cell_stats.cache_entries
                stats.s12 += cell_stats.s12
            values.append(raw / sqrt(self_a[i] * self_b[j]))
    return ScoreMatrix(len(a.trees), len(b.trees), tuple(values))


def _distance_matrix(a: Document, b: Document) -> ScoreMatrix:
    values = [
        cassim_normalized_distance(ta, tb) for ta in a.trees for tb in b.trees
    ]
    return ScoreMatrix(len(a.trees), len(b.trees), tuple(values))


def _paired_cells(
    matrix: ScoreMatrix, sense: Literal["maximize", "minimize"]
) -> list[tuple[int, int, float]]:
    assignment = solve(matrix, sense)
    return [(i, j, matrix.at(i, j)) for i, j in assignment.pairs]


def _sorted_sum(values: Iterable[float]) -> float:
    # summing in sorted value order keeps the total independent of
    # sentence order and document orientation
    total = 0.0
    for v in sorted(values):
        total += v
    return total


def fastkassim_score(
    d1: Document, d2: Document, cfg: DocScoreConfig | None = None
) -> float:
    """Kernel-based document similarity in [0, 1]."""
    cfg = cfg or DocScoreConfig()
    _require_scorable(d1)
    _require_scorable(d2)
    a, b, _ = _oriented(d1, d2)
    matrix = _kernel_matrix(a, b, cfg.kernel)
    paired = _paired_cells(matrix, "maximize")
    total = _sorted_sum(v for _, _, v in paired)
    if cfg.denominator == "longer_doc":
        denom = max(len(a.trees), len(b.trees))
    else:
        denom = min(len(a.trees), len(b.trees))
    return total / denom


def cassim_score(d1: Document, d2: Document) -> float:
    """Edit-distance baseline similarity: 1 - mean paired normalized
    distance over min(|d1|, |d2|) minimum-cost pairings."""
    _require_scorable(d1)
    _require_scorable(d2)
    a, b, _ = _oriented(d1, d2)
    matrix = _distance_matrix(a, b)
    paired = _paired_cells(matrix, "minimize")
    total = _sorted_sum(v for _, _, v in paired)
    return 1.0 - total / len(paired)


def score_report(
    d1: Document,
    d2: Document,
    cfg: DocScoreConfig | None = None,
    with_stats: bool = False,
) -> dict:
    """Full scoring record: score, selected pairs with their cell values,
    and the effective configuration.

    Pair indices are relative to the (d1, d2) argument order.  Cell values
    are similarities for the kernel method and normalized distances for the
    baseline.
    """
    cfg = cfg or DocScoreConfig()
    _require_scorable(d1)
    _require_scorable(d2)
    a, b, swapped = _oriented(d1, d2)
    stats = KernelStats() if with_stats else None
    if cfg.method == "cassim":
        matrix = _distance_matrix(a, b)
        paired = _paired_cells(matrix, "minimize")
        score = 1.0 - _sorted_sum(v for _, _, v in paired) / len(paired)
    else:
        matrix = _kernel_matrix(a, b, cfg.kernel, stats)
        paired = _paired_cells(matrix, "maximize")
        total = _sorted_sum(v for _, _, v in paired)
        if cfg.denominator == "longer_doc":
            denom = max(len(a.trees), len(b.trees))
        else:
            denom = min(len(a.trees), len(b.trees))
        score = total / denom
    if swapped:
        paired = [(j, i, v) for i, j, v in paired]
    paired.sort()
    report = {
        "doc1": d1.id,
        "doc2": d2.id,
        "method": cfg.method,
        "score": score,
        "pairs": [[i, j, v] for i, j, v in paired],
        "config": cfg.as_dict(),
    }
    if stats is not None:
        report["stats"] = stats.as_dict()
    return report


def syntax_features(
    target: Document,
    reference_sets: Sequence[Sequence[Document]],
    cfg: DocScoreConfig | None = None,
    sample_size: int = 25,
    seed: int = 0,
) -> list[float]:
    """Syntax feature vector of a document against reference corpora.

    For each reference set, scores the target against ``sample_size``
    seeded-random members (without replacement when the set is large
    enough, with replacement otherwise) and emits the minimum, maximum,
    mean, and population standard deviation of those scores; the sets'
    blocks are concatenated in order.
    """
    cfg = cfg or DocScoreConfig()
    _require_scorable(target)
    if sample_size < 1:
        raise ValueError(f"sample_size must be >= 1, got {sample_size}")
    rng = random.Random(seed)
    features: list[float] = []
    for set_index, refs in enumerate(reference_sets):
        refs = list(refs)
        if not refs:
            raise EmptyReferenceSet(f"reference set {set_index} is empty")
        if sample_size <= len(refs):
            chosen = rng.sample(range(len(refs)), sample_size)
        else:
            chosen = rng.choices(range(len(refs)), k=sample_size)
        scores = [fastkassim_score(target, refs[i], cfg) for i in chosen]
        features.extend(
            (min(scores), max(scores), statistics.fmean(scores), statistics.pstdev(scores))
        )
    return features
