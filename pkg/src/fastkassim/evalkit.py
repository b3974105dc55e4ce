"""Metric-evaluation utilities for labeled score sets.

Given per-pair similarity scores and a same-source ground truth, computes
threshold classification quality (accuracy plus recall/precision for both
the similar and dissimilar classes), rank-based quantile transformation
onto [0, 1], and Pearson correlation.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from .errors import (
    EmptyInput,
    LengthMismatch,
    MalformedRecord,
    TooFewScores,
    ZeroVariance,
)

DEFAULT_THRESHOLD = 0.5


@dataclass(frozen=True)
class LabeledPairScore:
    """A document-pair score with its same-source ground truth."""

    score: float
    same_source: bool


def classification_metrics(
    pairs: Sequence[LabeledPairScore], threshold: float = DEFAULT_THRESHOLD
) -> dict[str, float | None]:
    """Accuracy and per-class recall/precision at a similarity threshold.

    A score >= threshold classifies as similar (ties go to similar so that
    transformed scores landing exactly on the boundary are deterministic).
    Ratios with a zero denominator are reported as None, not 0.
    """
    if not pairs:
        raise EmptyInput("no scored pairs to evaluate")
    if not (0.0 < threshold < 1.0):
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    tp = fp = tn = fn = 0
    for p in pairs:
        if not math.isfinite(p.score):
            raise ValueError(f"score {p.score!r} is not finite")
        predicted_similar = p.score >= threshold
        if p.same_source:
            if predicted_similar:
                tp += 1
            else:
                fn += 1
        else:
            if predicted_similar:
                fp += 1
            else:
                tn += 1

    def ratio(num: int, den: int) -> float | None:
        return num / den if den else None

    return {
        "accuracy": (tp + tn) / len(pairs),
        "sim_recall": ratio(tp, tp + fn),
        "sim_precision": ratio(tp, tp + fp),
        "dis_recall": ratio(tn, tn + fp),
        "dis_precision": ratio(tn, tn + fn),
    }


def quantile_transform(scores: Sequence[float]) -> list[float]:
    """Map scores onto [0, 1] by averaged rank / (n - 1).

    Order-preserving; the minimum maps to 0, the maximum to 1, and tied
    values share their averaged rank.
    """
    n = len(scores)
    if n < 2:
        raise TooFewScores(f"need at least 2 scores, got {n}")
    order = sorted(range(n), key=lambda i: scores[i])
    out = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        averaged = (i + j) / 2
        for k in range(i, j + 1):
            out[order[k]] = averaged / (n - 1)
        i = j + 1
    return out


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation coefficient."""
    if len(xs) != len(ys):
        raise LengthMismatch(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise TooFewScores(f"need at least 2 points, got {len(xs)}")
    mx = fmean(xs)
    my = fmean(ys)
    sxx = sxy = syy = 0.0
    for x, y in zip(xs, ys):
        dx = x - mx
        dy = y - my
        sxx += dx * dx
        syy += dy * dy
        sxy += dx * dy
    if sxx == 0.0 or syy == 0.0:
        raise ZeroVariance("correlation is undefined for a constant sequence")
    return sxy / math.sqrt(sxx * syy)


_TRUE = {"true", "t", "1", "yes", "y"}
_FALSE = {"false", "f", "0", "no", "n"}


def read_scored_csv(text: str) -> list[tuple[str, LabeledPairScore]]:
    """Read a scored-pair CSV with columns pair_id, score, same_source."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyInput("CSV has no header row") from None
    header = [h.strip().lower() for h in header]
    required = ("pair_id", "score", "same_source")
    try:
        indices = [header.index(col) for col in required]
    except ValueError:
        raise MalformedRecord(
            f"CSV header must contain {', '.join(required)}; got {header}"
        ) from None
    rows: list[tuple[str, LabeledPairScore]] = []
    for rownum, row in enumerate(reader, start=2):
        if not row or not any(cell.strip() for cell in row):
            continue
        if max(indices) >= len(row):
            raise MalformedRecord(f"CSV row {rownum}: too few columns")
        pair_id, raw_score, raw_label = (row[i].strip() for i in indices)
        try:
            score = float(raw_score)
        except ValueError:
            raise MalformedRecord(
                f"CSV row {rownum}: score {raw_score!r} is not a number"
            ) from None
        label = raw_label.lower()
        if label in _TRUE:
            same = True
        elif label in _FALSE:
            same = False
        else:
            raise MalformedRecord(
                f"CSV row {rownum}: same_source {raw_label!r} is not a boolean"
            )
        rows.append((pair_id, LabeledPairScore(score, same)))
    if not rows:
        raise EmptyInput("CSV contains no data rows")
    return rows
