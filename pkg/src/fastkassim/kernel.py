"""Label-based tree kernel.

The pairwise building block ``delta_lb`` counts (with decay weighting) the
common fragments rooted at a pair of non-terminal nodes, comparing node
labels only.  ``ltk`` accumulates it over every same-label node pair of two
trees and ``ltk_normalized`` maps the result into [0, 1] by the geometric
mean of the self-kernels.

Terminal (word) nodes are excluded throughout: the metric is syntactic, so
two sentences sharing structure but no vocabulary still score high, and
shared words alone contribute nothing.

``enumerate_common_fragments`` is a deliberately brute-force enumerator of
the same quantity, kept free of memoization so it can serve as an
independent cross-check in tests.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DegenerateTree, OracleCapExceeded
from .treebank import ParseTree, same_label_pairs

DEFAULT_DECAY = 0.4
DEFAULT_SIGMA = 1
DEFAULT_ORACLE_CAP = 400


@dataclass(frozen=True)
class KernelConfig:
    """Kernel parameters.

    ``decay`` damps large fragments (one factor per fragment node);
    ``sigma`` selects the fragment family: 0 counts only fully expanded
    subtrees, 1 also counts partially expanded subset trees.
    """

    decay: float = DEFAULT_DECAY
    sigma: int = DEFAULT_SIGMA

    def __post_init__(self):
        if not (0.0 < self.decay <= 1.0):
            raise ValueError(f"decay must be in (0, 1], got {self.decay}")
        if self.sigma not in (0, 1):
            raise ValueError(f"sigma must be 0 or 1, got {self.sigma}")


@dataclass
class KernelStats:
    """Instrumentation for one kernel evaluation.

    ``delta_calls`` counts every delta_lb invocation (memo hits included);
    ``cache_entries`` is the peak memo size of a single directional sweep,
    which never exceeds ``s12``, the number of same-label node pairs.
    """

    delta_calls: int = 0
    cache_entries: int = 0
    s12: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "delta_calls": self.delta_calls,
            "cache_entries": self.cache_entries,
            "s12": self.s12,
        }


class _Counter:
    __slots__ = ("calls",)

    def __init__(self):
        self.calls = 0


def _delta(
    t1: ParseTree,
    n1: int,
    t2: ParseTree,
    n2: int,
    decay: float,
    sigma: int,
    memo: dict[tuple[int, int], float] | None,
    counter: _Counter,
) -> float:
    counter.calls += 1
    if memo is not None:
        cached = memo.get((n1, n2))
        if cached is not None:
            return cached
    if t1.labels[n1] != t2.labels[n2]:
        # label mismatches are rejected without caching
        return 0.0
    if t1.is_preterminal[n1] and t2.is_preterminal[n2]:
        if memo is not None:
            memo[(n1, n2)] = decay
        return decay
    t1_term = t1.is_terminal
    t2_term = t2.is_terminal
    t2_kids = t2.children[n2]
    product = 1.0
    for c1 in t1.children[n1]:
        acc = 0.0
        if not t1_term[c1]:
            for c2 in t2_kids:
                if not t2_term[c2]:
                    acc += _delta(t1, c1, t2, c2, decay, sigma, memo, counter)
        product *= sigma + acc
    value = decay * product
    if memo is not None:
        memo[(n1, n2)] = value
    return value


def delta_lb(
    t1: ParseTree,
    n1: int,
    t2: ParseTree,
    n2: int,
    cfg: KernelConfig,
    memo: dict[tuple[int, int], float] | None = None,
) -> float:
    """Decay-weighted count of common fragments rooted at (n1, n2).

    0 when labels differ; ``decay`` when both nodes are preterminals with
    equal labels; otherwise the product over n1's children of
    (sigma + sum of delta_lb against n2's children), scaled by ``decay``.
    A terminal child contributes 0 to its parent's accumulator.

    ``memo`` is keyed by the (n1, n2) id pair and only meaningful within a
    single (t1, t2) evaluation.
    """
    if t1.is_terminal[n1] or t2.is_terminal[n2]:
        raise DegenerateTree("delta_lb is defined on non-terminal nodes")
    return _delta(t1, n1, t2, n2, cfg.decay, cfg.sigma, memo, _Counter())


def _sweep(
    t1: ParseTree,
    t2: ParseTree,
    cfg: KernelConfig,
    memoize: bool,
    counter: _Counter,
) -> tuple[float, int]:
    """Sum delta_lb over same-label node pairs, iterating t1's non-terminals
    in document order.  Returns (sum, memo entry count)."""
    memo: dict[tuple[int, int], float] | None = {} if memoize else None
    decay, sigma = cfg.decay, cfg.sigma
    total = 0.0
    labels = t1.labels
    for n1 in t1.nonterminals:
        for n2 in t2.nonterminals_labeled(labels[n1]):
            total += _delta(t1, n1, t2, n2, decay, sigma, memo, counter)
    return total, len(memo) if memo is not None else 0


def ltk(
    t1: ParseTree,
    t2: ParseTree,
    cfg: KernelConfig,
    memoize: bool = True,
) -> tuple[float, KernelStats]:
    """Raw label-based tree kernel between two trees.

    The per-node recursion is directional (it expands the first argument's
    children), so the two sweep orders are averaged to make the kernel
    exactly symmetric.  ``memoize=False`` recomputes every recursive call;
    it exists to let tests check that caching never changes the value.
    """
    if not t1.nonterminals:
        raise DegenerateTree("first tree has no non-terminal node")
    if not t2.nonterminals:
        raise DegenerateTree("second tree has no non-terminal node")
    counter = _Counter()
    forward, fwd_entries = _sweep(t1, t2, cfg, memoize, counter)
    backward, bwd_entries = _sweep(t2, t1, cfg, memoize, counter)
    stats = KernelStats(
        delta_calls=counter.calls,
        cache_entries=max(fwd_entries, bwd_entries),
        s12=same_label_pairs(t1, t2),
    )
    return 0.5 * (forward + backward), stats


def ltk_normalized(t1: ParseTree, t2: ParseTree, cfg: KernelConfig) -> float:
    """Kernel normalized into [0, 1]: k12 / sqrt(k11 * k22).

    1.0 for identical trees; 0.0 exactly when the trees share no
    non-terminal label.
    """
    k12, _ = ltk(t1, t2, cfg)
    k11, _ = ltk(t1, t1, cfg)
    k22, _ = ltk(t2, t2, cfg)
    if k11 <= 0.0 or k22 <= 0.0:
        raise DegenerateTree("self-kernel is zero")
    return k12 / math.sqrt(k11 * k22)


# --- brute-force fragment enumeration (test oracle) ---


def _rooted_matches(
    t1: ParseTree, n1: int, t2: ParseTree, n2: int
) -> list[tuple[tuple[tuple[int, int], ...], int]]:
    """Every fragment match rooted at (n1, n2), fully materialized.

    A match pairs each node of a fragment of t1 with a same-labeled node of
    t2, child to child; it is returned as (matched node-id pairs, number of
    children left unexpanded).  No caching on purpose.
    """
    if t1.labels[n1] != t2.labels[n2]:
        return []
    if t1.is_preterminal[n1] and t2.is_preterminal[n2]:
        return [(((n1, n2),), 0)]
    options: list[list[tuple[tuple[tuple[int, int], ...], int] | None]] = []
    for c1 in t1.children[n1]:
        child_opts: list[tuple[tuple[tuple[int, int], ...], int] | None] = [None]
        if not t1.is_terminal[c1]:
            for c2 in t2.children[n2]:
                if not t2.is_terminal[c2]:
                    child_opts.extend(_rooted_matches(t1, c1, t2, c2))
        options.append(child_opts)
    matches = []
    for combo in itertools.product(*options):
        pairs: list[tuple[int, int]] = [(n1, n2)]
        stopped = 0
        for m in combo:
            if m is None:
                stopped += 1
            else:
                pairs.extend(m[0])
                stopped += m[1]
        matches.append((tuple(pairs), stopped))
    return matches


def _match_weight(
    match: tuple[tuple[tuple[int, int], ...], int], decay: float, sigma: int
) -> float:
    pairs, stopped = match
    return decay ** len(pairs) * float(sigma) ** stopped


def enumerate_rooted_fragments(
    t1: ParseTree, n1: int, t2: ParseTree, n2: int, cfg: KernelConfig
) -> float:
    """Weighted count of matches rooted at one node pair (directional)."""
    return sum(
        _match_weight(m, cfg.decay, cfg.sigma) for m in _rooted_matches(t1, n1, t2, n2)
    )


def enumerate_common_fragments(
    t1: ParseTree,
    t2: ParseTree,
    cfg: KernelConfig,
    cap: int = DEFAULT_ORACLE_CAP,
) -> float:
    """Exhaustive-enumeration equivalent of ``ltk``.

    Enumerates every fragment match explicitly in both sweep directions and
    averages, weighting each match by decay^(fragment nodes) and
    sigma^(unexpanded children).  Exponential: refuses tree pairs whose
    size product exceeds ``cap``.
    """
    if t1.size * t2.size > cap:
        raise OracleCapExceeded(
            f"size product {t1.size * t2.size} exceeds oracle cap {cap}"
        )

    def directional(a: ParseTree, b: ParseTree) -> float:
        total = 0.0
        for n1 in a.nonterminals:
            for n2 in b.nonterminals:
                total += enumerate_rooted_fragments(a, n1, b, n2, cfg)
        return total

    return 0.5 * (directional(t1, t2) + directional(t2, t1))
