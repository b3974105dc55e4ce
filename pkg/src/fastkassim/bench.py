"""Benchmark harness comparing kernel and edit-distance runtimes.

Tree pairs are grouped into log-spaced bins by the product of their node
counts; for each bin a seeded random sample of pairs is timed (median of k
wall-clock repeats per pair) and the per-bin means are reported, ready for
log-log plotting.  The same-label pair count is recorded alongside, since
it is what actually drives the kernel's cost.

Also provides a seeded synthetic tree generator whose label diversity and
depth grow with tree size, roughly like natural-language parses, so the
two metrics' scaling behavior separates cleanly.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .kernel import KernelConfig, ltk
from .treebank import Document, ParseTree, read_bracketed, same_label_pairs
from .treedit import tree_edit_distance


@dataclass(frozen=True)
class BenchRow:
    bin_label: str
    mean_ltk_time: float
    mean_editdist_time: float
    mean_nm: float
    mean_s12: float


@dataclass(frozen=True)
class SkippedBin:
    bin_label: str
    available: int
    requested: int


# --- synthetic corpus ---


def synthetic_tree(rng: random.Random, n_nodes: int, n_labels: int, depth_cap: int) -> ParseTree:
    """Random labeled tree with exactly ``n_nodes`` nodes.

    A spine forces depth near ``depth_cap``; remaining nodes attach
    uniformly below it.  Childless nodes become word terminals, their
    parents and ancestors draw phrase labels from an ``n_labels`` pool.
    """
    if n_nodes < 2:
        raise ValueError("synthetic trees need at least 2 nodes")
    parents = [-1]
    depths = [0]
    spine = min(depth_cap, n_nodes - 1)
    for i in range(1, spine + 1):
        parents.append(i - 1)
        depths.append(i)
    shallow = [i for i, d in enumerate(depths) if d < depth_cap]
    while len(parents) < n_nodes:
        p = rng.choice(shallow)
        parents.append(p)
        depth = depths[p] + 1
        depths.append(depth)
        if depth < depth_cap:
            shallow.append(len(parents) - 1)
    children: list[list[int]] = [[] for _ in range(n_nodes)]
    for i in range(1, n_nodes):
        children[parents[i]].append(i)
    for kids in children:
        rng.shuffle(kids)
    labels = [
        f"w{rng.randrange(n_labels)}" if not children[i] else f"L{rng.randrange(n_labels)}"
        for i in range(n_nodes)
    ]

    def render(i: int) -> str:
        if not children[i]:
            return labels[i]
        return "(%s %s)" % (labels[i], " ".join(render(c) for c in children[i]))

    text = render(0) if children[0] else f"({labels[0]})"
    return read_bracketed(text)


def scaled_label_count(n_nodes: int) -> int:
    """Label-pool size growing with the square root of tree size."""
    return max(4, round(1.6 * math.sqrt(n_nodes)))


def scaled_depth_cap(n_nodes: int) -> int:
    return max(3, round(n_nodes ** 0.42))


def synthetic_corpus(
    seed: int,
    sizes: Sequence[int],
    per_size: int,
    trees_per_doc: int = 1,
) -> list[Document]:
    """Seeded corpus of random trees in the given size classes."""
    rng = random.Random(seed)
    docs = []
    for size in sizes:
        for k in range(per_size):
            trees = tuple(
                synthetic_tree(rng, size, scaled_label_count(size), scaled_depth_cap(size))
                for _ in range(trees_per_doc)
            )
            docs.append(Document(f"synth-{size}-{k}", trees))
    return docs


# --- timing ---


def _median_time(fn: Callable[[], object], repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def run_bench(
    trees: Sequence[ParseTree],
    bins: int,
    samples_per_bin: int,
    seed: int,
    repeats: int = 5,
    cfg: KernelConfig | None = None,
) -> tuple[list[BenchRow], list[SkippedBin]]:
    """Time the kernel and the edit distance over binned tree pairs.

    Bins with fewer candidate pairs than ``samples_per_bin`` are skipped
    and reported.  Results are deterministic up to wall-clock noise.
    """
    cfg = cfg or KernelConfig()
    if len(trees) < 2:
        raise ValueError("benchmark needs at least 2 trees")
    rng = random.Random(seed)
    pairs = [
        (i, j, trees[i].size * trees[j].size)
        for i in range(len(trees))
        for j in range(i + 1, len(trees))
    ]
    lo = min(nm for _, _, nm in pairs)
    hi = max(nm for _, _, nm in pairs)
    if lo == hi:
        edges = [float(lo), float(hi)]
        bins = 1
    else:
        step = (math.log(hi) - math.log(lo)) / bins
        edges = [math.exp(math.log(lo) + k * step) for k in range(bins + 1)]
    buckets: list[list[tuple[int, int, int]]] = [[] for _ in range(bins)]
    for i, j, nm in pairs:
        k = bins - 1
        for b in range(bins):
            if nm < edges[b + 1]:
                k = b
                break
        buckets[k].append((i, j, nm))

    rows: list[BenchRow] = []
    skipped: list[SkippedBin] = []
    for b, bucket in enumerate(buckets):
        label = f"{edges[b]:.6g}-{edges[b + 1]:.6g}"
        if len(bucket) < samples_per_bin:
            skipped.append(SkippedBin(label, len(bucket), samples_per_bin))
            continue
        sample = [bucket[k] for k in sorted(rng.sample(range(len(bucket)), samples_per_bin))]
        ltk_times = []
        edit_times = []
        nms = []
        s12s = []
        for i, j, nm in sample:
            t1, t2 = trees[i], trees[j]
            ltk_times.append(_median_time(lambda: ltk(t1, t2, cfg), repeats))
            edit_times.append(_median_time(lambda: tree_edit_distance(t1, t2), repeats))
            nms.append(nm)
            s12s.append(same_label_pairs(t1, t2))
        rows.append(
            BenchRow(
                label,
                statistics.fmean(ltk_times),
                statistics.fmean(edit_times),
                statistics.fmean(nms),
                statistics.fmean(s12s),
            )
        )
    return rows, skipped


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need two equal-length sequences of at least 2 points")
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx = statistics.fmean(lx)
    my = statistics.fmean(ly)
    sxx = sum((x - mx) ** 2 for x in lx)
    sxy = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    return sxy / sxx
