"""Shared test utilities: random tree generators and independent oracles.

The oracles here deliberately take different algorithmic routes than the
library (plain double loops, the rightmost-root forest recurrence,
exhaustive assignment search) so agreement is meaningful.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

from fastkassim import Document, ParseTree, read_bracketed

DEFAULT_LABELS = ["S", "NP", "VP", "PP", "DT", "NN", "VB", "JJ"]
WORDS = ["a", "b", "c", "d", "e"]


def random_tree(
    rng: random.Random,
    max_nodes: int,
    labels: list[str] | None = None,
    min_nodes: int = 2,
) -> ParseTree:
    """Random ordered tree; childless nodes become word terminals."""
    labels = labels or DEFAULT_LABELS
    n = rng.randint(min_nodes, max_nodes)
    kids: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        kids[rng.randrange(i)].append(i)

    def render(i: int) -> str:
        if not kids[i]:
            return rng.choice(WORDS)
        return "(%s %s)" % (rng.choice(labels), " ".join(render(c) for c in kids[i]))

    if not kids[0]:
        return read_bracketed("(%s)" % rng.choice(labels))
    return read_bracketed(render(0))


def random_document(
    rng: random.Random, doc_id: str, sentences: int, max_nodes: int = 10
) -> Document:
    return Document(
        doc_id, tuple(random_tree(rng, max_nodes) for _ in range(sentences))
    )


def random_shape(rng: random.Random, n: int) -> list[list[int]]:
    """Random parent structure shared by same-shape tree pairs."""
    kids: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, n):
        kids[rng.randrange(i)].append(i)
    return kids


def tree_from_shape(shape: list[list[int]], labels: list[str]) -> ParseTree:
    def render(i: int) -> str:
        if not shape[i]:
            return labels[i]
        return "(%s %s)" % (labels[i], " ".join(render(c) for c in shape[i]))

    if not shape[0]:
        return read_bracketed("(%s)" % labels[0])
    return read_bracketed(render(0))


def brute_same_label_pairs(t1: ParseTree, t2: ParseTree) -> int:
    """Literal double loop over non-terminal nodes."""
    count = 0
    for i in range(t1.size):
        if t1.is_terminal[i]:
            continue
        for j in range(t2.size):
            if t2.is_terminal[j]:
                continue
            if t1.labels[i] == t2.labels[j]:
                count += 1
    return count


def naive_edit_distance(t1: ParseTree, t2: ParseTree) -> int:
    """Forest edit distance by the rightmost-root recurrence (memoized)."""

    def weight(t: ParseTree, i: int) -> int:
        return 1 + sum(weight(t, c) for c in t.children[i])

    @lru_cache(maxsize=None)
    def fed(f1: tuple[int, ...], f2: tuple[int, ...]) -> int:
        if not f1 and not f2:
            return 0
        if not f1:
            return sum(weight(t2, r) for r in f2)
        if not f2:
            return sum(weight(t1, r) for r in f1)
        r1, rest1 = f1[-1], f1[:-1]
        r2, rest2 = f2[-1], f2[:-1]
        c1 = tuple(t1.children[r1])
        c2 = tuple(t2.children[r2])
        best = 1 + fed(rest1 + c1, f2)
        insert = 1 + fed(f1, rest2 + c2)
        if insert < best:
            best = insert
        relabel = 0 if t1.labels[r1] == t2.labels[r2] else 1
        match = fed(rest1, rest2) + fed(c1, c2) + relabel
        if match < best:
            best = match
        return best

    result = fed((t1.root,), (t2.root,))
    fed.cache_clear()
    return result


def brute_best_assignment(values: list[list[float]], sense: str) -> float:
    """Exhaustive search over all injective row-to-column assignments."""
    rows = len(values)
    cols = len(values[0])
    transposed = rows > cols
    if transposed:
        values = [[values[i][j] for i in range(rows)] for j in range(cols)]
        rows, cols = cols, rows
    best = None
    for combo in permutations(range(cols), rows):
        total = sum(values[i][combo[i]] for i in range(rows))
        if best is None:
            best = total
        elif sense == "maximize":
            best = max(best, total)
        else:
            best = min(best, total)
    assert best is not None
    return best
