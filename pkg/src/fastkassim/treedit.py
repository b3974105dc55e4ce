"""Ordered tree edit distance and its size-based normalization.

This is the baseline the kernel is compared against: unit-cost insert,
delete, and relabel, computed with the Zhang-Shasha keyroot dynamic
program over postorder-numbered trees.
"""

from __future__ import annotations

from .treebank import ParseTree


def _annotate(tree: ParseTree) -> tuple[list[str], list[int], list[int]]:
    """Postorder labels, leftmost-leaf-descendant indices, and keyroots."""
    labels: list[str] = []
    lmd: list[int] = []
    lmd_of: dict[int, int] = {}
    stack: list[tuple[int, bool]] = [(tree.root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            kids = tree.children[node]
            low = lmd_of[kids[0]] if kids else len(labels)
            lmd_of[node] = low
            lmd.append(low)
            labels.append(tree.labels[node])
        else:
            stack.append((node, True))
            for c in reversed(tree.children[node]):
                stack.append((c, False))
    last_for_lmd: dict[int, int] = {}
    for i, low in enumerate(lmd):
        last_for_lmd[low] = i
    keyroots = sorted(last_for_lmd.values())
    return labels, lmd, keyroots


def tree_edit_distance(t1: ParseTree, t2: ParseTree) -> int:
    """Minimum number of unit-cost node edits transforming t1 into t2."""
    lab1, l1, kr1 = _annotate(t1)
    lab2, l2, kr2 = _annotate(t2)
    n, m = len(lab1), len(lab2)
    td = [[0] * m for _ in range(n)]

    for i in kr1:
        li = l1[i]
        for j in kr2:
            lj = l2[j]
            rows = i - li + 2
            cols = j - lj + 2
            ioff = li - 1
            joff = lj - 1
            fd = [[0] * cols for _ in range(rows)]
            for x in range(1, rows):
                fd[x][0] = x
            first = fd[0]
            for y in range(1, cols):
                first[y] = y
            for x in range(1, rows):
                xo = x + ioff
                lx = l1[xo]
                row = fd[x]
                prev = fd[x - 1]
                lab_x = lab1[xo]
                td_x = td[xo]
                whole_left = lx == li
                for y in range(1, cols):
                    yo = y + joff
                    if whole_left and l2[yo] == lj:
                        cost = 0 if lab_x == lab2[yo] else 1
                        best = prev[y] + 1
                        cand = row[y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = prev[y - 1] + cost
                        if cand < best:
                            best = cand
                        row[y] = best
                        td_x[yo] = best
                    else:
                        best = prev[y] + 1
                        cand = row[y - 1] + 1
                        if cand < best:
                            best = cand
                        cand = fd[lx - 1 - ioff][l2[yo] - 1 - joff] + td_x[yo]
                        if cand < best:
                            best = cand
                        row[y] = best
    return td[n - 1][m - 1]


def cassim_normalized_distance(t1: ParseTree, t2: ParseTree) -> float:
    """Edit distance divided by (size1 + size2 - 2), clamped to [0, 1].

    Two single-node trees make the denominator zero; that case is defined
    as 0.0 for equal labels and 1.0 otherwise.
    """
    denom = t1.size + t2.size - 2
    if denom == 0:
        return 0.0 if t1.labels[t1.root] == t2.labels[t2.root] else 1.0
    value = tree_edit_distance(t1, t2) / denom
    return min(1.0, max(0.0, value))
