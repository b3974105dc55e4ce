"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line with the measured values.  Run with ``pytest -s
tests/test_acceptance.py`` to see the lines as they happen.
"""

import json
import math
import random
import statistics
import subprocess
import sys
import time

import pytest

from fastkassim import (
    DocScoreConfig,
    Document,
    KernelConfig,
    cassim_normalized_distance,
    cassim_score,
    classification_metrics,
    enumerate_common_fragments,
    fastkassim_score,
    ltk,
    ltk_normalized,
    quantile_transform,
    read_bracketed,
    same_label_pairs,
    solve,
    tree_edit_distance,
)
from fastkassim.assignment import ScoreMatrix
from fastkassim.bench import loglog_slope, run_bench, synthetic_corpus
from fastkassim.evalkit import LabeledPairScore
from fastkassim.ingest import parse_external, segment
from helpers import (
    brute_best_assignment,
    naive_edit_distance,
    random_shape,
    random_tree,
    tree_from_shape,
)

CLI = [sys.executable, "-m", "fastkassim.cli"]


def report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_kernel_oracle_equivalence():
    rng = random.Random(1001)
    configs = [
        KernelConfig(decay=1.0, sigma=1),
        KernelConfig(decay=1.0, sigma=0),
        KernelConfig(decay=0.4, sigma=1),
        KernelConfig(decay=0.4, sigma=0),
    ]
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        t1 = random_tree(rng, 12)
        t2 = random_tree(rng, 12)
        for cfg in configs:
            kernel, _ = ltk(t1, t2, cfg)
            oracle = enumerate_common_fragments(t1, t2, cfg)
            if cfg.decay == 1.0:
                err = abs(kernel - oracle)
            else:
                err = abs(kernel - oracle) / max(abs(oracle), 1e-300) if oracle else abs(kernel)
            worst = max(worst, err)
    elapsed = time.perf_counter() - start
    report(
        "kernel oracle equivalence",
        worst <= 1e-9 and elapsed < 30.0,
        f"200 pairs x 4 configs, worst error {worst:.2e}, {elapsed:.1f}s",
    )


def test_identity_scores(fixture_corpus):
    worst_fast = 0.0
    cassim_exact = True
    for doc in fixture_corpus:
        worst_fast = max(worst_fast, abs(fastkassim_score(doc, doc) - 1.0))
        cassim_exact = cassim_exact and cassim_score(doc, doc) == 1.0
    report(
        "identity scores",
        worst_fast <= 1e-9 and cassim_exact,
        f"{len(fixture_corpus)} documents, fastkassim worst |1-score| {worst_fast:.2e}, "
        f"cassim exact: {cassim_exact}",
    )


def test_hand_derived_kernel_fixture():
    cfg = KernelConfig(decay=1.0, sigma=1)
    t1 = read_bracketed("(S (NP (DT d)) (VP (VB v)))")
    t3 = read_bracketed("(S (NP (DT d)) (VP (VB v) (NP (DT d))))")
    k11 = ltk(t1, t1, cfg)[0]
    k33 = ltk(t3, t3, cfg)[0]
    k13 = ltk(t1, t3, cfg)[0]
    normalized = ltk_normalized(t1, t3, cfg)
    oracle_vals = (
        enumerate_common_fragments(t1, t1, cfg),
        enumerate_common_fragments(t3, t3, cfg),
        enumerate_common_fragments(t1, t3, cfg),
    )
    ok = (
        (k11, k33, k13) == (15.0, 40.0, 18.0)
        and oracle_vals == (15.0, 40.0, 18.0)
        and abs(normalized - 0.7348) <= 1e-4
    )
    report(
        "hand-derived kernel fixture",
        ok,
        f"kernels {k11}/{k33}/{k13}, normalized {normalized:.6f}",
    )


def test_qualitative_reproduction(lookup_parser_cmd):
    sentences = {
        "similar_a": ["I like swimming because it is cool."],
        "similar_b": ["I love running because it is fun."],
        "dissimilar_a": [
            "When we hate, we always move away from the grace of God.",
            "When we become resentful and unforgiving, the world around us seems spiteful and meaningless.",
        ],
        "dissimilar_b": ["How can you be skiing if you are already swimming?"],
    }
    docs = {}
    for name, text in sentences.items():
        joined = " ".join(text)
        segmented = segment(joined)
        assert segmented == text
        docs[name] = Document(name, tuple(parse_external(segmented, lookup_parser_cmd)))
    cfg = DocScoreConfig()
    similar = fastkassim_score(docs["similar_a"], docs["similar_b"], cfg)
    dissimilar = fastkassim_score(docs["dissimilar_a"], docs["dissimilar_b"], cfg)
    baseline_dissimilar = cassim_score(docs["dissimilar_a"], docs["dissimilar_b"])
    ok = similar >= 0.80 and dissimilar <= 0.35 and baseline_dissimilar >= 0.60
    report(
        "qualitative similar/dissimilar reproduction",
        ok,
        f"fastkassim similar {similar:.3f} (>=0.80), dissimilar {dissimilar:.3f} (<=0.35), "
        f"cassim dissimilar {baseline_dissimilar:.3f} (>=0.60)",
    )


def test_shape_bias():
    rng = random.Random(1002)
    cfg = KernelConfig()
    distances = []
    kernels = []
    for _ in range(10):
        shape = random_shape(rng, 40)
        t1 = tree_from_shape(shape, [f"A{rng.randrange(8)}" for _ in range(40)])
        t2 = tree_from_shape(shape, [f"B{rng.randrange(8)}" for _ in range(40)])
        distances.append(cassim_normalized_distance(t1, t2))
        kernels.append(ltk_normalized(t1, t2, cfg))
    ok = all(0.45 <= d <= 0.56 for d in distances) and all(k == 0.0 for k in kernels)
    report(
        "shape bias",
        ok,
        f"normalized distances {min(distances):.3f}..{max(distances):.3f} in [0.45,0.56], "
        f"kernel all 0.0: {all(k == 0.0 for k in kernels)}",
    )


def test_complexity_instrumentation():
    docs = synthetic_corpus(1003, sizes=[10, 18, 32, 56, 100, 178, 316], per_size=4)
    trees = [t for d in docs for t in d.trees]
    cfg = KernelConfig()
    bound_ok = True
    for i in range(len(trees)):
        for j in range(i + 1, len(trees)):
            _, stats = ltk(trees[i], trees[j], cfg)
            if stats.cache_entries > stats.s12:
                bound_ok = False
    rows, skipped = run_bench(
        trees, bins=7, samples_per_bin=3, seed=1003, repeats=5, cfg=cfg
    )
    assert not skipped, f"benchmark bins skipped: {skipped}"
    nms = [r.mean_nm for r in rows]
    ltk_slope = loglog_slope(nms, [r.mean_ltk_time for r in rows])
    edit_slope = loglog_slope(nms, [r.mean_editdist_time for r in rows])
    ok = bound_ok and ltk_slope < edit_slope and ltk_slope < 1.0 and edit_slope > 1.0
    report(
        "complexity instrumentation",
        ok,
        f"cache<=s12 on all pairs: {bound_ok}; kernel slope {ltk_slope:.3f} (<1.0), "
        f"edit slope {edit_slope:.3f} (>1.0), NM {min(nms):.0f}..{max(nms):.0f}",
    )


def test_document_scoring_speedup():
    docs = synthetic_corpus(1004, sizes=[16], per_size=2, trees_per_doc=20)
    d1, d2 = docs

    def timed(fn):
        times = []
        for _ in range(3):
            start = time.perf_counter()
            fn()
            times.append(time.perf_counter() - start)
        return statistics.median(times)

    fast = timed(lambda: fastkassim_score(d1, d2))
    slow = timed(lambda: cassim_score(d1, d2))
    ratio = slow / fast
    report(
        "document scoring speedup",
        ratio >= 2.0,
        f"20-sentence docs: fastkassim {fast * 1e3:.1f}ms vs cassim {slow * 1e3:.1f}ms "
        f"({ratio:.1f}x, floor 2x)",
    )


def test_assignment_oracle():
    rng = random.Random(1005)
    worst = 0.0
    for trial in range(500):
        r = rng.randint(1, 6)
        c = rng.randint(1, 6)
        rows = [[rng.random() for _ in range(c)] for _ in range(r)]
        sense = "maximize" if trial % 2 == 0 else "minimize"
        got = solve(ScoreMatrix.from_rows(rows), sense).objective
        expected = brute_best_assignment(rows, sense)
        worst = max(worst, abs(got - expected))
    report(
        "assignment brute-force oracle",
        worst <= 1e-12,
        f"500 random matrices up to 6x6, worst objective error {worst:.2e}",
    )


def test_edit_distance_oracle():
    rng = random.Random(1006)
    mismatches = 0
    for _ in range(200):
        t1 = random_tree(rng, 8, min_nodes=1)
        t2 = random_tree(rng, 8, min_nodes=1)
        if tree_edit_distance(t1, t2) != naive_edit_distance(t1, t2):
            mismatches += 1
    report(
        "edit distance oracle",
        mismatches == 0,
        f"200 random pairs up to 8 nodes, {mismatches} mismatches",
    )


def test_evalkit_formulas():
    metrics = classification_metrics(
        [
            LabeledPairScore(0.7, True),
            LabeledPairScore(0.3, True),
            LabeledPairScore(0.6, False),
            LabeledPairScore(0.2, False),
        ]
    )
    expected = {
        "accuracy": 0.5,
        "sim_recall": 0.5,
        "sim_precision": 0.5,
        "dis_recall": 0.5,
        "dis_precision": 0.5,
    }
    quantiles = quantile_transform([0.2, 0.5, 0.9])
    ok = metrics == expected and quantiles == [0.0, 0.5, 1.0]
    report(
        "evaluation formulas",
        ok,
        f"toy confusion {metrics}, quantile {quantiles}",
    )


def test_matrix_byte_determinism(tmp_path):
    rng = random.Random(1007)
    lines = []
    for k in range(5):
        trees = [random_tree(rng, 10).text for _ in range(rng.randint(1, 3))]
        lines.append(json.dumps({"id": f"doc{k}", "trees": trees}))
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    outputs = []
    for jobs in ("1", "8"):
        proc = subprocess.run(
            CLI + ["matrix", "--jobs", jobs, str(corpus)],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    ok = outputs[0] == outputs[1]
    report(
        "matrix byte determinism",
        ok,
        f"--jobs 1 vs --jobs 8 identical: {ok} ({len(outputs[0])} bytes)",
    )
