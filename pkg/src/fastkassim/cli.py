"""Command-line interface.

Commands: score | matrix | bench | eval | features.  All structured output
goes to stdout as JSON or CSV; diagnostics go to stderr as
``fastkassim: <ErrorCode>: message`` lines.  Exit codes: 0 on success, 2 on
input errors.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bench as benchmod
from . import ingest
from .docsim import DocScoreConfig, score_report
from .errors import EmptyDocument, FastkassimError, ParserLaunchFailure
from .evalkit import (
    LabeledPairScore,
    classification_metrics,
    quantile_transform,
    read_scored_csv,
)
from .kernel import KernelConfig
from .treebank import (
    Document,
    read_bracketed,
    read_corpus_records,
    read_tree_documents,
)


def _kernel_config(args) -> KernelConfig:
    return KernelConfig(decay=args.decay, sigma=args.sigma)


def _doc_config(args) -> DocScoreConfig:
    return DocScoreConfig(
        kernel=_kernel_config(args),
        denominator=args.denominator,
        method=args.method,
    )


def _parser_cmd(args) -> str | None:
    return args.parser_cmd or ingest.default_parser_cmd()


def _load_document_arg(arg: str, args, position: int) -> Document:
    """A score/features input: inline bracketed tree, tree file, or raw
    text file (.txt, requires the parser adapter)."""
    if arg.lstrip().startswith("("):
        return Document(f"inline:{position}", (read_bracketed(arg),))
    path = Path(arg)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".txt":
        cmd = _parser_cmd(args)
        if not cmd:
            raise ParserLaunchFailure(
                f"{arg}: raw text input needs --parser-cmd or ${ingest.PARSER_CMD_ENV}"
            )
        return ingest.parse_document(
            text, cmd, doc_id=path.name, cache_dir=args.cache_dir
        )
    docs = read_tree_documents(text, source=str(path))
    if not docs:
        raise EmptyDocument(f"{arg} contains no trees")
    if len(docs) > 1:
        raise EmptyDocument(
            f"{arg} contains {len(docs)} documents; score takes exactly one per input"
        )
    return Document(path.name, docs[0].trees)


def _load_corpus(path: str, args) -> list[Document]:
    records = read_corpus_records(Path(path).read_text(encoding="utf-8"))
    docs = []
    for rec in records:
        if rec.trees is not None:
            try:
                trees = tuple(read_bracketed(t) for t in rec.trees)
            except FastkassimError as e:
                e.args = (f"{path} line {rec.line} (document {rec.id!r}): {e}",)
                raise
            docs.append(Document(rec.id, trees))
        else:
            cmd = _parser_cmd(args)
            if not cmd:
                raise ParserLaunchFailure(
                    f"{path} line {rec.line}: raw text document {rec.id!r} "
                    f"needs --parser-cmd or ${ingest.PARSER_CMD_ENV}"
                )
            docs.append(
                ingest.parse_document(
                    rec.text or "", cmd, doc_id=rec.id, cache_dir=args.cache_dir
                )
            )
    return docs


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


# --- score ---


def cmd_score(args) -> int:
    doc1 = _load_document_arg(args.doc1, args, 1)
    doc2 = _load_document_arg(args.doc2, args, 2)
    report = score_report(doc1, doc2, _doc_config(args), with_stats=args.stats)
    _emit_json(report)
    return 0


# --- matrix ---

_POOL_DOCS: list[Document] = []
_POOL_CFG: DocScoreConfig | None = None


def _pool_init(docs: list[Document], cfg: DocScoreConfig) -> None:
    global _POOL_DOCS, _POOL_CFG
    _POOL_DOCS = docs
    _POOL_CFG = cfg


def _pool_cell(task: tuple[int, int]) -> tuple[int, int, float]:
    from .docsim import cassim_score, fastkassim_score

    i, j = task
    assert _POOL_CFG is not None
    if _POOL_CFG.method == "cassim":
        value = cassim_score(_POOL_DOCS[i], _POOL_DOCS[j])
    else:
        value = fastkassim_score(_POOL_DOCS[i], _POOL_DOCS[j], _POOL_CFG)
    return i, j, value


def cmd_matrix(args) -> int:
    docs = _load_corpus(args.corpus, args)
    if not docs:
        raise EmptyDocument(f"{args.corpus} contains no documents")
    for doc in docs:
        if not doc.trees:
            raise EmptyDocument(f"document {doc.id!r} has no sentences")
    cfg = _doc_config(args)
    n = len(docs)
    tasks = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if args.jobs > 1 and tasks:
        with ProcessPoolExecutor(
            max_workers=args.jobs, initializer=_pool_init, initargs=(docs, cfg)
        ) as ex:
            chunk = max(1, len(tasks) // (args.jobs * 4))
            results = list(ex.map(_pool_cell, tasks, chunksize=chunk))
    else:
        _pool_init(docs, cfg)
        results = [_pool_cell(t) for t in tasks]
    cells = [[0.0] * n for _ in range(n)]
    for i in range(n):
        cells[i][i] = 1.0  # score of a document against itself
    for i, j, value in results:
        cells[i][j] = value
        cells[j][i] = value
    out = sys.stdout
    out.write("id," + ",".join(d.id for d in docs) + "\n")
    for i, doc in enumerate(docs):
        out.write(doc.id + "," + ",".join(repr(v) for v in cells[i]) + "\n")
    return 0


# --- bench ---


def cmd_bench(args) -> int:
    if args.end_to_end:
        return _bench_end_to_end(args)
    docs = _load_corpus(args.corpus, args)
    trees = [t for d in docs for t in d.trees]
    rows, skipped = benchmod.run_bench(
        trees,
        bins=args.bins,
        samples_per_bin=args.samples_per_bin,
        seed=args.seed,
        repeats=args.repeats,
        cfg=_kernel_config(args),
    )
    for skip in skipped:
        sys.stderr.write(
            f"fastkassim: InsufficientPairsInBin: bin {skip.bin_label} has "
            f"{skip.available} pairs, needs {skip.requested}; skipped\n"
        )
    out = sys.stdout
    out.write("bin,mean_ltk_time,mean_editdist_time,mean_nm,mean_s12\n")
    for row in rows:
        out.write(
            f"{row.bin_label},{row.mean_ltk_time!r},{row.mean_editdist_time!r},"
            f"{row.mean_nm!r},{row.mean_s12!r}\n"
        )
    return 0


def _bench_end_to_end(args) -> int:
    """Pair whole raw-text documents and time parsing plus scoring."""
    import random

    from .docsim import cassim_score, fastkassim_score
    from .treebank import same_label_pairs

    cmd = _parser_cmd(args)
    if not cmd:
        raise ParserLaunchFailure(
            f"--end-to-end needs --parser-cmd or ${ingest.PARSER_CMD_ENV}"
        )
    records = read_corpus_records(Path(args.corpus).read_text(encoding="utf-8"))
    texts = [(r.id, r.text) for r in records if r.text is not None]
    if len(texts) < 2:
        raise EmptyDocument("--end-to-end needs a corpus of at least 2 raw-text documents")
    cfg = _doc_config(args)
    rng = random.Random(args.seed)
    sentences = {doc_id: ingest.segment(text) for doc_id, text in texts}
    pairs = [
        (a, b, len(sentences[a[0]]) * len(sentences[b[0]]))
        for idx, a in enumerate(texts)
        for b in texts[idx + 1 :]
    ]
    pairs = [p for p in pairs if p[2] > 0]
    chosen = [pairs[k] for k in sorted(rng.sample(range(len(pairs)), min(args.samples_per_bin, len(pairs))))]
    out = sys.stdout
    out.write("bin,mean_ltk_time,mean_editdist_time,mean_nm,mean_s12\n")
    ltk_times, edit_times, nms, s12s = [], [], [], []
    for (id1, text1), (id2, text2), nm in chosen:
        start = time.perf_counter()
        d1 = ingest.parse_document(text1 or "", cmd, doc_id=id1)
        d2 = ingest.parse_document(text2 or "", cmd, doc_id=id2)
        fastkassim_score(d1, d2, cfg)
        ltk_times.append(time.perf_counter() - start)
        start = time.perf_counter()
        d1 = ingest.parse_document(text1 or "", cmd, doc_id=id1)
        d2 = ingest.parse_document(text2 or "", cmd, doc_id=id2)
        cassim_score(d1, d2)
        edit_times.append(time.perf_counter() - start)
        nms.append(nm)
        s12s.append(
            sum(same_label_pairs(ta, tb) for ta in d1.trees for tb in d2.trees)
        )
    out.write(
        "all,%r,%r,%r,%r\n"
        % (
            statistics.fmean(ltk_times),
            statistics.fmean(edit_times),
            statistics.fmean(nms),
            statistics.fmean(s12s),
        )
    )
    return 0


# --- eval ---


def cmd_eval(args) -> int:
    rows = read_scored_csv(Path(args.scores).read_text(encoding="utf-8"))
    scores = [p.score for _, p in rows]
    if args.quantile:
        scores = quantile_transform(scores)
    labeled = [
        LabeledPairScore(score=s, same_source=p.same_source)
        for s, (_, p) in zip(scores, rows)
    ]
    metrics = classification_metrics(labeled, threshold=args.threshold)
    _emit_json(
        {
            "n": len(labeled),
            "threshold": args.threshold,
            "quantile": bool(args.quantile),
            "metrics": metrics,
        }
    )
    return 0


# --- features ---


def cmd_features(args) -> int:
    from .docsim import syntax_features

    target = _load_document_arg(args.target, args, 0)
    reference_sets = [_load_corpus(path, args) for path in args.references]
    features = syntax_features(
        target,
        reference_sets,
        cfg=_doc_config(args),
        sample_size=args.sample_size,
        seed=args.seed,
    )
    _emit_json(
        {
            "target": target.id,
            "reference_sets": list(args.references),
            "sample_size": args.sample_size,
            "seed": args.seed,
            "std": "population",
            "features": features,
        }
    )
    return 0


# --- argument plumbing ---


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--lambda",
        dest="decay",
        type=float,
        default=KernelConfig().decay,
        help="kernel decay factor in (0, 1]",
    )
    common.add_argument(
        "--sigma",
        type=int,
        choices=(0, 1),
        default=KernelConfig().sigma,
        help="0: count only full subtrees; 1: count subset trees",
    )
    common.add_argument(
        "--denominator",
        choices=("longer_doc", "pairings"),
        default="longer_doc",
        help="kernel-method score denominator",
    )
    common.add_argument(
        "--method",
        choices=("fastkassim", "cassim"),
        default="fastkassim",
        help="document similarity method",
    )
    common.add_argument(
        "--parser-cmd",
        default=None,
        help=f"external parser command (default: ${ingest.PARSER_CMD_ENV})",
    )
    common.add_argument("--cache-dir", default=None, help="parse cache directory")
    common.add_argument("--seed", type=int, default=0, help="RNG seed")
    common.add_argument(
        "--jobs", type=int, default=1, help="parallel workers for pair computations"
    )

    parser = argparse.ArgumentParser(
        prog="fastkassim",
        description="Utterance- and document-level syntactic similarity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", parents=[common], help="score one document pair")
    p.add_argument("doc1", help="tree file, raw-text .txt file, or inline bracketed tree")
    p.add_argument("doc2")
    p.add_argument("--stats", action="store_true", help="include kernel instrumentation")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("matrix", parents=[common], help="all-pairs corpus score matrix")
    p.add_argument("corpus", help="JSONL corpus file")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("bench", parents=[common], help="kernel vs edit-distance runtime")
    p.add_argument("corpus", help="JSONL corpus of pre-parsed documents")
    p.add_argument("--bins", type=int, default=6)
    p.add_argument("--samples-per-bin", type=int, default=60)
    p.add_argument("--repeats", type=int, default=5, help="timing repeats per pair (median)")
    p.add_argument(
        "--end-to-end",
        action="store_true",
        help="time whole-document scoring including external parsing",
    )
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("eval", parents=[common], help="classification metrics for scored pairs")
    p.add_argument("scores", help="CSV with pair_id, score, same_source columns")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument(
        "--quantile",
        action="store_true",
        help="quantile-transform scores before thresholding",
    )
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("features", parents=[common], help="syntax feature vector")
    p.add_argument("target", help="document to featurize")
    p.add_argument("references", nargs="+", help="JSONL reference corpora, one per set")
    p.add_argument("--sample-size", type=int, default=25)
    p.set_defaults(func=cmd_features)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FastkassimError as e:
        sys.stderr.write(f"fastkassim: {e.code}: {e}\n")
        return 2
    except OSError as e:
        name = getattr(e, "filename", None)
        detail = f"{e.strerror or e}: {name}" if name else str(e)
        sys.stderr.write(f"fastkassim: IOError: {detail}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
