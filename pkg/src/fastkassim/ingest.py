"""Turning raw text into parse-tree documents.

Parsing itself is delegated to an external process speaking a one-line
protocol: the adapter writes one sentence per line to the process's stdin
(UTF-8, LF-terminated) and expects exactly one bracketed tree per line on
stdout, in order.  Any constituency parser can be wrapped this way.

Because parsing dominates end-to-end runtime, parsed documents can be
cached on disk keyed by a content hash of the sentences and the parser
command, so repeated scoring of a corpus launches no parser at all.
"""

from __future__ import annotations

import hashlib
import os
import re
import shlex
import subprocess
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    CacheCorrupt,
    FastkassimError,
    MalformedTree,
    ParserLaunchFailure,
    ParserOutputMismatch,
)
from .treebank import Document, ParseTree, read_bracketed

PARSER_CMD_ENV = "FASTKASSIM_PARSER_CMD"

# words after which a period does not end a sentence
ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof rev hon pres gen rep sen gov capt sgt col lt maj
    sr jr st ave blvd mt
    e.g i.e etc vs cf al ca approx dept est fig inc ltd no vol p pp
    jan feb mar apr jun jul aug sep sept oct nov dec
    """.split()
)

_SENTENCE_END = re.compile(r"([.!?]+)\s+")


def default_parser_cmd() -> str | None:
    return os.environ.get(PARSER_CMD_ENV) or None


def _ends_abbreviation(chunk: str) -> bool:
    tail = chunk.rsplit(None, 1)[-1] if chunk.split() else chunk
    core = tail.rstrip(".!?").strip("\"'()[]")
    if not core:
        return False
    if len(core) == 1 and core.isalpha():
        return True  # single-letter initials ("J. Smith")
    return core.lower() in ABBREVIATIONS


def segment(text: str) -> list[str]:
    """Split raw text into sentences.

    Splits after runs of sentence-final punctuation followed by whitespace,
    unless the preceding token is a known abbreviation.  All non-whitespace
    content is preserved across the returned sentences.
    """
    sentences: list[str] = []
    start = 0
    for m in _SENTENCE_END.finditer(text):
        if m.group(1).endswith(".") and _ends_abbreviation(text[start : m.end(1)]):
            continue
        sentence = text[start : m.end(1)].strip()
        if sentence:
            sentences.append(sentence)
        start = m.end()
    rest = text[start:].strip()
    if rest:
        sentences.append(rest)
    return sentences


def parse_external(sentences: list[str], parser_cmd: str) -> list[ParseTree]:
    """Run the external parser over sentences via the line protocol."""
    if not sentences:
        return []
    argv = shlex.split(parser_cmd)
    if not argv:
        raise ParserLaunchFailure("parser command is empty")
    payload = "".join(
        " ".join(s.split()) + "\n" for s in sentences
    )  # protocol is line-based; collapse any internal newlines
    try:
        proc = subprocess.run(
            argv,
            input=payload.encode("utf-8"),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
    except OSError as e:
        raise ParserLaunchFailure(f"cannot launch parser {parser_cmd!r}: {e}") from e
    if proc.returncode != 0:
        detail = proc.stderr.decode("utf-8", "replace").strip()
        raise ParserLaunchFailure(
            f"parser {parser_cmd!r} exited with status {proc.returncode}: {detail}"
        )
    lines = proc.stdout.decode("utf-8").splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) != len(sentences):
        raise ParserOutputMismatch(
            f"sent {len(sentences)} sentences, parser returned {len(lines)} trees"
        )
    trees = []
    for lineno, line in enumerate(lines, start=1):
        try:
            trees.append(read_bracketed(line))
        except FastkassimError as e:
            raise MalformedTree(f"parser output is not a valid tree: {e}", lineno) from e
    return trees


@dataclass
class ParseStats:
    """Counters for observing cache effectiveness."""

    launches: int = 0
    cache_hits: int = 0
    cache_misses: int = 0


def _cache_path(cache_dir: str | Path, sentences: list[str], parser_cmd: str) -> Path:
    h = hashlib.sha256()
    h.update(parser_cmd.encode("utf-8"))
    h.update(b"\x00")
    h.update("\n".join(sentences).encode("utf-8"))
    digest = h.hexdigest()
    return Path(cache_dir) / digest[:2] / f"{digest}.trees"


def _read_cache(path: Path, expected: int) -> list[ParseTree]:
    lines = [
        line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()
    ]
    if len(lines) != expected:
        raise CacheCorrupt(
            f"cache entry {path} holds {len(lines)} trees, expected {expected}"
        )
    try:
        return [read_bracketed(line) for line in lines]
    except FastkassimError as e:
        raise CacheCorrupt(f"cache entry {path} is unreadable: {e}") from e


def _write_cache(path: Path, trees: list[ParseTree]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write("".join(t.text + "\n" for t in trees))
        os.replace(tmp, path)  # atomic; concurrent writers cannot corrupt entries
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cached_parse(
    text: str,
    cache_dir: str | Path,
    parser_cmd: str,
    doc_id: str = "",
    stats: ParseStats | None = None,
) -> Document:
    """Segment and parse raw text, reusing a persistent on-disk cache.

    The cache key covers both the sentences and the parser command, so a
    changed parser is a miss.  A corrupt entry is discarded with a warning
    and the text is reparsed.
    """
    stats = stats if stats is not None else ParseStats()
    sentences = segment(text)
    path = _cache_path(cache_dir, sentences, parser_cmd)
    if sentences and path.exists():
        try:
            trees = _read_cache(path, len(sentences))
            stats.cache_hits += 1
            return Document(doc_id or path.stem[:12], tuple(trees))
        except CacheCorrupt as e:
            warnings.warn(str(e), stacklevel=2)
    stats.cache_misses += 1
    if sentences:
        stats.launches += 1
    trees = parse_external(sentences, parser_cmd)
    if trees:
        _write_cache(path, trees)
    return Document(doc_id or path.stem[:12], tuple(trees))


def parse_document(
    text: str,
    parser_cmd: str,
    doc_id: str = "",
    cache_dir: str | Path | None = None,
    stats: ParseStats | None = None,
) -> Document:
    """Parse raw text into a Document, optionally through the cache."""
    if cache_dir is not None:
        return cached_parse(text, cache_dir, parser_cmd, doc_id=doc_id, stats=stats)
    if stats is not None:
        stats.cache_misses += 1
        stats.launches += 1
    trees = parse_external(segment(text), parser_cmd)
    return Document(doc_id, tuple(trees))
