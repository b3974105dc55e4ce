"""Parse-tree data model and bracketed (Penn-Treebank-style) tree I/O.

Trees are rooted, ordered, and labeled.  A node with no children is a
*terminal* (a word token), a node whose children are all terminals is a
*preterminal* (a part-of-speech tag), and everything else is *internal*.
Trees and documents are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field

from .errors import EmptyInput, EmptyLabel, MalformedRecord, UnbalancedParens

TERMINAL = "terminal"
PRETERMINAL = "preterminal"
INTERNAL = "internal"

_WHITESPACE = " \t\r\n\f\v"


@dataclass(frozen=True)
class Node:
    """Read-only view of one tree node."""

    label: str
    children: tuple[int, ...]
    kind: str


class ParseTree:
    """One sentence's constituency structure.

    Nodes are indexed 0..size-1 in document (preorder) order with the root
    at index 0.  ``labels[i]`` and ``children[i]`` describe node ``i``;
    derived classifications are precomputed.
    """

    __slots__ = (
        "labels",
        "children",
        "is_terminal",
        "is_preterminal",
        "nonterminals",
        "_nonterm_by_label",
        "_text",
    )

    def __init__(self, labels: list[str], children: list[tuple[int, ...]]):
        if not labels:
            raise EmptyInput("a tree must have at least one node")
        self.labels = tuple(labels)
        self.children = tuple(children)
        is_term = tuple(not kids for kids in self.children)
        self.is_terminal = is_term
        self.is_preterminal = tuple(
            bool(kids) and all(is_term[c] for c in kids) for kids in self.children
        )
        self.nonterminals = tuple(i for i, t in enumerate(is_term) if not t)
        by_label: dict[str, list[int]] = {}
        for i in self.nonterminals:
            by_label.setdefault(self.labels[i], []).append(i)
        self._nonterm_by_label = {k: tuple(v) for k, v in by_label.items()}
        self._text: str | None = None

    @property
    def root(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return len(self.labels)

    def node(self, i: int) -> Node:
        if self.is_terminal[i]:
            kind = TERMINAL
        elif self.is_preterminal[i]:
            kind = PRETERMINAL
        else:
            kind = INTERNAL
        return Node(self.labels[i], self.children[i], kind)

    def nonterminals_labeled(self, label: str) -> tuple[int, ...]:
        """Non-terminal node ids carrying ``label``, in document order."""
        return self._nonterm_by_label.get(label, ())

    @property
    def text(self) -> str:
        """Canonical bracketed form (cached)."""
        if self._text is None:
            self._text = write_bracketed(self)
        return self._text

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParseTree):
            return NotImplemented
        return self.labels == other.labels and self.children == other.children

    def __hash__(self) -> int:
        return hash((self.labels, self.children))

    def __repr__(self) -> str:
        return f"ParseTree({self.text!r})"


@dataclass(frozen=True)
class Document:
    """An ordered list of sentence parse trees under one id."""

    id: str
    trees: tuple[ParseTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))

    @property
    def signature(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.trees)


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def read_bracketed(text: str) -> ParseTree:
    """Parse one bracketed tree expression.

    Labels are NFC-normalized; bare tokens inside parentheses become
    terminal nodes.  Raises UnbalancedParens/EmptyLabel/EmptyInput with a
    byte offset identifying the problem.
    """
    if not text or not text.strip():
        raise EmptyInput("empty tree expression")

    labels: list[str] = []
    children: list[list[int]] = []
    stack: list[int] = []  # ids of open nodes
    root_done = False
    i, n = 0, len(text)

    def new_node(label: str) -> int:
        labels.append(unicodedata.normalize("NFC", label))
        children.append([])
        return len(labels) - 1

    while i < n:
        ch = text[i]
        if ch in _WHITESPACE:
            i += 1
            continue
        if root_done:
            raise UnbalancedParens(
                "unexpected content after complete tree", _byte_offset(text, i)
            )
        if ch == "(":
            i += 1
            j = i
            while j < n and text[j] not in _WHITESPACE and text[j] not in "()":
                j += 1
            if j == i:
                raise EmptyLabel("node label is empty", _byte_offset(text, i))
            node = new_node(text[i:j])
            if stack:
                children[stack[-1]].append(node)
            stack.append(node)
            i = j
        elif ch == ")":
            if not stack:
                raise UnbalancedParens(
                    "unmatched closing parenthesis", _byte_offset(text, i)
                )
            stack.pop()
            if not stack:
                root_done = True
            i += 1
        else:
            j = i
            while j < n and text[j] not in _WHITESPACE and text[j] not in "()":
                j += 1
            if not stack:
                raise UnbalancedParens(
                    "token outside parentheses", _byte_offset(text, i)
                )
            children[stack[-1]].append(new_node(text[i:j]))
            i = j

    if stack:
        raise UnbalancedParens(
            "unclosed parenthesis at end of input", _byte_offset(text, n)
        )
    # nodes were created in preorder, so ids already follow document order
    return ParseTree(labels, [tuple(c) for c in children])


def write_bracketed(tree: ParseTree) -> str:
    """Render a tree in canonical bracketed form.

    Childless non-root nodes are written as bare tokens; the root is always
    parenthesized.  The output parses back to an identical tree.
    """

    def render(i: int) -> str:
        kids = tree.children[i]
        if not kids:
            return tree.labels[i]
        return "(%s %s)" % (tree.labels[i], " ".join(render(c) for c in kids))

    if not tree.children[tree.root]:
        return "(%s)" % tree.labels[tree.root]
    return render(tree.root)


def size(tree: ParseTree) -> int:
    """Total node count, terminals included."""
    return tree.size


def same_label_pairs(t1: ParseTree, t2: ParseTree) -> int:
    """Number of cross-tree non-terminal node pairs sharing a label.

    This is the quantity that drives the tree kernel's running time.
    """
    total = 0
    for label, ids in t1._nonterm_by_label.items():
        other = t2._nonterm_by_label.get(label)
        if other:
            total += len(ids) * len(other)
    return total


# --- file formats ---
#
# Tree files: UTF-8, one bracketed tree per line; blank lines separate
# documents in multi-document files.
#
# Corpus files: JSON Lines, one object per document, either
#   {"id": ..., "trees": ["(S ...)", ...]}   (pre-parsed)
# or
#   {"id": ..., "text": "raw text"}          (needs the parser adapter)


def parse_document(lines: list[str], doc_id: str) -> Document:
    trees = [read_bracketed(line) for line in lines]
    if not trees:
        raise EmptyInput(f"document {doc_id!r} has no trees")
    return Document(doc_id, tuple(trees))


def read_tree_documents(text: str, source: str = "<string>") -> list[Document]:
    """Split a tree file into documents on blank lines."""
    docs: list[Document] = []
    block: list[str] = []
    for line in text.splitlines():
        if line.strip():
            block.append(line)
        elif block:
            docs.append(parse_document(block, f"{source}:{len(docs)}"))
            block = []
    if block:
        docs.append(parse_document(block, f"{source}:{len(docs)}"))
    return docs


def load_tree_documents(path: str) -> list[Document]:
    with open(path, encoding="utf-8") as f:
        return read_tree_documents(f.read(), source=path)


def write_tree_document(doc: Document) -> str:
    return "".join(t.text + "\n" for t in doc.trees)


@dataclass(frozen=True)
class CorpusRecord:
    """One JSONL corpus line, before any parsing of raw text."""

    id: str
    trees: tuple[str, ...] | None = None
    text: str | None = None
    line: int = field(default=0, compare=False)


def read_corpus_records(text: str) -> list[CorpusRecord]:
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecord(f"corpus line {lineno}: invalid JSON: {e}") from e
        if not isinstance(obj, dict) or "id" not in obj:
            raise MalformedRecord(f"corpus line {lineno}: expected an object with an 'id'")
        doc_id = str(obj["id"])
        if "trees" in obj:
            records.append(
                CorpusRecord(doc_id, trees=tuple(obj["trees"]), line=lineno)
            )
        elif "text" in obj:
            records.append(CorpusRecord(doc_id, text=str(obj["text"]), line=lineno))
        else:
            raise MalformedRecord(
                f"corpus line {lineno}: document {doc_id!r} has neither 'trees' nor 'text'"
            )
    return records
