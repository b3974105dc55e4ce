import random
import sys
from pathlib import Path

import pytest

from fastkassim import Document
from fastkassim.treebank import load_tree_documents
from helpers import random_document

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def stub_parser_cmd() -> str:
    return f"{sys.executable} {FIXTURES / 'stub_parser.py'}"


@pytest.fixture(scope="session")
def lookup_parser_cmd() -> str:
    return f"{sys.executable} {FIXTURES / 'lookup_parser.py'}"


def _load_single(name: str) -> Document:
    docs = load_tree_documents(str(FIXTURES / name))
    assert len(docs) == 1
    return Document(name.removesuffix(".trees"), docs[0].trees)


@pytest.fixture(scope="session")
def demo_docs() -> dict[str, Document]:
    return {
        "similar_a": _load_single("demo_similar_a.trees"),
        "similar_b": _load_single("demo_similar_b.trees"),
        "dissimilar_a": _load_single("demo_dissimilar_a.trees"),
        "dissimilar_b": _load_single("demo_dissimilar_b.trees"),
    }


@pytest.fixture(scope="session")
def fixture_corpus(demo_docs) -> list[Document]:
    """Mixed bag of documents used for identity/bounds/symmetry checks."""
    rng = random.Random(20240915)
    docs = list(demo_docs.values())
    docs.extend(random_document(rng, f"rand-{k}", rng.randint(1, 4)) for k in range(8))
    return docs
