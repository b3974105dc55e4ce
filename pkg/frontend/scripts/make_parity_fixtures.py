"""Regenerate tests/fixtures/parity.json: random document pairs for the
binding-vs-CLI parity tests.  Run from the repo root:

    python3 frontend/scripts/make_parity_fixtures.py
"""

import json
import random
from pathlib import Path

LABELS = ["S", "NP", "VP", "PP", "DT", "NN", "VB", "JJ", "RB", "IN"]
WORDS = ["a", "b", "c", "d", "e"]


def random_tree(rng: random.Random) -> str:
    n = rng.randint(2, 10)
    kids = [[] for _ in range(n)]
    for i in range(1, n):
        kids[rng.randrange(i)].append(i)

    def render(i: int) -> str:
        if not kids[i]:
            return rng.choice(WORDS)
        return "(%s %s)" % (rng.choice(LABELS), " ".join(render(c) for c in kids[i]))

    return render(0)


def main() -> None:
    rng = random.Random(424242)
    pairs = [
        {
            "doc1": [random_tree(rng) for _ in range(rng.randint(1, 3))],
            "doc2": [random_tree(rng) for _ in range(rng.randint(1, 3))],
        }
        for _ in range(100)
    ]
    out = Path(__file__).parent.parent / "tests" / "fixtures" / "parity.json"
    out.write_text(json.dumps(pairs, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(pairs)} pairs)")


if __name__ == "__main__":
    main()
