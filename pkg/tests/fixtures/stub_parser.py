"""Test-double parser speaking the line protocol.

Reads sentences from stdin and emits one bracketed tree per line.  Flags
make it misbehave on purpose:

  --tree TEXT   tree to emit for every sentence (default "(X (W w))")
  --drop N      emit N fewer lines than sentences received
  --garbage     emit a non-tree line for the first sentence
  --fail        exit nonzero without output
"""

import argparse
import sys


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--tree", default="(X (W w))")
    ap.add_argument("--drop", type=int, default=0)
    ap.add_argument("--garbage", action="store_true")
    ap.add_argument("--fail", action="store_true")
    args = ap.parse_args()
    if args.fail:
        sys.stderr.write("stub parser told to fail\n")
        return 3
    lines = sys.stdin.read().splitlines()
    out = []
    for i, _ in enumerate(lines):
        if args.garbage and i == 0:
            out.append("this is not a tree (")
        else:
            out.append(args.tree)
    if args.drop:
        out = out[: max(0, len(out) - args.drop)]
    sys.stdout.write("".join(line + "\n" for line in out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
