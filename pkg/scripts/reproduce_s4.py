"""Close {a, b} under the twisted product modulo Witt classes and print the multiplication table."""
import argparse
import json
import time

from tycat.presets import preset
from tycat.witt import group_structure


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    t = time.perf_counter()
    gs = group_structure([preset("a"), preset("b")], names=["a", "b"])
    if args.json:
        print(json.dumps(gs.to_json(), indent=2, sort_keys=True))
        return
    words = ["".join(w) or "1" for w in gs.words]
    print(f"order {gs.order}, label {gs.label}, histogram {dict(sorted(gs.histogram.items()))}")
    w = max(len(x) for x in words)
    print(" " * w + " | " + " ".join(f"{x:>{w}}" for x in words))
    for i, row in enumerate(gs.table):
        print(f"{words[i]:>{w}} | " + " ".join(f"{words[j]:>{w}}" for j in row))
    print(f"({time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
