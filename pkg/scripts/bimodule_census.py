"""Census of quadratic forms on A + A: filter counts and twist-orbit sizes for several A."""
import argparse
import json

from tycat.abelian import parse_group
from tycat.extension import (
    enumerate_bimodule_forms,
    filter_order_four,
    filter_order_four_literal,
    filter_order_two,
    filter_viable,
    twist_orbits,
)


def census(text: str) -> dict:
    A = parse_group(text)
    forms = enumerate_bimodule_forms(A)
    viable = filter_viable(forms)
    two = filter_order_two(viable)
    return {
        "A": text,
        "forms": len(forms),
        "viable": len(viable),
        "order_two": len(two),
        "order_four": len(filter_order_four(viable)),
        "order_four_antisymmetric": len(filter_order_four_literal(viable)),
        "orbit_sizes": sorted(len(o) for o in twist_orbits(two, A)),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="*", default=["Z2", "Z3", "Z4", "Z5"])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [census(g) for g in args.groups]
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        print(" ".join(f"{k}={v}" for k, v in r.items()))


if __name__ == "__main__":
    main()
