"""Table of H^d(G; M) by the periodic and bar routes, flagging any disagreement."""
import argparse

from tycat.abelian import parse_group
from tycat.cohomology import cohomology_bar, cohomology_cyclic, cohomology_torus, parse_module, torus_bar
from tycat.errors import CapExceeded

DEFAULT = ["Z2:Z2", "Z2:Z2+Z2:swap", "Z4:Z4:neg", "Z4:Z2+Z2:swap", "Z4:Z2+Z2:smatrix", "Z3:Z3", "Z4:torus"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*", default=DEFAULT, help="GROUP:MODULE, e.g. Z4:Z2+Z2:swap")
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args()
    for case in args.cases:
        g, m = case.split(":", 1)
        G = parse_group(g)
        cells = []
        for d in range(args.max_degree + 1):
            try:
                if m == "torus":
                    if d == 0:
                        continue
                    a, b = cohomology_torus(G, d, "periodic").literal(), torus_bar(G, d).literal()
                else:
                    mod = parse_module(m, G)
                    a = cohomology_cyclic(G.order, mod, d).literal()
                    b = cohomology_bar(mod, d, representatives=False).literal()
            except CapExceeded:
                cells.append(f"H{d}=cap")
                continue
            cells.append(f"H{d}={a}" if a == b else f"H{d}={a}|bar:{b} MISMATCH")
        print(f"{case:<20} " + "  ".join(cells))


if __name__ == "__main__":
    main()
