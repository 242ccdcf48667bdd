"""Orders of the shipped elements, raw (A-trivial powers) and modulo Witt classes."""
import argparse

from tycat.errors import CapExceeded
from tycat.presets import preset
from tycat.witt import order_details


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["a", "a-", "b", "c", "c-", "ab", "ba", "a2b", "C"])
    ap.add_argument("--cap-order", type=int, default=12)
    args = ap.parse_args()
    print(f"{'element':<8} {'mod-Witt':>8} {'raw':>5}  decided by")
    for name in args.names:
        X = preset(name)
        row = [name]
        for mode in (True, False):
            try:
                row.append(str(order_details(X, args.cap_order, mod_witt=mode).order))
            except CapExceeded:
                row.append(f">{args.cap_order}")
        tr = order_details(X, args.cap_order).trace
        desc = tr.decided_by if tr is not None else "-"
        print(f"{row[0]:<8} {row[1]:>8} {row[2]:>5}  {desc}")


if __name__ == "__main__":
    main()
