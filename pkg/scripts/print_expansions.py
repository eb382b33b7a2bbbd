#!/usr/bin/env python3
"""Print the five generating-function expansions and the tree-constant table.

Usage: python scripts/print_expansions.py [--labels 1,2] [--max-weight 3]
"""

import argparse

from treehopf import gl, ncs
from treehopf.trees import enumerate_bplus_trees, tree_text


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--labels", default="1,2")
    ap.add_argument("--max-weight", type=int, default=3)
    args = ap.parse_args()
    labels = tuple(int(x) for x in args.labels.split(","))

    omega = ncs.build_omega(labels, args.max_weight)
    for name in ("f", "g", "d", "h", "m"):
        series = omega.series_by_name(name)
        print(f"series {name} over labels {sorted(labels)}:")
        for degree, coeff in enumerate(series.coeffs):
            print(f"  t^{degree}: {gl.text(coeff)}")
        print()

    print("tree constants (grafting-rooted, single label, by weight):")
    for m in range(1, args.max_weight + 1):
        for t in enumerate_bplus_trees((1,), m):
            value = ncs.theta_recurrence(t)
            if value:
                print(f"  {tree_text(t)}: {value}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
