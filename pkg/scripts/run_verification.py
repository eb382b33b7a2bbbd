#!/usr/bin/env python3
"""Run every verification suite at desk scale and print a summary.

Usage: python scripts/run_verification.py [--labels 1,2] [--max-weight 4]
                                          [--max-vertices 6]
Exit code 0 means every suite passed.
"""

import argparse
import time

from treehopf import duality, ncs, orderpoly


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--labels", default="1,2")
    ap.add_argument("--max-weight", type=int, default=4)
    ap.add_argument("--max-vertices", type=int, default=6)
    args = ap.parse_args()
    labels = tuple(int(x) for x in args.labels.split(","))

    failures = 0

    def show(name, ok, started, detail=""):
        nonlocal failures
        if not ok:
            failures += 1
        status = "pass" if ok else "FAIL"
        print(f"{name:<22} {status}  ({time.time() - started:.2f}s) {detail}")

    t0 = time.time()
    rep = ncs.verify_ncs(ncs.build_omega(labels, args.max_weight))
    show("defining equations", rep.ok, t0)

    t0 = time.time()
    rep = ncs.kappa_expansion_check(labels, args.max_weight)
    show("shrub expansion", rep.ok, t0, f"{rep.checked} degrees")

    t0 = time.time()
    rep = duality.check_hopf_adjunction(labels, min(args.max_weight, 4))
    show("duality adjunction", rep.ok, t0, f"{rep.checked} pairings")

    t0 = time.time()
    rep = ncs.specialization_check(labels, args.max_weight)
    show("specialization", rep.ok, t0, f"{rep.checked} coefficients")

    t0 = time.time()
    rep = ncs.hopf_morphism_check(labels, args.max_weight)
    show("coalgebra morphism", rep.ok, t0, f"{rep.checked} checks")

    t0 = time.time()
    rep = ncs.theta_agreement_report(args.max_vertices)
    show("tree constants", rep.ok, t0, f"{rep.checked} trees, three routes")

    t0 = time.time()
    rep = orderpoly.orderpoly_suite(args.max_vertices)
    show("order polynomials", rep.ok, t0, f"{rep.checked} identities")

    print()
    print("specialization rank by weight (diagnostic only):")
    for m, stats in ncs.specialization_rank(labels, args.max_weight).items():
        print(
            f"  weight {m}: rank {stats['rank']} of {stats['dimension']} words"
            f" into {stats['target_dimension']} trees"
        )

    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
