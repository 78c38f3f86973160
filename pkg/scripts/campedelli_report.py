"""Print the full set of Campedelli computations and optionally dump the ring.

    python scripts/campedelli_report.py [--export ring.json]
"""
import argparse
import logging
import time

from kappacalc.cli import cmd_campedelli_ring, cmd_invariants, cmd_kappa
from kappacalc.equichow import campedelli_ring


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--export", help="write bases of every slice to this JSON file")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    t0 = time.perf_counter()
    reports = [
        cmd_campedelli_ring(verify_generation=True),
        cmd_invariants("gl32"),
        cmd_invariants("s7"),
        cmd_invariants("gl32", alt_labeling=True),
        cmd_kappa(6),
    ]
    for rep in reports:
        print(rep.render())
        print()
    for row in reports[-1].results["table"]:
        print(f"kappa_{row['l']} * 2^{row['l'] + 2} = {row['numerator']}")
    if args.export:
        campedelli_ring().export_json(args.export, 9)
        print(f"ring written to {args.export}")
    print(f"total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
