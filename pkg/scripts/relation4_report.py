"""Which form of the fourth displayed relation family lies in the ideal?

Checks both the z3^2 and the z3^3 reading for every 3-subset of indices and
prints the homogeneous components that fail.
"""
from itertools import combinations

from kappacalc.equichow import campedelli_ring, relation_type4
from kappacalc.exactmath import format_poly


def main():
    R = campedelli_ring()
    for variant in ("corrected", "printed"):
        bad = []
        for idx in combinations(range(1, 8), 3):
            rel = relation_type4(idx, variant)
            for d, comp in sorted(rel.homogeneous_components().items()):
                if not R.ideal_contains(comp):
                    bad.append((idx, d))
        label = "z3^2" if variant == "corrected" else "z3^3"
        print(f"{label}: {35 - len({i for i, _ in bad})}/35 index triples lie in the ideal")
        if bad:
            idx, d = bad[0]
            comp = relation_type4(idx, variant).homogeneous_components()[d]
            print(f"  e.g. {idx}, degree-{d} component not in ideal, normal form "
                  f"{R.normal_form(comp)}")
            print(f"  (component: {format_poly(comp)})")


if __name__ == "__main__":
    main()
