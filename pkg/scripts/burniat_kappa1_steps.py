"""Show the running value of the kappa_1 boundary computation step by step,
and how it responds to the section-curve datum L.C that the ledger supplies."""
from fractions import Fraction

from kappacalc.burniat import BlowupStep, IntersectionLedger, kappa1_ledger


def main():
    ledger = kappa1_ledger()
    for k, v in enumerate(ledger.history()):
        print(f"after {k} blowups: {v}")
    print()
    print("sensitivity to L.C on each section curve:")
    for lc in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        steps = [BlowupStep(2, Fraction(1, 2), {"1,0": lc, "0,1": 0}) for _ in range(2)]
        print(f"  L.C = {lc}: {IntersectionLedger(3, ledger.base_value, steps).running_value}")


if __name__ == "__main__":
    main()
