"""Top self-intersections on toric models and their changes under blowups.

For a blowup of a smooth n-fold along a smooth centre Z of codimension c,
with exceptional divisor E and normal bundle N,

    (b*L - aE)^n = L^n + sum_{j >= c} C(n, j) (-a)^j (-1)^(j-1) L^(n-j) . s_(j-c)(N) [Z]

since b_*(E^j) vanishes for 0 < j < c.  Centre data are the numbers
``L^k . s_j(N)`` on Z (k + j = dim Z), supplied as inputs keyed "k,j".
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

from .datafiles import KAPPA1_LEDGER, KAPPA2_LEDGER, find_data
from .exactmath import as_rational, format_rational
from .polytope import LatticePolytope

HALF = Fraction(1, 2)


class DataError(KeyError):
    """Required centre data is missing from a ledger."""

    def __str__(self):
        return self.args[0] if self.args else "missing data"


@dataclass(frozen=True)
class BlowupStep:
    codim: int
    multiplicity: Fraction
    center_numbers: dict = field(default_factory=dict)
    kind: str = "blowup"  # or "contraction": a crepant contraction, intersection-neutral
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("blowup", "contraction"):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.kind == "blowup" and self.codim < 2:
            raise ValueError("blowup centres have codimension at least 2")
        object.__setattr__(self, "multiplicity", as_rational(self.multiplicity))
        nums = {}
        for key, v in self.center_numbers.items():
            if isinstance(key, str):
                k, j = (int(x) for x in key.split(","))
            else:
                k, j = key
            nums[(k, j)] = as_rational(v)
        object.__setattr__(self, "center_numbers", nums)

    def required_keys(self, n: int) -> list:
        return [(n - j, j - self.codim) for j in range(self.codim, n + 1)]

    def correction(self, n: int) -> Fraction:
        """Change of the top power of the pulled-back class caused by this step."""
        if self.kind == "contraction":
            return Fraction(0)
        if self.codim > n:
            raise ValueError(f"centre codimension {self.codim} exceeds ambient dimension {n}")
        a = self.multiplicity
        total = Fraction(0)
        if a == 0:
            return total
        for j in range(self.codim, n + 1):
            key = (n - j, j - self.codim)
            if key not in self.center_numbers:
                name = self.label or "step"
                raise DataError(f"{name}: missing centre number '{key[0]},{key[1]}'")
            total += comb(n, j) * (-a) ** j * (-1) ** (j - 1) * self.center_numbers[key]
        return total


@dataclass
class IntersectionLedger:
    ambient_dim: int
    base_value: Fraction
    steps: list = field(default_factory=list)

    def __post_init__(self):
        self.base_value = as_rational(self.base_value)

    @property
    def running_value(self) -> Fraction:
        return blowup_top_power(self)

    def history(self) -> list:
        """Running value after 0, 1, ..., len(steps) steps."""
        out = [self.base_value]
        for s in self.steps:
            out.append(out[-1] + s.correction(self.ambient_dim))
        return out

    def with_multiplicities(self, a) -> "IntersectionLedger":
        return IntersectionLedger(self.ambient_dim, self.base_value,
                                  [replace(s, multiplicity=a) for s in self.steps])

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "base_value": format_rational(self.base_value),
            "steps": [_step_json(s) for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IntersectionLedger":
        try:
            steps = [
                BlowupStep(
                    codim=int(s.get("codim", 0)),
                    multiplicity=as_rational(s.get("multiplicity", "0")),
                    center_numbers=dict(s.get("center_numbers", {})),
                    kind=s.get("kind", "blowup"),
                    label=s.get("label", ""),
                )
                for s in data["steps"]
            ]
            return cls(int(data["ambient_dim"]), as_rational(data["base_value"]), steps)
        except KeyError as exc:
            raise DataError(f"ledger is missing field {exc.args[0]!r}") from None


def _step_json(s: BlowupStep) -> dict:
    out = {
        "codim": s.codim,
        "multiplicity": format_rational(s.multiplicity),
        "center_numbers": {f"{k},{j}": format_rational(v) for (k, j), v in sorted(s.center_numbers.items())},
    }
    if s.kind != "blowup":
        out["kind"] = s.kind
    if s.label:
        out["label"] = s.label
    return out


def load_ledger(path) -> IntersectionLedger:
    with open(path, encoding="utf-8") as fh:
        return IntersectionLedger.from_json(json.load(fh))


def save_ledger(ledger: IntersectionLedger, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ledger.to_json(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def blowup_top_power(ledger: IntersectionLedger) -> Fraction:
    value = ledger.base_value
    for s in ledger.steps:
        value += s.correction(ledger.ambient_dim)
    return value


def toric_top_power(P: LatticePolytope, coefficient, n: int) -> Fraction:
    """(c * O(1))^n on the toric variety of P: c^n times the normalised volume."""
    if P.dim != n:
        raise ValueError(f"polytope has dimension {P.dim}, expected {n}")
    return as_rational(coefficient) ** n * P.lattice_volume()


# -- the degree-4 Burniat family ---------------------------------------------------------

#: K^2 of the del Pezzo base for the degree-4 family
BASE_K2 = 4
#: lattice volume of the boundary facets of the toric model
FACET_VOLUME = 7
#: normalised volume of the toric model's polytope (18 facets of volume 7 at distance 1)
TORIC_VOLUME = 18 * 7


def burniat_kappa0(K2=BASE_K2, coefficient=HALF) -> Fraction:
    """(K + cD)^2 for the branch divisor D, numerically -3K; equals (1 - 3c)^2 K^2."""
    c = as_rational(coefficient)
    return (1 - 3 * c) ** 2 * as_rational(K2)


def toric_quartic(volume=TORIC_VOLUME, coefficient=HALF) -> Fraction:
    """O(c)^4 on the toric 4-fold from its normalised volume."""
    return as_rational(coefficient) ** 4 * as_rational(volume)


def kappa1_ledger(path=None) -> IntersectionLedger:
    path = path or find_data(KAPPA1_LEDGER)
    if path is None:
        raise DataError(f"no ledger file {KAPPA1_LEDGER}")
    return load_ledger(path)


def burniat_kappa1_degree(ledger: IntersectionLedger | None = None, facet_volume=FACET_VOLUME) -> Fraction:
    """Degree of kappa_1 on a boundary (-1)-curve of the base.

    The toric value is 2 * (1/2)^3 * facet_volume; the ledger supplies the
    blowups of the two section curves meeting that boundary.
    """
    ledger = ledger or kappa1_ledger()
    base = 2 * HALF ** 3 * as_rational(facet_volume)
    if ledger.base_value != base:
        raise DataError(f"ledger base {ledger.base_value} disagrees with toric value {base}")
    return blowup_top_power(ledger)


def kappa2_ledger(path=None):
    """The four-step chain for the quartic, or None when no data file is available."""
    path = path or find_data(KAPPA2_LEDGER)
    return load_ledger(path) if path is not None else None


def burniat_kappa2(ledger: IntersectionLedger) -> Fraction:
    """(K + D/2)^4 on the total space after the blowup chain recorded in ``ledger``."""
    if ledger.ambient_dim != 4:
        raise ValueError("the kappa_2 chain lives on a 4-fold")
    return blowup_top_power(ledger)
