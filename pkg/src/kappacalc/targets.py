"""Published values that the computations are checked against.

Nothing here is used as an input to a computation; reports compare computed
numbers with these.
"""
from fractions import Fraction

HILBERT_VECTOR = (1, 7, 29, 64, 29, 7, 1)
TOP_DEGREE = 6
VANISHING_DEGREES = (7, 8, 9)

INVARIANT_DIMS = {
    "gl32": (1, 1, 3, 4, 3, 1, 1),
    "s7": (1, 1, 3, 3, 3, 1, 1),
}

#: 2^(l+2) kappa_l as polynomials in s1, c2, c3
KAPPA_NUMERATORS = (
    "1",
    "3*s1",
    "6*s1^2 - c2",
    "10*s1^3 - 5*s1*c2 + c3",
    "15*s1^4 - 15*s1^2*c2 + c2^2 + 6*s1*c3",
    "21*s1^5 - 35*s1^3*c2 + 7*s1*c2^2 + 21*s1^2*c3 - 2*c2*c3",
    "28*s1^6 - 70*s1^4*c2 + 28*s1^2*c2^2 - c2^3 + 56*s1^3*c3 - 16*s1*c2*c3 + c3^2",
)

#: expectations for named polytope data sets
POLYTOPES = {
    "simplex4": {"f_vector": (1, 5, 10, 10, 5, 1), "volume": 1, "reflexive": False},
    "cross4": {"f_vector": (1, 8, 24, 32, 16, 1), "volume": 16, "reflexive": True},
    "hexagon": {"f_vector": (1, 6, 6, 1), "volume": 6, "reflexive": True},
    "p4": {
        "f_vector": (1, 30, 84, 72, 18, 1),
        "volume": 126,
        "reflexive": True,
        "facets": (7, 8, 18),  # (volume, vertex count, how many)
    },
    "p4fam": {"f_vector": (1, 42, 96, 72, 18, 1)},
}
P4_MINKOWSKI_SCALE = 14

BURNIAT_KAPPA0 = Fraction(1)
BURNIAT_TORIC_QUARTIC = Fraction(63, 8)
BURNIAT_KAPPA1_DEGREE = Fraction(1)
BURNIAT_KAPPA1_TORIC = Fraction(14, 8)
BURNIAT_KAPPA2 = Fraction(47, 4)
