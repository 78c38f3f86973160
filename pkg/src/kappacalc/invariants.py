"""Finite permutation groups acting on the Campedelli Chow ring.

GL(3, F_2) acts on z1..z7 through the Fano plane: index i is the nonzero
vector of F_2^3 given by a labeling (by default the binary digits of i).  S7
acts by all permutations.  Both fix c2 and c3, and both permute the basic
relations, hence act on the standard monomials of every degree slice.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .echelon import Echelon, to_fraction
from .equichow import CHOW_VARS, campedelli_ring, elementary_in_z
from .exactmath import MultiPoly, parse_poly
from .gradedring import ChowClass, GradedQuotient

log = logging.getLogger(__name__)

Perm = tuple  # perm[i - 1] is the image of i, for i in 1..n


@dataclass(frozen=True)
class PermGroupAction:
    degree: int
    generators: tuple
    elements: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in self._element_set

    @property
    def _element_set(self):
        return frozenset(self.elements)


def compose(g: Perm, h: Perm) -> Perm:
    """g after h."""
    return tuple(g[h[i] - 1] for i in range(len(h)))


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g, start=1):
        out[gi - 1] = i
    return tuple(out)


def _check_perm(g, n):
    g = tuple(g)
    if len(g) != n or sorted(g) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {g}")
    return g


def generate_group(gens, degree: int = 7) -> PermGroupAction:
    """Close the generators under composition (breadth first, deterministic)."""
    gens = tuple(_check_perm(g, degree) for g in gens)
    identity = tuple(range(1, degree + 1))
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(g, h)
                if k not in seen:
                    seen.add(k)
                    elements.append(k)
                    nxt.append(k)
        frontier = nxt
    return PermGroupAction(degree, gens, tuple(elements))


# -- Fano plane ------------------------------------------------------------------

def binary_labeling() -> dict:
    """i -> its binary digits as a vector of F_2^3."""
    return {i: ((i >> 2) & 1, (i >> 1) & 1, i & 1) for i in range(1, 8)}


def alternative_labeling() -> dict:
    """Another bijection {1..7} -> F_2^3 minus 0 (successive powers of a Singer cycle)."""
    vecs, v = [], (0, 0, 1)
    for _ in range(7):
        vecs.append(v)
        v = _mat_vec(_SINGER, v)
    return {i + 1: vecs[i] for i in range(7)}


def _check_labeling(labeling):
    vals = [tuple(labeling[i]) for i in range(1, 8)]
    if sorted(labeling) != list(range(1, 8)) or len(set(vals)) != 7 or (0, 0, 0) in vals:
        raise ValueError("labeling must map 1..7 bijectively onto the nonzero vectors of F_2^3")
    if any(x not in (0, 1) for v in vals for x in v):
        raise ValueError("labeling vectors must have 0/1 entries")


@dataclass(frozen=True)
class FanoStructure:
    lines: tuple  # sorted triples

    def collinear(self, triple) -> bool:
        return tuple(sorted(triple)) in self.lines

    def noncollinear(self) -> list:
        return [t for t in combinations(range(1, 8), 3) if t not in self.lines]


def fano_lines(labeling=None) -> FanoStructure:
    labeling = labeling or binary_labeling()
    _check_labeling(labeling)
    lines = []
    for t in combinations(range(1, 8), 3):
        a, b, c = (labeling[i] for i in t)
        if all((x + y + w) % 2 == 0 for x, y, w in zip(a, b, c)):
            lines.append(t)
    return FanoStructure(tuple(lines))


# GL(3, F_2) generators: an elementary transvection and a Singer cycle
_TRANSVECTION = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
_SINGER = ((0, 0, 1), (1, 0, 1), (0, 1, 0))  # companion matrix of x^3 + x + 1


def _mat_vec(m, v):
    return tuple(sum(m[r][c] * v[c] for c in range(3)) % 2 for r in range(3))


def matrix_to_perm(m, labeling) -> Perm:
    back = {tuple(v): i for i, v in labeling.items()}
    return tuple(back[_mat_vec(m, labeling[i])] for i in range(1, 8))


def all_gl32_matrices():
    rows = [r for r in product((0, 1), repeat=3)]
    for m in product(rows, repeat=3):
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) % 2
        if det:
            yield m


@lru_cache(maxsize=None)
def _gl32(labeling_key):
    labeling = dict(labeling_key)
    gens = [matrix_to_perm(_TRANSVECTION, labeling), matrix_to_perm(_SINGER, labeling)]
    return generate_group(gens)


def gl32_group(labeling=None) -> PermGroupAction:
    labeling = labeling or binary_labeling()
    _check_labeling(labeling)
    return _gl32(tuple(sorted(labeling.items())))


@lru_cache(maxsize=None)
def s7_group() -> PermGroupAction:
    return generate_group([(2, 1, 3, 4, 5, 6, 7), (2, 3, 4, 5, 6, 7, 1)])


# -- action on degree slices --------------------------------------------------------

_ZPOS = tuple(CHOW_VARS.index(f"z{i}") for i in range(1, 8))


def act_on_monomial(g: Perm, mono: tuple) -> tuple:
    """z_i -> z_{g(i)} on an exponent vector of the Chow ambient ring."""
    out = list(mono)
    for i in range(7):
        out[_ZPOS[g[i] - 1]] = mono[_ZPOS[i]]
    return tuple(out)


def act_on_poly(g: Perm, p: MultiPoly) -> MultiPoly:
    return MultiPoly(p.vt, {act_on_monomial(g, m): c for m, c in p.terms.items()})


class SliceAction:
    """Normal forms of all standard monomials of one degree, for fast group action."""

    def __init__(self, R: GradedQuotient, d: int):
        self.R = R
        self.d = d
        s = R.slice(d)
        self.dim = s.dim
        self._coords = {}
        for m in s.monomials:
            self._coords[m] = s.coords({s.index[m]: 1})
        self.basis = s.basis

    def coords_of_monomial(self, m) -> tuple:
        return self._coords[m]

    def image_coords(self, g: Perm, k: int) -> tuple:
        """Coordinates of g applied to the k-th canonical basis monomial."""
        return self._coords[act_on_monomial(g, self.basis[k])]

    def reynolds(self, G: PermGroupAction, k: int) -> tuple:
        """Average over G of g(b_k), via the orbit of the basis monomial."""
        orbit = {act_on_monomial(g, self.basis[k]) for g in G.elements}
        acc = [Fraction(0)] * self.dim
        for m in orbit:
            for j, v in enumerate(self._coords[m]):
                if v:
                    acc[j] += v
        n = len(orbit)
        return tuple(a / n for a in acc)

    def reynolds_vector(self, G: PermGroupAction, coords) -> tuple:
        acc = [Fraction(0)] * self.dim
        for k, c in enumerate(coords):
            if c:
                for j, v in enumerate(self.reynolds(G, k)):
                    if v:
                        acc[j] += c * v
        return tuple(acc)

    def trace(self, g: Perm) -> Fraction:
        return sum((self.image_coords(g, k)[k] for k in range(self.dim)), Fraction(0))


@lru_cache(maxsize=None)
def _slice_action(R, d):
    return SliceAction(R, d)


def slice_action(R: GradedQuotient, d: int) -> SliceAction:
    return _slice_action(R, d)


def reynolds(R: GradedQuotient, G: PermGroupAction, x: ChowClass) -> ChowClass:
    return ChowClass(R, x.degree, slice_action(R, x.degree).reynolds_vector(G, x.coords))


def _independent(vectors, ncols) -> list:
    ech = Echelon(ncols)
    keep = []
    for v in vectors:
        if ech.add({j: c for j, c in enumerate(v) if c}):
            keep.append(v)
    return keep


def invariant_basis(R: GradedQuotient, G: PermGroupAction, d: int) -> list:
    """Basis of the G-fixed part of the degree-d slice (Reynolds images, reduced)."""
    act = slice_action(R, d)
    if act.dim == 0:
        return []
    ech = Echelon(act.dim)
    for k in range(act.dim):
        v = act.reynolds(G, k)
        ech.add({j: c for j, c in enumerate(v) if c})
    basis = []
    for piv in sorted(ech.rows):
        row = ech.rows[piv]
        coords = [Fraction(0)] * act.dim
        for j, v in row.items():
            coords[j] = to_fraction(v)
        basis.append(ChowClass(R, d, tuple(coords)))
    return basis


def trace_dimension_oracle(R: GradedQuotient, G: PermGroupAction, d: int) -> int:
    """(1/|G|) * sum of traces of g on the degree-d slice."""
    act = slice_action(R, d)
    total = sum((act.trace(g) for g in G.elements), Fraction(0)) / G.order
    if total.denominator != 1:
        raise ArithmeticError(f"character average {total} is not an integer")
    return int(total)


def invariant_dimensions(R, G, up_to=6) -> list:
    return [len(invariant_basis(R, G, d)) for d in range(up_to + 1)]


# -- named invariants -----------------------------------------------------------------

def _zprod(t):
    out = MultiPoly.constant(CHOW_VARS, 1)
    for i in t:
        out = out * MultiPoly.var(CHOW_VARS, f"z{i}")
    return out


def collinear_sum(F: FanoStructure) -> MultiPoly:
    """s'_3: sum of z_i z_j z_k over Fano lines."""
    return sum((_zprod(t) for t in F.lines), MultiPoly.zero(CHOW_VARS))


def noncollinear_sum(F: FanoStructure) -> MultiPoly:
    """s''_3: sum over the 28 non-collinear triples."""
    return sum((_zprod(t) for t in F.noncollinear()), MultiPoly.zero(CHOW_VARS))


def t_polynomial(F: FanoStructure | None = None) -> MultiPoly:
    F = F or fano_lines()
    return noncollinear_sum(F) - 4 * collinear_sum(F)


def special_invariant_t(R: GradedQuotient, F: FanoStructure | None = None) -> ChowClass:
    return R.normal_form(t_polynomial(F))


def named_generators(F: FanoStructure | None = None) -> dict:
    """s1, s2, c2, c3 and t as polynomials in the ambient ring."""
    return {
        "s1": elementary_in_z(1),
        "s2": elementary_in_z(2),
        "s3": elementary_in_z(3),
        "c2": MultiPoly.var(CHOW_VARS, "c2"),
        "c3": MultiPoly.var(CHOW_VARS, "c3"),
        "t": t_polynomial(F),
    }


NAMED_BASIS = {
    0: ["1"],
    1: ["s1"],
    2: ["s1^2", "c2", "s2"],
    3: ["s1^3", "c2*s1", "s2*s1", "t"],
    4: ["c2^2", "c2*s2", "s2^2"],
    5: ["c2^2*s1"],
    6: ["c2^3"],
}

INVARIANT_RELATIONS = [
    "t*s1",
    "t*c2",
    "t*s2",
    "t^2 + 126*c2^3",
    "45*s1^4 - 1246*c2^2 + 1090*c2*s2 - 240*s2^2",
    "15*c2*s1^2 - 28*c2^2 + 35*c2*s2 - 10*s2^2",
    "3*s2*s1^2 - 49*c2^2 + 46*c2*s2 - 11*s2^2",
    "5*c2*s2*s1 - 16*c2^2*s1",
    "5*s2^2*s1 - 59*c2^2*s1",
]

C3_RELATION = "c3 - 1/7*(2*s1^3 - 6*s2*s1 + 17*c2*s1)"

_NAMED_VARS = None


def named_to_poly(expr: str, F: FanoStructure | None = None) -> MultiPoly:
    """Evaluate an expression in s1, s2, s3, c2, c3, t inside the ambient ring."""
    from .exactmath import VarTable, substitute

    global _NAMED_VARS
    if _NAMED_VARS is None:
        _NAMED_VARS = VarTable(("s1", "s2", "s3", "c2", "c3", "t"), (1, 2, 3, 2, 3, 3))
    p = parse_poly(expr, _NAMED_VARS)
    return substitute(p, named_generators(F), target=CHOW_VARS, total=True)


def named_class(R: GradedQuotient, expr: str, F=None) -> ChowClass:
    return R.normal_form(named_to_poly(expr, F))


def rank_of_classes(classes) -> int:
    if not classes:
        return 0
    return len(_independent([c.coords for c in classes], len(classes[0].coords)))


def named_basis(R, G_name: str, d: int, F=None):
    """Named basis elements for a degree; checks they are independent and fixed."""
    names = [n for n in NAMED_BASIS[d] if not (G_name == "s7" and n == "t")]
    return names, [named_class(R, n, F) for n in names]


def verify_invariant_relations(R: GradedQuotient | None = None, F=None) -> dict:
    """Check the nine relations, the c3 relation and generation by s1, c2, s2, t."""
    R = R or campedelli_ring()
    F = F or fano_lines()
    report = {"relations": {}, "c3_relation": None, "generated_by_s1_c2_s2_t": {}}
    for rel in INVARIANT_RELATIONS:
        report["relations"][rel] = named_class(R, rel, F).is_zero()
    report["c3_relation"] = named_class(R, C3_RELATION, F).is_zero()
    G = gl32_group()
    for d in range(7):
        monos = []
        for a in range(d + 1):
            for b in range((d - a) // 2 + 1):
                for c in range((d - a - 2 * b) // 2 + 1):
                    rest = d - a - 2 * b - 2 * c
                    if rest % 3:
                        continue
                    e = rest // 3
                    monos.append(f"s1^{a}*c2^{b}*s2^{c}*t^{e}")
        classes = [named_class(R, m, F) for m in monos]
        dim = len(invariant_basis(R, G, d))
        report["generated_by_s1_c2_s2_t"][d] = rank_of_classes(classes) == dim
    return report


def hard_lefschetz_ranks(R: GradedQuotient, G: PermGroupAction) -> dict:
    """rank of multiplication by s1^(2i) from invariants of degree 3-i to degree 3+i."""
    out = {}
    for i in (1, 2, 3):
        src = invariant_basis(R, G, 3 - i)
        power = R.normal_form(elementary_in_z(1) ** (2 * i))
        images = [x * power for x in src]
        tgt_dim = len(invariant_basis(R, G, 3 + i))
        out[i] = (rank_of_classes(images), len(src), tgt_dim)
    return out


def fano_lines_preserved(G: PermGroupAction, F: FanoStructure) -> bool:
    lines = set(F.lines)
    return all(
        {tuple(sorted(g[i - 1] for i in line)) for line in lines} == lines for g in G.elements
    )

