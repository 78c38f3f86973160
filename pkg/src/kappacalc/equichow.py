"""Equivariant Chow ring of the GIT quotient (P^2)^7 // SL(3).

The torus ring is Q[e0, e1, e2]/(e0 + e1 + e2) with e2 eliminated as -e0 - e1,
adjoined with z1..z7.  Classes of the maximal T-unstable loci generate an ideal
I; pushing it to SL(3)-equivariant classes with the anti-symmetrisation
operator

    p(f) = D^{-1} * sum_{w in S3} sign(w) * w(f),   D = (e0-e1)(e1-e2)(e2-e0)

applied to f * g for g in a basis of the harmonic module gives the ideal J of
the quotient ring Q[z1..z7, c2, c3]/J.  Here c2, c3 are the elementary
symmetric functions of e0, e1, e2 (the first one vanishes).
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from .exactmath import (
    MultiPoly,
    VarTable,
    divide_exact,
    elementary_symmetric,
    format_poly,
    substitute,
)
from .gradedring import GradedQuotient

Z_NAMES = tuple(f"z{i}" for i in range(1, 8))

#: the Campedelli ambient ring, variable order z1..z7, c2, c3
CHOW_VARS = VarTable(Z_NAMES + ("c2", "c3"), (1,) * 7 + (2, 3))
#: torus-equivariant ring with e2 eliminated
TORUS_VARS = VarTable(("e0", "e1") + Z_NAMES, (1,) * 9)
_EPS_VARS = VarTable(("e0", "e1"), (1, 1))

S3 = tuple(permutations(range(3)))


class InvariantViolation(ArithmeticError):
    """An identity that holds by theory failed (divisibility or symmetry)."""


def perm_sign(w) -> int:
    """+1 or -1 for a permutation given as a tuple of images."""
    sign, seen = 1, set()
    for i in range(len(w)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = w[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def eps(i: int, vt: VarTable = TORUS_VARS) -> MultiPoly:
    """e_i in the eliminated torus ring (e2 = -e0 - e1)."""
    if i == 2:
        return -(MultiPoly.var(vt, "e0") + MultiPoly.var(vt, "e1"))
    return MultiPoly.var(vt, f"e{i}")


def z(i: int, vt: VarTable = TORUS_VARS) -> MultiPoly:
    return MultiPoly.var(vt, f"z{i}")


def discriminant(vt: VarTable = TORUS_VARS) -> MultiPoly:
    e = [eps(i, vt) for i in range(3)]
    return (e[0] - e[1]) * (e[1] - e[2]) * (e[2] - e[0])


def weyl_act(w, f: MultiPoly) -> MultiPoly:
    """Apply w in S3 (e_i -> e_{w(i)}) and re-eliminate e2."""
    vt = f.vt
    return substitute(f, {"e0": eps(w[0], vt), "e1": eps(w[1], vt)})


def harmonic_basis(choice: str = "standard") -> list:
    """Six elements spanning the harmonic module, as (label, polynomial)."""
    e = [eps(i) for i in range(3)]
    one = MultiPoly.constant(TORUS_VARS, 1)
    if choice == "standard":
        return [
            ("1", one),
            ("e0", e[0]),
            ("e1", e[1]),
            ("e0^2-e1^2", e[0] ** 2 - e[1] ** 2),
            ("e1^2-e2^2", e[1] ** 2 - e[2] ** 2),
            ("D", discriminant()),
        ]
    if choice == "alternative":
        return [
            ("1", one),
            ("e1", e[1]),
            ("e2", e[2]),
            ("e1^2-e2^2", e[1] ** 2 - e[2] ** 2),
            ("e2^2-e0^2", e[2] ** 2 - e[0] ** 2),
            ("D", discriminant()),
        ]
    raise ValueError(f"unknown harmonic basis choice {choice!r}")


# -- symmetric functions of the torus weights --------------------------------

def _sigma_eps(k):
    e = [eps(i, _EPS_VARS) for i in range(3)]
    if k == 2:
        return e[0] * e[1] + e[1] * e[2] + e[2] * e[0]
    if k == 3:
        return e[0] * e[1] * e[2]
    raise ValueError(k)


_SIG2 = _sigma_eps(2)
_SIG3 = _sigma_eps(3)


@lru_cache(maxsize=None)
def _c_monomial_in_eps(b: int, c: int) -> MultiPoly:
    return (_SIG2 ** b) * (_SIG3 ** c)


def symmetric_to_c(q: MultiPoly) -> dict:
    """Write a W-invariant polynomial in e0, e1 as a polynomial in c2, c3.

    Returns {(b, c): coeff} for sum coeff * c2^b * c3^c.  Leading terms of
    c2^b c3^c are (-1)^(b+c) e0^(2b+2c) e1^c under lex with e0 > e1.
    """
    out = {}
    rem = q
    while not rem.is_zero():
        (a0, a1), coef = rem.leading_term()
        c = a1
        twob = a0 - 2 * a1
        if twob < 0 or twob % 2:
            raise InvariantViolation(f"not W-invariant: leading term e0^{a0}*e1^{a1}")
        b = twob // 2
        basis = _c_monomial_in_eps(b, c)
        lt = basis.leading_term()
        if lt[0] != (a0, a1):
            raise InvariantViolation("leading-term mismatch in symmetric rewriting")
        factor = coef / lt[1]
        out[(b, c)] = out.get((b, c), 0) + factor
        rem = rem - basis.scale(factor)
    return {k: v for k, v in out.items() if v}


def to_chow_ring(f: MultiPoly) -> MultiPoly:
    """Rewrite a W-invariant element of the torus ring in Q[z1..z7, c2, c3]."""
    groups: dict = {}
    for mono, c in f.terms.items():
        groups.setdefault(mono[2:], {})[mono[:2]] = c
    out = {}
    for zmono, eterms in groups.items():
        for (b, c), coeff in symmetric_to_c(MultiPoly(_EPS_VARS, eterms)).items():
            key = tuple(zmono) + (b, c)
            out[key] = out.get(key, 0) + coeff
    return MultiPoly(CHOW_VARS, out)


def alternating_sum(f: MultiPoly) -> MultiPoly:
    total = MultiPoly.zero(f.vt)
    for w in S3:
        img = weyl_act(w, f)
        total = total + img if perm_sign(w) == 1 else total - img
    return total


def antisymmetrize_torus(f: MultiPoly) -> MultiPoly:
    """p(f) computed inside the torus ring (result W-invariant)."""
    alt = alternating_sum(f)
    try:
        return divide_exact(alt, discriminant(f.vt))
    except ArithmeticError as exc:
        raise InvariantViolation("alternating sum not divisible by D") from exc


def antisymmetrize(f: MultiPoly) -> MultiPoly:
    """p(f) rewritten over Q[z1..z7, c2, c3]."""
    return to_chow_ring(antisymmetrize_torus(f))


# -- unstable loci -------------------------------------------------------------

@dataclass(frozen=True)
class UnstableFamily:
    name: str
    description: str
    representative: MultiPoly
    index_choices: tuple  # z-index tuples, closed under S7
    orbit_size: int  # size of the full S3 x S7 orbit

    def member(self, indices) -> MultiPoly:
        return permute_z(self.representative, _index_map(self.index_choices[0], indices))


def _index_map(src, dst) -> dict:
    mapping = {i: i for i in range(1, 8)}
    rest_src = [i for i in range(1, 8) if i not in src]
    rest_dst = [i for i in range(1, 8) if i not in dst]
    mapping.update(zip(src, dst))
    mapping.update(zip(rest_src, rest_dst))
    return mapping


def permute_z(f: MultiPoly, mapping: dict) -> MultiPoly:
    """Rename z_i -> z_mapping[i] (mapping is a permutation of 1..7)."""
    vt = f.vt
    pos = [vt.index(f"z{i}") for i in range(1, 8)]
    out = {}
    for mono, c in f.terms.items():
        new = list(mono)
        for i in range(1, 8):
            new[pos[mapping[i] - 1]] = mono[pos[i - 1]]
        out[tuple(new)] = c
    return MultiPoly(vt, out, _trusted=True)


def _orbit(f: MultiPoly) -> set:
    """Orbit of f under S3 x S7 by closure over generators."""
    gens = [
        lambda g: weyl_act((1, 0, 2), g),
        lambda g: weyl_act((1, 2, 0), g),
        lambda g: permute_z(g, {1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6, 7: 7}),
        lambda g: permute_z(g, {i: i % 7 + 1 for i in range(1, 8)}),
    ]
    seen = {f}
    frontier = [f]
    while frontier:
        nxt = []
        for g in frontier:
            for act in gens:
                h = act(g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


@lru_cache(maxsize=None)
def unstable_generators() -> tuple:
    """The two families of generators of I (three coincident / five concurrent lines)."""
    e = [eps(i) for i in range(3)]
    three = MultiPoly.constant(TORUS_VARS, 1)
    for i in (1, 2, 3):
        three = three * (z(i) + e[1]) * (z(i) + e[2])
    five = MultiPoly.constant(TORUS_VARS, 1)
    for i in (1, 2, 3, 4, 5):
        five = five * (z(i) + e[0])
    fams = []
    for name, desc, rep, k in (
        ("three_coincident", "three lines coincide", three, 3),
        ("five_concurrent", "five lines pass through a point", five, 5),
    ):
        choices = tuple(combinations(range(1, 8), k))
        fams.append(UnstableFamily(name, desc, rep, choices, len(_orbit(rep))))
    return tuple(fams)


def vanishes_on_locus(family: UnstableFamily) -> bool:
    """Specialise z_i -> -e as dictated by the unstable set and check vanishing."""
    rep = family.representative
    if family.name == "three_coincident":
        checks = [{f"z{i}": -eps(1) for i in (1, 2, 3)}, {f"z{i}": -eps(2) for i in (1, 2, 3)}]
    else:
        checks = [{f"z{i}": -eps(0) for i in (1, 2, 3, 4, 5)}]
    return all(substitute(rep, m).is_zero() for m in checks)


# -- the ideal J -----------------------------------------------------------------

def basic_relation(i: int, vt: VarTable = CHOW_VARS) -> MultiPoly:
    zi = MultiPoly.var(vt, f"z{i}")
    return zi ** 3 + MultiPoly.var(vt, "c2") * zi + MultiPoly.var(vt, "c3")


def basic_relations() -> list:
    return [basic_relation(i) for i in range(1, 8)]


def reduce_basic(p: MultiPoly) -> MultiPoly:
    """Rewrite z_i^3 -> -c2 z_i - c3 until every z-exponent is at most 2."""
    vt = p.vt
    zpos = [vt.index(f"z{i}") for i in range(1, 8)]
    c2i, c3i = vt.index("c2"), vt.index("c3")
    out: dict = {}
    stack = list(p.terms.items())
    while stack:
        mono, c = stack.pop()
        for k in zpos:
            if mono[k] >= 3:
                base = list(mono)
                base[k] -= 2
                a = list(base)
                a[c2i] += 1
                stack.append((tuple(a), -c))
                b = list(base)
                b[k] -= 1
                b[c3i] += 1
                stack.append((tuple(b), -c))
                break
        else:
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return MultiPoly(vt, out, _trusted=True)


@dataclass(frozen=True)
class IdealGenerator:
    poly: MultiPoly
    family: str
    indices: tuple
    harmonic: str

    def to_json(self) -> dict:
        return {
            "generator": format_poly(self.poly),
            "degree": self.poly.degree(),
            "unstable_family": self.family,
            "indices": list(self.indices),
            "harmonic": self.harmonic,
        }


@lru_cache(maxsize=None)
def build_quotient_ideal(harmonic_choice: str = "standard") -> tuple:
    """Generators p(f*g) of J beyond the basic relations, canonically ordered."""
    gens = []
    seen = set()
    for fam in unstable_generators():
        base_idx = fam.index_choices[0]
        for label, g in harmonic_basis(harmonic_choice):
            q = reduce_basic(antisymmetrize(fam.representative * g))
            if q.is_zero():
                continue
            for idx in fam.index_choices:
                img = permute_z(q, _index_map(base_idx, idx))
                if img in seen:
                    continue
                seen.add(img)
                gens.append(IdealGenerator(img, fam.name, idx, label))
    gens.sort(key=lambda g: (g.poly.degree(), format_poly(g.poly), g.family, g.indices, g.harmonic))
    return tuple(gens)


def quotient_ring(generators, name="campedelli", cache_dir=None) -> GradedQuotient:
    rels = basic_relations() + [g.poly if isinstance(g, IdealGenerator) else g for g in generators]
    return GradedQuotient(CHOW_VARS, rels, name=name, max_degree=16, cache_dir=cache_dir)


@lru_cache(maxsize=None)
def campedelli_ring() -> GradedQuotient:
    """A*((P^2)^7 // SL(3)) as a graded quotient; built once per process."""
    return quotient_ring(build_quotient_ideal(), cache_dir=os.environ.get("KAPPACALC_CACHE") or None)


# -- the displayed relation families -------------------------------------------

def _chow(name):
    return MultiPoly.var(CHOW_VARS, name)


def _zs(indices):
    return [f"z{i}" for i in indices]


def sigma(k, indices) -> MultiPoly:
    return elementary_symmetric(k, _zs(indices), CHOW_VARS)


def relation_type1(i: int) -> MultiPoly:
    return basic_relation(i)


def relation_type2(indices=(1, 2, 3, 4, 5)) -> MultiPoly:
    c2, c3 = _chow("c2"), _chow("c3")
    return sigma(3, indices) - sigma(1, indices) * c2 + c3


def relation_type3(indices=(1, 2, 3, 4, 5)) -> MultiPoly:
    c2, c3 = _chow("c2"), _chow("c3")
    return sigma(4, indices) - sigma(2, indices) * c2 + c2 ** 2 + sigma(1, indices) * c3


def relation_type4(indices=(1, 2, 3), variant: str = "corrected") -> MultiPoly:
    """Type (4) relation; ``variant='printed'`` keeps the cubed third variable."""
    a, b, c = (_chow(f"z{i}") for i in indices)
    c2, c3 = _chow("c2"), _chow("c3")
    third = c ** 3 if variant == "printed" else c ** 2
    if variant not in ("printed", "corrected"):
        raise ValueError(variant)
    return (a ** 2 * b ** 2 + b ** 2 * c ** 2 + c ** 2 * a ** 2) + (a + b + c) * (a * b * c - c3) \
        + (a ** 2 + b ** 2 + third) * c2 + c2 ** 2


def relation_family(kind: int, variant: str = "corrected") -> list:
    """All S7 images of a displayed relation type (1..4)."""
    if kind == 1:
        return [relation_type1(i) for i in range(1, 8)]
    if kind == 2:
        return [relation_type2(s) for s in combinations(range(1, 8), 5)]
    if kind == 3:
        return [relation_type3(s) for s in combinations(range(1, 8), 5)]
    if kind == 4:
        out = []
        for s in permutations(range(1, 8), 3):
            if variant == "corrected" and list(s) != sorted(s):
                continue  # symmetric in the three indices
            out.append(relation_type4(s, variant))
        return out
    raise ValueError(kind)


def sign_normalization(R: GradedQuotient | None = None) -> str:
    """Which global sign convention relates the computed ideal to the displayed one.

    Returns ``"identity"`` when relations (1)-(3) hold as displayed,
    ``"z -> -z"`` when they hold after z_i -> -z_i, c3 -> -c3, else ``"none"``.
    """
    R = R or campedelli_ring()
    probes = [relation_type1(1), relation_type2(), relation_type3()]
    if all(R.ideal_contains(p) for p in probes):
        return "identity"
    flip = {f"z{i}": -_chow(f"z{i}") for i in range(1, 8)}
    flip["c3"] = -_chow("c3")
    if all(R.ideal_contains(substitute(p, flip)) for p in probes):
        return "z -> -z"
    return "none"


def elementary_in_z(k: int) -> MultiPoly:
    """s_k = sigma_k(z1..z7) in the Chow ring."""
    return sigma(k, range(1, 8))

