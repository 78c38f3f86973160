"""Graded quotient algebras materialised degree by degree.

A :class:`GradedQuotient` is ``Q[x_1..x_n] / I`` for a homogeneous ideal ``I``
given by generators.  Each degree slice is built on demand by exact linear
algebra: the slice of ``I`` in degree ``d`` is spanned by the new generators
of degree ``d`` together with ``x * v`` for every variable ``x`` and every
basis vector ``v`` of the ideal slice in degree ``d - wt(x)``.

Relations whose leading monomial is a pure power ``x^e`` (coefficient 1) in
pairwise distinct variables form a Groebner basis of the ideal they generate
(their leading terms are coprime), so they are applied up front as rewriting
rules; the slices then live on the "standard" monomials, those with
``exp(x) < e``.  The basic relations ``z^3 + c2 z + c3`` are of this kind.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import pickle
import threading
from dataclasses import dataclass
from fractions import Fraction

from .echelon import MODULUS, Echelon, matrix_rank, to_fraction, to_mpq
from .exactmath import MultiPoly, VarTable, format_poly, mono_mul

log = logging.getLogger(__name__)

CACHE_VERSION = 1


class DegreeRangeError(IndexError):
    """Requested degree lies beyond the ring's configured range."""


class PairingError(ValueError):
    """The requested top slice is not one-dimensional."""


class DegreeSlice:
    """Linear-algebra data for one degree: monomials, ideal echelon, canonical basis."""

    def __init__(self, degree, monomials, echelon=None, full=False):
        self.degree = degree
        self.monomials = monomials
        self.index = {m: i for i, m in enumerate(monomials)}
        self.echelon = echelon
        self.full = full
        if full:
            self.basis_columns = []
        else:
            pivots = echelon.rows if echelon is not None else {}
            self.basis_columns = [c for c in range(len(monomials)) if c not in pivots]
        self.basis = [monomials[c] for c in self.basis_columns]
        self._coord = {c: k for k, c in enumerate(self.basis_columns)}

    @property
    def dim(self) -> int:
        return len(self.basis_columns)

    @property
    def ideal_rank(self) -> int:
        return len(self.monomials) - self.dim

    def ideal_rows(self):
        """Basis of the ideal slice as sparse rows over ``monomials``."""
        if self.full:
            one = to_mpq(1)
            return ({c: one} for c in range(len(self.monomials)))
        if self.echelon is None:
            return iter(())
        return (row for _, row in sorted(self.echelon.rows.items()))

    def coords(self, row: dict) -> tuple:
        """Canonical coordinates of a row vector (over ``monomials``) in the quotient."""
        if self.full:
            return ()
        r = self.echelon.reduce(row) if self.echelon is not None else {c: to_mpq(v) for c, v in row.items()}
        out = [Fraction(0)] * self.dim
        for c, v in r.items():
            out[self._coord[c]] = to_fraction(v)
        return tuple(out)


class GradedQuotient:
    """``Q[vars] / (relations)`` with lazily built, memoised degree slices."""

    def __init__(self, vt: VarTable, relations, name: str = "", max_degree: int = 16,
                 cache_dir: str | None = None):
        self.vt = vt
        self.name = name
        self.max_degree = max_degree
        rels = []
        for r in relations:
            if r.vt != vt:
                raise ValueError("relation over a different VarTable")
            if not r.is_homogeneous():
                raise ValueError(f"relation is not homogeneous: {r}")
            if not r.is_zero():
                rels.append(r)
        self.relations = rels
        self.power_rules = self._detect_power_rules(rels)
        rule_ids = {id(r) for _, _, r in self.power_rules.values()}
        self._bounds = {i: e - 1 for i, (e, _, _) in self.power_rules.items()}
        self._nf_memo: dict = {}
        self._slices: dict = {}
        self._lock = threading.RLock()
        self.cache_dir = cache_dir
        # remaining generators, pre-reduced and grouped by degree
        self._gens_by_degree: dict = {}
        for r in rels:
            if id(r) in rule_ids:
                continue
            self._gens_by_degree.setdefault(r.degree(), []).append(r)

    # -- rewriting by pure-power relations ---------------------------------
    def _detect_power_rules(self, rels):
        rules = {}
        for r in rels:
            mono, c = r.leading_term()
            support = [i for i, e in enumerate(mono) if e]
            if c != 1 or len(support) != 1:
                continue
            i = support[0]
            if i in rules:
                continue
            # replacement = x^e - r, every term strictly smaller than x^e
            rules[i] = (mono[i], (-r) + MultiPoly.monomial(self.vt, mono), r)
        return rules

    def _nf_mono(self, mono) -> dict:
        """Rewrite a monomial by the power rules; returns {standard mono: mpq}."""
        memo = self._nf_memo
        hit = memo.get(mono)
        if hit is not None:
            return hit
        for i, (e, repl, _) in self.power_rules.items():
            if mono[i] >= e:
                rest = list(mono)
                rest[i] -= e
                rest = tuple(rest)
                out: dict = {}
                for m, c in repl.terms.items():
                    sub = self._nf_mono(mono_mul(m, rest))
                    cq = to_mpq(c)
                    for mm, v in sub.items():
                        nv = out.get(mm, 0) + cq * v
                        if nv:
                            out[mm] = nv
                        else:
                            out.pop(mm, None)
                memo[mono] = out
                return out
        out = {mono: to_mpq(1)}
        memo[mono] = out
        return out

    def reduce_poly(self, p: MultiPoly) -> dict:
        """Rewrite ``p`` by the power rules; returns {standard mono: mpq}."""
        out: dict = {}
        for m, c in p.terms.items():
            cq = to_mpq(c)
            for mm, v in self._nf_mono(m).items():
                nv = out.get(mm, 0) + cq * v
                if nv:
                    out[mm] = nv
                else:
                    out.pop(mm, None)
        return out

    def standard_monomials(self, d: int) -> list:
        return self.vt.monomials_of_degree(d, self._bounds)

    # -- slices -------------------------------------------------------------
    def _check_degree(self, d):
        if d < 0:
            raise ValueError("negative degree")
        if d > self.max_degree:
            raise DegreeRangeError(f"degree {d} exceeds max_degree={self.max_degree}")

    def slice(self, d: int) -> DegreeSlice:
        self._check_degree(d)
        s = self._slices.get(d)
        if s is not None:
            return s
        with self._lock:
            s = self._slices.get(d)
            if s is None:
                # build lower degrees first to keep recursion shallow
                for lower in range(d):
                    if lower not in self._slices:
                        self._slices[lower] = self._load_or_build(lower)
                s = self._load_or_build(d)
                self._slices[d] = s
        return s

    def _cache_path(self, d):
        if not self.cache_dir:
            return None
        h = hashlib.sha256()
        h.update(repr((CACHE_VERSION, self.vt.names, self.vt.weights, d)).encode())
        for r in self.relations:
            h.update(format_poly(r).encode())
            h.update(b"\n")
        return os.path.join(self.cache_dir, f"slice-{h.hexdigest()[:24]}-{d}.pkl")

    def _load_or_build(self, d):
        path = self._cache_path(d)
        if path and os.path.exists(path):
            with open(path, "rb") as fh:
                version, monos, rows, full = pickle.load(fh)
            if version == CACHE_VERSION:
                ech = None
                if not full and rows is not None:
                    ech = Echelon(len(monos))
                    for r in rows:
                        ech.add(r, converted=True)
                return DegreeSlice(d, monos, ech, full)
        s = self._build_slice(d)
        if path:
            os.makedirs(self.cache_dir, exist_ok=True)
            rows = None if s.full or s.echelon is None else list(s.echelon.rows.values())
            with open(path + ".tmp", "wb") as fh:
                pickle.dump((CACHE_VERSION, s.monomials, rows, s.full), fh)
            os.replace(path + ".tmp", path)
        return s

    def _candidate_rows(self, d, index):
        """Spanning set of the ideal slice in degree d, as rows over ``index``."""
        n = len(self.vt)
        for i in range(n):
            w = self.vt.weights[i]
            if w > d:
                continue
            lower = self._slices[d - w]
            if lower.ideal_rank == 0:
                continue
            unit = [0] * n
            unit[i] = 1
            unit = tuple(unit)
            for row in lower.ideal_rows():
                out: dict = {}
                for c, v in row.items():
                    m = mono_mul(lower.monomials[c], unit)
                    for mm, cf in self._nf_mono(m).items():
                        j = index[mm]
                        nv = out.get(j, 0) + v * cf
                        if nv:
                            out[j] = nv
                        else:
                            out.pop(j, None)
                if out:
                    yield out
        for g in self._gens_by_degree.get(d, ()):
            red = self.reduce_poly(g)
            if red:
                yield {index[m]: v for m, v in red.items()}

    def _build_slice(self, d) -> DegreeSlice:
        monos = self.standard_monomials(d)
        index = {m: i for i, m in enumerate(monos)}
        ncols = len(monos)
        if ncols == 0:
            return DegreeSlice(d, monos, None, full=False)
        rows = list(self._candidate_rows(d, index))
        if not rows:
            return DegreeSlice(d, monos, Echelon(ncols), full=False)
        # modular pass: pick rows independent mod p
        mod = Echelon(ncols, MODULUS)
        chosen, rest = [], []
        for k, r in enumerate(rows):
            if mod.is_full():
                rest.extend(range(k, len(rows)))
                break
            try:
                if mod.add(r):
                    chosen.append(k)
                else:
                    rest.append(k)
            except ZeroDivisionError:
                chosen.append(k)
        if mod.is_full():
            # a nonzero maximal minor mod p is nonzero over Q
            log.info("degree %d: %d monomials, ideal fills the slice", d, ncols)
            return DegreeSlice(d, monos, None, full=True)
        ech = Echelon(ncols)
        for k in chosen:
            ech.add(rows[k])
        # exact confirmation that nothing was lost to an unlucky prime
        for k in rest:
            ech.add(rows[k])
        full = ech.is_full()
        log.info("degree %d: %d monomials, quotient dimension %d", d, ncols, ncols - ech.rank)
        return DegreeSlice(d, monos, None if full else ech, full=full)

    # -- public queries -------------------------------------------------------
    def dimension(self, d: int) -> int:
        return self.slice(d).dim

    def hilbert_vector(self, up_to: int) -> list:
        return [self.dimension(d) for d in range(up_to + 1)]

    def basis(self, d: int) -> list:
        """Canonical basis monomials of the degree-d slice (as MultiPoly)."""
        return [MultiPoly.monomial(self.vt, m) for m in self.slice(d).basis]

    def row_of(self, p: MultiPoly, d: int) -> dict:
        s = self.slice(d)
        red = self.reduce_poly(p)
        return {s.index[m]: v for m, v in red.items()}

    def normal_form(self, p: MultiPoly, degree: int | None = None) -> "ChowClass":
        if p.vt != self.vt:
            raise ValueError("polynomial over a different VarTable")
        if not p.is_homogeneous():
            raise ValueError("normal_form needs a homogeneous polynomial")
        d = p.degree() if not p.is_zero() else (degree or 0)
        if degree is not None and not p.is_zero() and degree != d:
            raise ValueError(f"polynomial has degree {d}, expected {degree}")
        s = self.slice(d)
        return ChowClass(self, d, s.coords(self.row_of(p, d)))

    def ideal_contains(self, p: MultiPoly) -> bool:
        return self.normal_form(p).is_zero()

    def cls(self, p: MultiPoly) -> "ChowClass":
        return self.normal_form(p)

    def one(self) -> "ChowClass":
        return self.normal_form(MultiPoly.constant(self.vt, 1))

    def export(self, up_to: int) -> dict:
        """JSON-ready description of the ring up to a degree."""
        return {
            "name": self.name,
            "variables": list(self.vt.names),
            "weights": list(self.vt.weights),
            "relations": [format_poly(r) for r in self.relations],
            "hilbert_vector": self.hilbert_vector(up_to),
            "bases": {
                str(d): [format_poly(b) for b in self.basis(d)] for d in range(up_to + 1)
            },
        }

    def export_json(self, path, up_to: int):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.export(up_to), fh, indent=2, sort_keys=True)
            fh.write("\n")


@dataclass(frozen=True, eq=False)
class ChowClass:
    ring: GradedQuotient
    degree: int
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ring.dimension(self.degree):
            raise ValueError("coordinate vector has the wrong length")

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.ring is other.ring and self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.ring), self.degree, self.coords))

    def _same(self, other):
        if not isinstance(other, ChowClass) or other.ring is not self.ring:
            raise ValueError("classes live in different rings")
        if other.degree != self.degree:
            raise ValueError("classes have different degrees")

    def __add__(self, other):
        self._same(other)
        return ChowClass(self.ring, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return ChowClass(self.ring, self.degree, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ChowClass(self.ring, self.degree, tuple(-a for a in self.coords))

    def scale(self, c) -> "ChowClass":
        c = Fraction(c)
        return ChowClass(self.ring, self.degree, tuple(a * c for a in self.coords))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def representative(self) -> MultiPoly:
        """The canonical representative: a combination of basis monomials."""
        basis = self.ring.slice(self.degree).basis
        return MultiPoly(self.ring.vt, {m: c for m, c in zip(basis, self.coords) if c})

    def __str__(self):
        return format_poly(self.representative())

    def __repr__(self):
        return f"ChowClass(deg={self.degree}, {self})"


def graded_dimension(R: GradedQuotient, d: int) -> int:
    return R.dimension(d)


def normal_form(R: GradedQuotient, p: MultiPoly) -> ChowClass:
    return R.normal_form(p)


def ideal_contains(R: GradedQuotient, p: MultiPoly) -> bool:
    return R.ideal_contains(p)


def multiply(a: ChowClass, b: ChowClass) -> ChowClass:
    if a.ring is not b.ring:
        raise ValueError("classes live in different rings")
    R = a.ring
    d = a.degree + b.degree
    R._check_degree(d)
    return R.normal_form(a.representative() * b.representative(), degree=d)


def pairing_matrix(R: GradedQuotient, i: int, top: int) -> list:
    """Products of canonical basis elements of degrees i and top-i, read in A^top."""
    if R.dimension(top) != 1:
        raise PairingError(f"degree-{top} slice has dimension {R.dimension(top)}, not 1")
    if not 0 <= i <= top:
        raise ValueError("need 0 <= i <= top")
    left = R.basis(i)
    right = R.basis(top - i)
    mat = []
    for a in left:
        mat.append([R.normal_form(a * b, degree=top).coords[0] for b in right])
    return mat


def pairing_rank(R: GradedQuotient, i: int, top: int) -> int:
    return matrix_rank(pairing_matrix(R, i, top))


def check_generation(R: GradedQuotient, subset, up_to: int) -> bool:
    """Do ``subset`` relations give the same ideal slices as ``R`` up to ``up_to``?

    ``subset`` must consist of members of R's ideal; equal slice dimensions then
    mean equal slices.
    """
    sub = GradedQuotient(R.vt, list(subset), name=f"{R.name}-subset", max_degree=max(up_to, R.max_degree))
    return all(sub.dimension(d) == R.dimension(d) for d in range(up_to + 1))

