"""Exact lattice polytopes: hulls, face lattices, volumes, reflexivity.

Hulls are computed with the double description method on homogenised points
(1, v): the extreme rays of the cone {y : <y, (1, v)> >= 0 for all v} are the
facet inequalities.  All arithmetic is on Python integers, so degenerate
(non-simplicial) facets come out exactly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np


class DimensionError(ValueError):
    """The operation needs a full-dimensional polytope."""


class ResourceError(RuntimeError):
    """A lattice-point enumeration would be too large."""


class PointFileError(ValueError):
    pass


# -- exact integer linear algebra --------------------------------------------------

def int_det(rows) -> int:
    """Determinant of a square integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(vectors) -> int:
    """Exact rank of a list of integer (or rational) vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    r = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _pivot_coordinates(points):
    """Coordinates on which projection is injective on the affine span."""
    base = points[0]
    diffs = [[Fraction(x) for x in _sub(p, base)] for p in points[1:]]
    chosen = []
    rows = diffs
    r = 0
    ncols = len(base)
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        chosen.append(c)
        r += 1
    return chosen


def _extended_gcd_vector(n):
    """Integer u with <n, u> = gcd(n)."""
    u = [0] * len(n)
    g = 0
    for i, x in enumerate(n):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            u = [0] * len(n)
            u[i] = 1 if x > 0 else -1
            continue
        # combine: a*g + b*x = gcd(g, x)
        a, b, g2 = _egcd(g, x)
        u = [a * ui for ui in u]
        u[i] += b
        g = g2
    return u, g


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r


# -- double description --------------------------------------------------------------

def _facets_full_dim(points):
    """Facet inequalities (normal, offset) with <normal, x> <= offset, normals primitive."""
    k = len(points[0])
    homog = [(1,) + tuple(p) for p in points]
    # initial simplex
    chosen = []
    for i, a in enumerate(homog):
        if rank([homog[j] for j in chosen] + [a]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k + 1:
                break
    A = [homog[i] for i in chosen]
    # rays = columns of A^{-1}: solve A y = e_j with Fractions, then scale to integers
    rays = []
    for j in range(k + 1):
        y = _solve(A, [1 if i == j else 0 for i in range(k + 1)])
        den = 1
        for v in y:
            den = den * v.denominator // math.gcd(den, v.denominator)
        rays.append(_primitive(tuple(int(v * den) for v in y)))
    # zero sets indexed by processed constraint ids
    processed = list(chosen)
    zeros = []
    for r in rays:
        zeros.append(frozenset(i for i in processed if _dot(r, homog[i]) == 0))
    order = [i for i in range(len(homog)) if i not in set(chosen)]
    for i in order:
        a = homog[i]
        vals = [_dot(r, a) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        if not neg:
            processed.append(i)
            zeros = [z | {i} if vals[j] == 0 else z for j, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for j in pos + zer:
            new_rays.append(rays[j])
            new_zeros.append(zeros[j] | {i} if vals[j] == 0 else zeros[j])
        need = k - 1  # adjacent rays share at least dim-2 tight constraints
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if len(common) < need:
                    continue
                if any(common <= zeros[q] for q in range(len(rays)) if q != p and q != n):
                    continue
                r = tuple(vals[p] * y - vals[n] * x for x, y in zip(rays[p], rays[n]))
                new_rays.append(_primitive(r))
                new_zeros.append(common | {i})
        rays, zeros = new_rays, new_zeros
        processed.append(i)
    facets = []
    for r in rays:
        b, normal = r[0], tuple(-x for x in r[1:])
        g = 0
        for x in normal:
            g = math.gcd(g, x)
        normal = tuple(x // g for x in normal)
        tight = [p for p in points if _dot(normal, p) * g == b]
        offset = _dot(normal, tight[0])
        facets.append((normal, offset))
    return sorted(set(facets))


def _solve(A, b):
    n = len(A)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c])
        m[c], m[piv] = m[piv], m[c]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


# -- the polytope type ------------------------------------------------------------------

@dataclass(frozen=True)
class Facet:
    normal: tuple  # primitive outward normal
    offset: int  # <normal, x> <= offset on P
    vertices: frozenset  # indices into LatticePolytope.vertices


class LatticePolytope:
    """Convex hull of integer points, with exact face data computed on demand."""

    def __init__(self, points):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise DimensionError("empty point set")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("points of mixed dimension")
        self.dim = dims.pop()
        self.points = tuple(pts)
        self.affine_dim = rank([_sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
        if self.affine_dim == 0:
            self._vertices = (pts[0],)
            self._facets = ()
        else:
            self._compute_hull()

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def _compute_hull(self):
        coords = _pivot_coordinates(self.points)
        proj = [tuple(p[c] for c in coords) for p in self.points]
        if len(coords) == 1:
            lo, hi = min(proj), max(proj)
            raw = [((-1,), -lo[0]), ((1,), hi[0])]
        else:
            raw = _facets_full_dim(proj)
        # vertices: points whose active normals have full rank
        verts = []
        for p, q in zip(self.points, proj):
            active = [n for n, b in raw if _dot(n, q) == b]
            if rank(active) == len(coords):
                verts.append(p)
        self._vertices = tuple(verts)
        vproj = {v: tuple(v[c] for c in coords) for v in verts}
        facets = []
        for n, b in raw:
            idx = frozenset(i for i, v in enumerate(verts) if _dot(n, vproj[v]) == b)
            facets.append((n, b, idx))
        if self.is_full_dimensional:
            self._facets = tuple(Facet(n, b, idx) for n, b, idx in facets)
        else:
            # facet normals live in projected coordinates; keep only vertex sets
            self._facets = tuple(Facet(None, None, idx) for _, _, idx in facets)

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def facets(self) -> tuple:
        return self._facets

    def require_full(self):
        if not self.is_full_dimensional:
            raise DimensionError(
                f"polytope spans a {self.affine_dim}-dimensional subspace of Z^{self.dim}"
            )

    def contains(self, x) -> bool:
        self.require_full()
        return all(_dot(f.normal, x) <= f.offset for f in self._facets)

    @cached_property
    def faces(self) -> dict:
        """Faces by dimension, each a frozenset of vertex indices (empty and full included)."""
        n = len(self._vertices)
        top = frozenset(range(n))
        found = {top}
        frontier = [f.vertices for f in self._facets]
        found.update(frontier)
        facet_sets = [f.vertices for f in self._facets]
        while frontier:
            nxt = []
            for f in frontier:
                for g in facet_sets:
                    h = f & g
                    if h not in found:
                        found.add(h)
                        nxt.append(h)
            frontier = nxt
        found.add(frozenset())
        by_dim: dict = {}
        for f in found:
            by_dim.setdefault(self._face_dim(f), []).append(f)
        return {d: sorted(fs, key=sorted) for d, fs in sorted(by_dim.items())}

    def _face_dim(self, face) -> int:
        cache = self.__dict__.setdefault("_dim_cache", {})
        if face not in cache:
            cache[face] = self._compute_face_dim(face)
        return cache[face]

    def _compute_face_dim(self, face) -> int:
        if not face:
            return -1
        vs = [self._vertices[i] for i in sorted(face)]
        return rank([_sub(v, vs[0]) for v in vs[1:]]) if len(vs) > 1 else 0

    def f_vector(self) -> tuple:
        """(1, f_0, ..., f_{k-1}, 1) for a k-dimensional polytope."""
        faces = self.faces
        return tuple(len(faces.get(d, [])) for d in range(-1, self.affine_dim + 1))

    # -- triangulation and volume --
    def _subfacets(self, face):
        d = self._face_dim(face)
        return [g for g in self.faces.get(d - 1, []) if g < face]

    def _pull(self, face, rank_of, memo):
        if face in memo:
            return memo[face]
        if self._face_dim(face) == 0:
            out = [tuple(face)]
        else:
            apex = min(face, key=rank_of.__getitem__) if rank_of else min(face)
            out = []
            for g in self._subfacets(face):
                if apex not in g:
                    out.extend((apex,) + s for s in self._pull(g, rank_of, memo))
        memo[face] = out
        return out

    def triangulation(self, order=None, face=None) -> list:
        """Pulling triangulation of ``face`` (default: all of P).

        ``order`` lists vertex indices; earlier vertices are pulled first.
        """
        rank_of = {v: k for k, v in enumerate(order)} if order is not None else None
        if face is None:
            face = frozenset(range(len(self._vertices)))
        return self._pull(frozenset(face), rank_of, {})

    def lattice_volume(self, order=None) -> int:
        """Normalised volume (d! times Euclidean volume)."""
        self.require_full()
        total = 0
        for s in self.triangulation(order):
            v0 = self._vertices[s[0]]
            total += abs(int_det([_sub(self._vertices[i], v0) for i in s[1:]]))
        return total

    def facet_volumes(self) -> list:
        """(normalised volume in the facet's own lattice, vertex count) per facet.

        With u an integer vector satisfying <n, u> = 1, the edge vectors of a
        facet simplex together with u span a sublattice whose index equals the
        simplex's volume in the facet lattice.
        """
        self.require_full()
        out = []
        for f in self._facets:
            u, _ = _extended_gcd_vector(f.normal)
            vol = 0
            for s in self.triangulation(face=f.vertices):
                v0 = self._vertices[s[0]]
                vol += abs(int_det([_sub(self._vertices[i], v0) for i in s[1:]] + [tuple(u)]))
            out.append((vol, len(f.vertices)))
        return out

    # -- lattice points --
    def _bounds(self, t=1):
        arr = np.array(self._vertices, dtype=object) * t
        lo = [min(int(x) for x in arr[:, j]) for j in range(self.dim)]
        hi = [max(int(x) for x in arr[:, j]) for j in range(self.dim)]
        return lo, hi

    def lattice_points(self, t: int = 1, strict: bool = False, limit: int = 5_000_000) -> list:
        """Lattice points of t*P (interior only if ``strict``)."""
        self.require_full()
        lo, hi = self._bounds(t)
        size = 1
        for a, b in zip(lo, hi):
            size *= b - a + 1
        if size > limit:
            raise ResourceError(f"enumeration box has {size} points (limit {limit})")
        normals = np.array([f.normal for f in self._facets], dtype=np.int64)
        offsets = np.array([f.offset * t for f in self._facets], dtype=np.int64)
        grids = np.meshgrid(*[np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)], indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        vals = pts @ normals.T
        ok = (vals < offsets).all(axis=1) if strict else (vals <= offsets).all(axis=1)
        return [tuple(int(x) for x in p) for p in pts[ok]]

    def boundary_points(self, t: int = 1) -> list:
        """Lattice points of t*P lying on at least one facet hyperplane."""
        return [x for x in self.lattice_points(t)
                if any(_dot(f.normal, x) == f.offset * t for f in self._facets)]

    def interior_points(self) -> list:
        return self.lattice_points(1, strict=True)

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={len(self._vertices)})"


def convex_hull(points) -> LatticePolytope:
    return LatticePolytope(points)


def f_vector(P: LatticePolytope) -> tuple:
    return P.f_vector()


def lattice_volume(P: LatticePolytope) -> int:
    return P.lattice_volume()


def facet_volumes(P: LatticePolytope) -> list:
    return P.facet_volumes()


def is_reflexive(P: LatticePolytope):
    """(reflexive?, interior lattice points)."""
    P.require_full()
    interior = P.interior_points()
    if len(interior) != 1:
        return False, interior
    p = interior[0]
    return all(f.offset - _dot(f.normal, p) == 1 for f in P.facets), interior


def minkowski_scaled(P: LatticePolytope, Q: LatticePolytope, k: int = 1) -> LatticePolytope:
    """conv(P + k*Q)."""
    if P.dim != Q.dim:
        raise ValueError(f"ambient dimensions differ: {P.dim} vs {Q.dim}")
    if k < 1:
        raise ValueError("scale must be a positive integer")
    pts = [tuple(a + k * b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return LatticePolytope(pts)


def ehrhart_count(P: LatticePolytope, t: int, limit: int = 5_000_000) -> int:
    if t < 1:
        raise ValueError("dilation must be positive")
    return len(P.lattice_points(t, limit=limit))


def volume_from_counts(counts) -> int:
    """d-th finite difference of L(0..d): equals the normalised volume."""
    d = len(counts) - 1
    total = sum((-1) ** (d - k) * math.comb(d, k) * counts[k] for k in range(d + 1))
    return total


def ehrhart_volume(P: LatticePolytope) -> int:
    """Normalised volume from lattice-point counts of 0P, 1P, ..., dP."""
    counts = [1] + [ehrhart_count(P, t) for t in range(1, P.dim + 1)]
    return volume_from_counts(counts)


def polar_dual(P: LatticePolytope) -> LatticePolytope:
    """For a reflexive P: the hull of the primitive facet normals (origin moved inside)."""
    ok, interior = is_reflexive(P)
    if not ok:
        raise ValueError("polar dual is only formed for reflexive polytopes")
    return LatticePolytope([f.normal for f in P.facets])


def translate(P: LatticePolytope, v) -> LatticePolytope:
    return LatticePolytope([tuple(a + b for a, b in zip(p, v)) for p in P.points])


def stats(P: LatticePolytope) -> dict:
    """JSON-ready summary of a full-dimensional polytope."""
    P.require_full()
    refl, interior = is_reflexive(P)
    return {
        "dim": P.dim,
        "f_vector": list(P.f_vector()),
        "volume": P.lattice_volume(),
        "reflexive": refl,
        "interior_points": [list(p) for p in interior],
        "facets": [{"volume": v, "vertices": n} for v, n in P.facet_volumes()],
    }


# -- standard examples -------------------------------------------------------------------

def simplex(d: int) -> LatticePolytope:
    return LatticePolytope([(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)])


def cross_polytope(d: int) -> LatticePolytope:
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s * int(i == j) for j in range(d)))
    return LatticePolytope(pts)


HEXAGON = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))


def hexagon() -> LatticePolytope:
    """The polytope of the degree-6 del Pezzo surface with its anticanonical bundle."""
    return LatticePolytope(HEXAGON)


def unit_cube(d: int) -> LatticePolytope:
    return LatticePolytope(list(itertools.product((0, 1), repeat=d)))


# -- point-set files ----------------------------------------------------------------------

def parse_points(text: str, source: str = "<string>") -> list:
    """Parse the point-set format: '#' comments, 'dim D count N', then N rows."""
    header = None
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "dim" or parts[2] != "count":
                raise PointFileError(f"{source}:{lineno}: expected 'dim D count N'")
            try:
                header = (int(parts[1]), int(parts[3]))
            except ValueError:
                raise PointFileError(f"{source}:{lineno}: non-integer header values") from None
            continue
        parts = line.split()
        if len(parts) != header[0]:
            raise PointFileError(f"{source}:{lineno}: expected {header[0]} coordinates, got {len(parts)}")
        try:
            points.append(tuple(int(x) for x in parts))
        except ValueError:
            raise PointFileError(f"{source}:{lineno}: non-integer coordinate") from None
    if header is None:
        raise PointFileError(f"{source}: missing 'dim D count N' header")
    if len(points) != header[1]:
        raise PointFileError(f"{source}: header announces {header[1]} points, found {len(points)}")
    return points


def format_points(points, comment: str | None = None) -> str:
    points = [tuple(p) for p in points]
    d = len(points[0]) if points else 0
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"dim {d} count {len(points)}")
    lines.extend(" ".join(str(x) for x in p) for p in points)
    return "\n".join(lines) + "\n"


def read_points(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read(), str(path))


def write_points(path, points, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points(points, comment))
