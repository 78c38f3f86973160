"""Incremental reduced row echelon forms for sparse rows.

Rows are dicts ``column -> coefficient``.  Column 0 is the largest monomial, so
the pivot of a row is its smallest column index ("first nonzero column").
The reduced echelon form of a row space does not depend on the order rows are
fed in, which is what makes canonical coset representatives reproducible.

Two coefficient fields are supported: exact rationals (``gmpy2.mpq``) and
integers modulo a prime.  The modular form is used as a cheap certificate:
rows independent mod p are independent over Q, so a full-rank result mod p
proves full rank over Q.
"""
from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

MODULUS = 2305843009213693951  # 2**61 - 1


def to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_mod(x, p=MODULUS):
    """Image of a rational in F_p, or None if p divides the denominator."""
    num, den = int(x.numerator), int(x.denominator)
    if den % p == 0:
        return None
    return num * pow(den, -1, p) % p


class Echelon:
    """Reduced row echelon form maintained under row insertion.

    ``modulus=None`` works over Q with mpq entries; otherwise over F_p with
    int entries.  Every stored row has pivot coefficient 1 and no entries in
    other pivot columns.
    """

    def __init__(self, ncols: int, modulus: int | None = None):
        self.ncols = ncols
        self.modulus = modulus
        self.rows: dict = {}  # pivot column -> row
        self._occ: dict = {}  # non-pivot column -> set of pivots whose row touches it

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_full(self) -> bool:
        return len(self.rows) == self.ncols

    def pivots(self) -> list:
        return sorted(self.rows)

    def free_columns(self) -> list:
        return [c for c in range(self.ncols) if c not in self.rows]

    def _convert(self, row: dict) -> dict:
        if self.modulus is None:
            out = {c: to_mpq(v) for c, v in row.items() if v}
        else:
            p = self.modulus
            out = {}
            for c, v in row.items():
                if isinstance(v, int):
                    v %= p
                else:
                    v = to_mod(v, p)
                    if v is None:
                        raise ZeroDivisionError("denominator divisible by modulus")
                if v:
                    out[c] = v
        return out

    def reduce(self, row: dict, converted: bool = False) -> dict:
        """Remainder of ``row`` modulo the stored row space (entries in free columns only)."""
        r = dict(row) if converted else self._convert(row)
        rows = self.rows
        hits = [c for c in r if c in rows]
        if not hits:
            return r
        p = self.modulus
        for c in hits:
            f = r.pop(c, 0)
            if not f:
                continue
            for cc, v in rows[c].items():
                if cc == c:
                    continue
                if p is None:
                    nv = r.get(cc, 0) - f * v
                else:
                    nv = (r.get(cc, 0) - f * v) % p
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        return r

    def add(self, row: dict, converted: bool = False) -> bool:
        """Insert a row; returns True iff it enlarged the row space."""
        r = self.reduce(row, converted)
        if not r:
            return False
        p = self.modulus
        piv = min(r)
        lead = r[piv]
        if p is None:
            if lead != 1:
                inv = 1 / lead
                r = {c: v * inv for c, v in r.items()}
        else:
            if lead != 1:
                inv = pow(lead, -1, p)
                r = {c: v * inv % p for c, v in r.items()}
        # back-substitute into rows that touch the new pivot column
        for q in self._occ.pop(piv, ()):
            row_q = self.rows[q]
            f = row_q.pop(piv)
            for c, v in r.items():
                if c == piv:
                    continue
                nv = row_q.get(c, 0) - f * v
                if p is not None:
                    nv %= p
                if nv:
                    if c not in row_q:
                        self._occ.setdefault(c, set()).add(q)
                    row_q[c] = nv
                else:
                    if c in row_q:
                        del row_q[c]
                        s = self._occ.get(c)
                        if s is not None:
                            s.discard(q)
        self.rows[piv] = r
        for c in r:
            if c != piv:
                self._occ.setdefault(c, set()).add(piv)
        return True


def rank_of_rows(rows, ncols, modulus=None) -> int:
    ech = Echelon(ncols, modulus)
    for r in rows:
        ech.add(r)
        if ech.is_full():
            break
    return ech.rank


def matrix_rank(matrix) -> int:
    """Exact rank of a dense matrix (list of lists of rationals)."""
    if not matrix:
        return 0
    ncols = len(matrix[0])
    rows = ({j: v for j, v in enumerate(row) if v} for row in matrix)
    return rank_of_rows(rows, ncols)

