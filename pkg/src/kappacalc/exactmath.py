"""Exact rationals and sparse weighted-graded multivariate polynomials.

Every ring element in the package is a :class:`MultiPoly`: a finite map from
exponent tuples to :class:`fractions.Fraction` coefficients, tied to a
:class:`VarTable` that fixes variable names, their order and their weights.
Monomials are ordered graded-lexicographically (weighted degree first, then
lexicographically with the first variable largest).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

Rational = Fraction
Monomial = tuple  # tuple[int, ...] of exponents indexed by the VarTable


class StructureError(ValueError):
    """Operands live over different variable tables."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    # gmpy2.mpq and friends expose numerator/denominator
    return Fraction(int(x.numerator), int(x.denominator))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class VarTable:
    names: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        if any(not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n) for n in self.names):
            raise ValueError("variable names must be identifiers")

    @classmethod
    def of(cls, spec: Iterable) -> "VarTable":
        """Build from ``[(name, weight), ...]`` or plain names (weight 1)."""
        names, weights = [], []
        for item in spec:
            if isinstance(item, str):
                names.append(item)
                weights.append(1)
            else:
                names.append(item[0])
                weights.append(item[1])
        return cls(tuple(names), tuple(weights))

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def degree(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def order_key(self, mono: Monomial):
        """Sort key realising graded-lex; larger key means larger monomial."""
        return (self.degree(mono), mono)

    def one(self) -> Monomial:
        return (0,) * len(self.names)

    def monomials_of_degree(self, d: int, bounds: Mapping[int, int] | None = None) -> list:
        """All monomials of weighted degree ``d``, in decreasing graded-lex order.

        ``bounds`` optionally caps the exponent of given variable indices.
        """
        n = len(self.names)
        out = []
        bounds = bounds or {}

        def rec(i, left, prefix):
            if i == n - 1:
                w = self.weights[i]
                if left % w == 0 and left // w <= bounds.get(i, left):
                    out.append(tuple(prefix) + (left // w,))
                return
            top = min(left // self.weights[i], bounds.get(i, left))
            for e in range(top, -1, -1):
                prefix.append(e)
                rec(i + 1, left - e * self.weights[i], prefix)
                prefix.pop()

        if d < 0 or n == 0:
            return [] if n or d else [()]
        rec(0, d, [])
        return out


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Sparse polynomial with exact rational coefficients.

    Instances are treated as immutable; arithmetic always returns new objects.
    """

    __slots__ = ("vt", "terms")

    def __init__(self, vt: VarTable, terms: Mapping | None = None, _trusted: bool = False):
        self.vt = vt
        if _trusted:
            self.terms = terms
            return
        clean = {}
        n = len(vt)
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono}")
            c = as_rational(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, vt):
        return cls(vt, {}, _trusted=True)

    @classmethod
    def constant(cls, vt, c):
        c = as_rational(c)
        return cls(vt, {vt.one(): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, vt, name, power=1):
        mono = [0] * len(vt)
        mono[vt.index(name)] = power
        return cls(vt, {tuple(mono): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, vt, mono, coeff=1):
        return cls(vt, {tuple(mono): coeff})

    def gens(self):
        return [MultiPoly.var(self.vt, n) for n in self.vt.names]

    # basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vt, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vt == other.vt and self.terms == other.terms

    def __hash__(self):
        return hash((self.vt, frozenset(self.terms.items())))

    def degrees(self) -> set:
        return {self.vt.degree(m) for m in self.terms}

    def degree(self) -> int:
        """Maximal weighted degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_components(self) -> dict:
        comps: dict = {}
        for m, c in self.terms.items():
            comps.setdefault(self.vt.degree(m), {})[m] = c
        return {d: MultiPoly(self.vt, t, _trusted=True) for d, t in sorted(comps.items())}

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self.terms.items(), key=lambda mc: self.vt.order_key(mc[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda mc: self.vt.order_key(mc[0]))

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vt != self.vt:
                raise StructureError("polynomials over different variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.vt, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly(self.vt, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vt, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly.zero(self.vt)
        return MultiPoly(self.vt, {m: v * c for m, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_rational(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.vt, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, mono, coeff=Fraction(1)) -> "MultiPoly":
        return MultiPoly(
            self.vt, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()}, _trusted=True
        )

    # text form
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    def to_text(self) -> str:
        return format_poly(self)


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.vt != q.vt:
        raise StructureError("polynomials over different variable tables")
    if len(p.terms) > len(q.terms):
        p, q = q, p
    out: dict = {}
    qitems = list(q.terms.items())
    for m1, c1 in p.terms.items():
        for m2, c2 in qitems:
            m = tuple(a + b for a, b in zip(m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    return MultiPoly(p.vt, out, _trusted=True)


def elementary_symmetric(k: int, variables: list, vt: VarTable) -> MultiPoly:
    """sigma_k in the named variables; C(len(variables), k) terms."""
    if not 0 <= k <= len(variables):
        raise ValueError(f"k={k} out of range for {len(variables)} variables")
    idx = [vt.index(v) for v in variables]
    terms = {}
    for subset in combinations(idx, k):
        mono = [0] * len(vt)
        for i in subset:
            mono[i] = 1
        terms[tuple(mono)] = Fraction(1)
    assert len(terms) == comb(len(idx), k)
    return MultiPoly(vt, terms, _trusted=True)


def substitute(p: MultiPoly, mapping: Mapping[str, MultiPoly], target: VarTable | None = None,
               total: bool = False) -> MultiPoly:
    """Replace variables of ``p`` by polynomials over ``target``.

    Unmapped variables are carried over by name into ``target`` (which must
    then contain them) unless ``total`` is set, in which case they are an error.
    """
    target = target or p.vt
    for img in mapping.values():
        if img.vt != target:
            raise StructureError("substituted polynomials must share the target VarTable")
    images = []
    for name in p.vt.names:
        if name in mapping:
            images.append(mapping[name])
        elif total:
            raise ValueError(f"variable {name!r} is not mapped")
        else:
            images.append(MultiPoly.var(target, name))

    # cache powers per variable
    powcache: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powcache:
            powcache[key] = images[i] ** e
        return powcache[key]

    # fast path: every image is a single monomial with coefficient 1
    result: dict = {}
    simple = all(len(img.terms) == 1 for img in images)
    if simple:
        mono_imgs = [next(iter(img.terms.items())) for img in images]
        n = len(target)
        for mono, c in p.terms.items():
            out = [0] * n
            coeff = c
            for i, e in enumerate(mono):
                if e:
                    m_i, c_i = mono_imgs[i]
                    for j in range(n):
                        out[j] += m_i[j] * e
                    coeff *= c_i ** e
            key = tuple(out)
            v = result.get(key, 0) + coeff
            if v:
                result[key] = v
            else:
                result.pop(key, None)
        return MultiPoly(target, result, _trusted=True)

    total_poly = MultiPoly.zero(target)
    for mono, c in p.terms.items():
        term = MultiPoly.constant(target, c)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        total_poly = total_poly + term
    return total_poly


def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Exact quotient p/q; raises ArithmeticError if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lt_m, lt_c = q.leading_term()
    vt = p.vt
    key = vt.order_key
    rem = dict(p.terms)
    quot: dict = {}
    while rem:
        m = max(rem, key=key)
        c = rem[m]
        shift = tuple(a - b for a, b in zip(m, lt_m))
        if any(e < 0 for e in shift):
            raise ArithmeticError("polynomial division leaves a remainder")
        factor = c / lt_c
        quot[shift] = factor
        for qm, qc in q.terms.items():
            mm = tuple(a + b for a, b in zip(qm, shift))
            v = rem.get(mm, 0) - factor * qc
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return MultiPoly(vt, quot, _trusted=True)


# ---------------------------------------------------------------------------
# canonical text form


def format_poly(p: MultiPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, (mono, c) in enumerate(p.sorted_terms()):
        factors = []
        for name, e in zip(p.vt.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else format_rational(mag) + "*" + "*".join(factors)
        else:
            body = format_rational(mag)
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-])|(\()|(\)))")


def parse_poly(text: str, vt: VarTable) -> MultiPoly:
    """Parse polynomial text (the canonical form and ordinary infix input).

    Accepts ``+ - * ^``, parentheses, integer/rational literals and variable
    names from ``vt``.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at column {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        num, name, caret, star, sign, lp, rp = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        elif sign:
            tokens.append((sign, None))
        elif lp:
            tokens.append(("(", None))
        elif rp:
            tokens.append((")", None))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i][0]

    def take(kind=None):
        nonlocal i
        tok = tokens[i]
        if kind and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, found {tok[0]!r}")
        i += 1
        return tok

    def expr():
        neg = False
        if peek() in "+-":
            neg = take()[0] == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = acc * factor()
        return acc

    def factor():
        kind, val = tokens[i]
        if kind == "num":
            take()
            base = MultiPoly.constant(vt, val)
        elif kind == "var":
            take()
            base = MultiPoly.var(vt, val)
        elif kind == "(":
            take()
            base = expr()
            take(")")
        elif kind == "-":
            take()
            return -factor()
        else:
            raise ValueError(f"unexpected token {kind!r}")
        if peek() == "^":
            take()
            k, e = take("num")
            if e.denominator != 1:
                raise ValueError("exponents must be integers")
            base = base ** int(e)
        return base

    result = expr()
    if peek() != "end":
        raise ValueError(f"trailing input in polynomial {text!r}")
    return result
