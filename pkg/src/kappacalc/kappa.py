"""Kappa classes of the Campedelli family by equivariant pushforward.

The universal family over the quotient is (P^2)^7 x P(V*) divided by SL(V).
With h the hyperplane class of P(V*) the fibre relation is
``h^3 + c2*h - c3 = 0`` (the weights of V* are -e_i), and pushforward along
P(V*) -> pt sends a0 + a1*h + a2*h^2 to a2.  The log canonical class of the
family is ``L = -3h + sum (h + z_i)/2 = (h + s1)/2`` and ``kappa_l = f_* L^(l+2)``.
"""
from __future__ import annotations

from fractions import Fraction

from .equichow import CHOW_VARS, campedelli_ring, elementary_in_z
from .exactmath import MultiPoly, VarTable, format_poly, parse_poly, substitute
from .gradedring import ChowClass, GradedQuotient

#: base ring variables followed by the fibre class h
FIBER_VARS = VarTable(CHOW_VARS.names + ("h",), CHOW_VARS.weights + (1,))
#: symbolic ring in which the published kappa table is written
SYMBOLIC_VARS = VarTable(("s1", "c2", "c3", "h"), (1, 2, 3, 1))

MAX_L = 6


def _h(vt):
    return MultiPoly.var(vt, "h")


def fiber_relation(vt: VarTable = FIBER_VARS) -> MultiPoly:
    h = _h(vt)
    return h ** 3 + MultiPoly.var(vt, "c2") * h - MultiPoly.var(vt, "c3")


def reduce_h(p: MultiPoly) -> MultiPoly:
    """Representative of h-degree <= 2, rewriting h^3 -> c3 - c2*h."""
    vt = p.vt
    hi, c2i, c3i = vt.index("h"), vt.index("c2"), vt.index("c3")
    out: dict = {}
    stack = list(p.terms.items())
    while stack:
        mono, c = stack.pop()
        if mono[hi] >= 3:
            base = list(mono)
            base[hi] -= 3
            a = list(base)
            a[c3i] += 1
            stack.append((tuple(a), c))
            b = list(base)
            b[hi] += 1
            b[c2i] += 1
            stack.append((tuple(b), -c))
            continue
        v = out.get(mono, 0) + c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return MultiPoly(vt, out, _trusted=True)


def h_coefficients(p: MultiPoly) -> tuple:
    """(a0, a1, a2) with p = a0 + a1 h + a2 h^2 after reduction; a_i drop h."""
    vt = p.vt
    hi = vt.index("h")
    parts = [dict(), dict(), dict()]
    for mono, c in reduce_h(p).terms.items():
        m = list(mono)
        k = m[hi]
        m[hi] = 0
        parts[k][tuple(m)] = c
    return tuple(MultiPoly(vt, t, _trusted=True) for t in parts)


def pushforward_poly(p: MultiPoly) -> MultiPoly:
    """f_* on polynomials: coefficient of h^2 (still over p's VarTable, h-free)."""
    return h_coefficients(p)[2]


def _drop_h(p: MultiPoly, target: VarTable) -> MultiPoly:
    hi = p.vt.index("h")
    keep = [i for i in range(len(p.vt)) if i != hi]
    return MultiPoly(target, {tuple(m[i] for i in keep): c for m, c in p.terms.items()})


def pushforward(p: MultiPoly, R: GradedQuotient | None = None) -> ChowClass:
    """f_* of an element of the fibred ring, as a class in the base ring."""
    R = R or campedelli_ring()
    base = _drop_h(pushforward_poly(p), CHOW_VARS)
    degree = max(p.degree() - 2, 0)
    return R.normal_form(base, degree=degree)


def universal_L(vt: VarTable = FIBER_VARS) -> MultiPoly:
    """-3h + sum_i (h + z_i)/2, which equals (h + s1)/2."""
    h = _h(vt)
    half = Fraction(1, 2)
    L = -3 * h
    for i in range(1, 8):
        L = L + (h + MultiPoly.var(vt, f"z{i}")).scale(half)
    return L


def symbolic_L() -> MultiPoly:
    return (_h(SYMBOLIC_VARS) + MultiPoly.var(SYMBOLIC_VARS, "s1")).scale(Fraction(1, 2))


def _check_l(l):
    if not isinstance(l, int) or not 0 <= l <= MAX_L:
        raise ValueError(f"kappa index must be an integer in 0..{MAX_L}, got {l!r}")


def kappa_symbolic(l: int) -> MultiPoly:
    """kappa_l as a polynomial in s1, c2, c3 (no relations of the base applied)."""
    _check_l(l)
    return pushforward_poly(symbolic_L() ** (l + 2))


def kappa_numerator(l: int) -> MultiPoly:
    """2^(l+2) * kappa_l in s1, c2, c3."""
    return kappa_symbolic(l).scale(2 ** (l + 2))


def kappa_class(l: int, R: GradedQuotient | None = None) -> ChowClass:
    """kappa_l = f_* L^(l+2) as a canonical class of degree l."""
    _check_l(l)
    R = R or campedelli_ring()
    return pushforward(universal_L() ** (l + 2), R)


def symbolic_to_chow(p: MultiPoly) -> MultiPoly:
    """Substitute s1 = z1 + ... + z7 into a polynomial in s1, c2, c3."""
    mapping = {
        "s1": elementary_in_z(1),
        "c2": MultiPoly.var(CHOW_VARS, "c2"),
        "c3": MultiPoly.var(CHOW_VARS, "c3"),
        "h": MultiPoly.zero(CHOW_VARS),
    }
    return substitute(p, mapping, target=CHOW_VARS, total=True)


def class_of_symbolic(text_or_poly, R: GradedQuotient | None = None, degree=None) -> ChowClass:
    R = R or campedelli_ring()
    p = text_or_poly if isinstance(text_or_poly, MultiPoly) else parse_poly(text_or_poly, SYMBOLIC_VARS)
    return R.normal_form(symbolic_to_chow(p), degree=degree)


def kappa_table(max_l: int = MAX_L, R: GradedQuotient | None = None) -> list:
    """Rows {l, numerator, class} for l = 0..max_l."""
    _check_l(max_l)
    R = R or campedelli_ring()
    rows = []
    for l in range(max_l + 1):
        rows.append({
            "l": l,
            "numerator": format_poly(kappa_numerator(l)),
            "class": kappa_class(l, R),
        })
    return rows


def cover_scale(k: int) -> Fraction:
    """Factor 2^k relating classes of a Z_2^k-cover to those of the base pair."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Fraction(2) ** k
