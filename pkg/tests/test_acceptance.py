"""Acceptance criteria, each checked at its stated (exact) tolerance.

Every criterion prints one line: PASS, FAIL or SKIPPED.  Data-dependent
criteria report SKIPPED when their input files are absent; they never pass
by default.  Run directly with ``python tests/test_acceptance.py`` or via pytest
(the lines are repeated in the terminal summary).
"""
from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from kappacalc import targets
from kappacalc.datafiles import KAPPA2_LEDGER, P4_HEXAGON, P4_POINTS, find_data

RESULTS: list = []


class Skipped(Exception):
    pass


def _record(n, title, fn):
    try:
        ok, detail = fn()
        status = "PASS" if ok else "FAIL"
    except Skipped as exc:
        status, detail = "SKIPPED", str(exc)
    line = f"[{status}] criterion {n}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)
    return status, detail


# -- criteria -----------------------------------------------------------------------------

def criterion_1():
    from kappacalc.equichow import campedelli_ring

    hv = campedelli_ring().hilbert_vector(9)
    ok = hv[:7] == list(targets.HILBERT_VECTOR) and hv[7:] == [0, 0, 0]
    return ok, f"dims 0..9 = {hv}"


def criterion_2():
    from kappacalc.cli import cmd_campedelli_ring

    rep = cmd_campedelli_ring(verify_generation=True)
    r4 = rep.results["relation4"]
    failed = [c.name for c in rep.checks if c.passed is False]
    detail = (f"{len(rep.checks) - len(failed)}/{len(rep.checks)} checks; relation (4): "
              f"z3^2 form holds={r4['z3^2 variant in ideal']}, z3^3 form holds={r4['z3^3 variant in ideal']}")
    if failed:
        detail += f"; failed: {failed}"
    needed = {"relation type (1): all S7 images in the ideal", "relation type (2): all S7 images in the ideal",
              "relation type (3): all S7 images in the ideal", "relation type (4): all S7 images in the ideal",
              "types (1),(2),(4) and one (3) generate the ideal up to degree 9",
              "types (1),(2) are independent", "relation type (4) resolution"}
    present = {c.name for c in rep.checks}
    return not failed and needed <= present, detail


def criterion_3():
    from kappacalc.equichow import campedelli_ring
    from kappacalc.invariants import gl32_group, invariant_dimensions, s7_group, trace_dimension_oracle

    R = campedelli_ring()
    out = {}
    for name, G in (("gl32", gl32_group()), ("s7", s7_group())):
        out[name] = (invariant_dimensions(R, G), [trace_dimension_oracle(R, G, d) for d in range(7)])
    ok = all(list(targets.INVARIANT_DIMS[k]) == a == b for k, (a, b) in out.items())
    return ok, "; ".join(f"{k}: reynolds {a}, trace {b}" for k, (a, b) in out.items())


def criterion_4():
    from kappacalc.equichow import campedelli_ring
    from kappacalc.invariants import verify_invariant_relations

    ver = verify_invariant_relations(campedelli_ring())
    n = sum(ver["relations"].values())
    ok = n == 9 and len(ver["relations"]) == 9 and ver["c3_relation"]
    return ok, f"{n}/9 relations vanish; c3 relation vanishes={ver['c3_relation']}"


def criterion_5():
    from kappacalc.exactmath import parse_poly
    from kappacalc.equichow import campedelli_ring
    from kappacalc.kappa import SYMBOLIC_VARS, class_of_symbolic, kappa_class, kappa_numerator

    R = campedelli_ring()
    good = 0
    for l in range(7):
        want = parse_poly(targets.KAPPA_NUMERATORS[l], SYMBOLIC_VARS)
        cls = kappa_class(l, R).scale(2 ** (l + 2))
        if cls == class_of_symbolic(want, R, degree=l) and kappa_numerator(l) == want:
            good += 1
    return good == 7, f"{good}/7 identities hold as classes (and as polynomials in s1, c2, c3)"


def criterion_6():
    from kappacalc.equichow import campedelli_ring
    from kappacalc.gradedring import pairing_rank
    from kappacalc.invariants import gl32_group, hard_lefschetz_ranks

    R = campedelli_ring()
    ranks = [pairing_rank(R, i, 6) for i in range(7)]
    hl = hard_lefschetz_ranks(R, gl32_group())
    ok = ranks == R.hilbert_vector(6) and all(r == s == t for r, s, t in hl.values())
    return ok, f"pairing ranks {ranks}; s1^(2i) ranks {{i: (rank, src, tgt)}} = {hl}"


def criterion_7():
    from kappacalc.polytope import (LatticePolytope, cross_polytope, ehrhart_volume, hexagon,
                                    is_reflexive, simplex)

    problems = []
    for name, P in (("simplex4", simplex(4)), ("cross4", cross_polytope(4)), ("hexagon", hexagon())):
        want = targets.POLYTOPES[name]
        f = P.f_vector()
        if list(f) != list(want["f_vector"]):
            problems.append(f"{name} f-vector {f}")
        vol = P.lattice_volume()
        n = len(P.vertices)
        if not vol == want["volume"] == P.lattice_volume(list(range(n))[::-1]) == ehrhart_volume(P):
            problems.append(f"{name} volume {vol}")
        if is_reflexive(P)[0] != want["reflexive"]:
            problems.append(f"{name} reflexivity")
        if P.dim == 4 and f[1] - f[2] + f[3] - f[4] != 0:
            problems.append(f"{name} Euler")
    # a degenerate 4-polytope with non-simplicial facets
    cube = LatticePolytope([(a, b, c, d) for a in (0, 1) for b in (0, 1) for c in (0, 1) for d in (0, 2)])
    f = cube.f_vector()
    if f[1] - f[2] + f[3] - f[4] != 0 or not cube.lattice_volume() == ehrhart_volume(cube) == 48:
        problems.append("box Euler/volume")
    return not problems, "simplex, cross-polytope, hexagon, box all consistent" if not problems else str(problems)


def criterion_8():
    from kappacalc.cli import cmd_polytope_minkowski, cmd_polytope_stats

    p4, hexa = find_data(P4_POINTS), find_data(P4_HEXAGON)
    if p4 is None:
        raise Skipped(f"no {P4_POINTS} data file (set KAPPACALC_DATA to a directory containing it)")
    rep = cmd_polytope_stats(p4, "p4")
    failed = [c.name for c in rep.checks if c.passed is False]
    detail = f"stats f-vector {rep.results['stats']['f_vector']}, volume {rep.results['stats']['volume']}"
    if failed:
        return False, f"{detail}; failed {failed}"
    if hexa is None:
        raise Skipped(f"{detail}; Minkowski part needs {P4_HEXAGON}")
    m = cmd_polytope_minkowski(p4, hexa, targets.P4_MINKOWSKI_SCALE, "p4fam")
    failed += [c.name for c in m.checks if c.passed is False]
    return not failed, f"{detail}; Minkowski f-vector {m.results['f_vector']}" + (f"; failed {failed}" if failed else "")


def criterion_9():
    from kappacalc.burniat import (BlowupStep, IntersectionLedger, blowup_top_power, burniat_kappa0,
                                   burniat_kappa1_degree, toric_quartic)

    k0, q, k1 = burniat_kappa0(), toric_quartic(), burniat_kappa1_degree()
    plane = blowup_top_power(IntersectionLedger(2, 9, [BlowupStep(2, 1, {"0,0": 1})]))
    noop = blowup_top_power(IntersectionLedger(3, Fraction(7, 4), [BlowupStep(2, 0, {})]))
    ok = (k0 == targets.BURNIAT_KAPPA0 and q == targets.BURNIAT_TORIC_QUARTIC
          and k1 == targets.BURNIAT_KAPPA1_DEGREE and plane == 8 and noop == Fraction(7, 4))
    return ok, f"kappa0={k0}, toric quartic={q}, kappa1 degree={k1}, (3H-E)^2={plane}, a=0 no-op={noop}"


def criterion_9_kappa2():
    from kappacalc.burniat import burniat_kappa2, load_ledger

    path = find_data(KAPPA2_LEDGER)
    if path is None:
        raise Skipped(f"no {KAPPA2_LEDGER} ledger; kappa_2 = 47/4 not checked")
    ledger = load_ledger(path)
    k2 = burniat_kappa2(ledger)
    ok = ledger.base_value == targets.BURNIAT_TORIC_QUARTIC and k2 == targets.BURNIAT_KAPPA2
    return ok, f"chain {ledger.history()} ends at {k2}"


DETERMINISM_COMMANDS = [
    ["campedelli", "ring"],
    ["campedelli", "invariants", "--group", "s7"],
    ["campedelli", "kappa"],
    ["burniat", "kappa"],
]


def criterion_10(tmp_dir=None):
    import tempfile
    from pathlib import Path

    from kappacalc.datafiles import bundled_dir

    cmds = DETERMINISM_COMMANDS + [["polytope", "stats", str(bundled_dir() / "cross4.pts")]]
    base = Path(tmp_dir or tempfile.mkdtemp())
    same = 0
    for k, cmd in enumerate(cmds):
        blobs = []
        for run in (0, 1):
            out = base / f"report{k}_{run}.json"
            subprocess.run([sys.executable, "-m", "kappacalc", *cmd, "--json", str(out), "--quiet"],
                           check=True, capture_output=True)
            blobs.append(out.read_bytes())
        json.loads(blobs[0])
        same += blobs[0] == blobs[1]
    return same == len(cmds), f"{same}/{len(cmds)} commands produced byte-identical JSON across two runs"


CRITERIA = [
    (1, "Hilbert vector (1,7,29,64,29,7,1), zero in degrees 7-9", criterion_1),
    (2, "relation families, generation, independence, relation (4) resolution", criterion_2),
    (3, "invariant dimensions by Reynolds rank and by trace average", criterion_3),
    (4, "nine invariant relations and the c3 relation", criterion_4),
    (5, "seven kappa identities as classes", criterion_5),
    (6, "Poincare pairing and Hard Lefschetz ranks", criterion_6),
    (7, "polytope toolkit properties", criterion_7),
    (8, "ingested P4 data: f-vector, volume, facets, reflexivity, Minkowski sum", criterion_8),
    (9, "Burniat kappa_0, toric quartic, kappa_1 degree, blowup sanity", criterion_9),
    ("9b", "Burniat kappa_2 = 47/4 from ingested ledger", criterion_9_kappa2),
    (10, "deterministic JSON reports", criterion_10),
]


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, fn):
    status, detail = _record(n, title, fn)
    if status == "SKIPPED":
        pytest.skip(detail)
    assert status == "PASS", detail


if __name__ == "__main__":
    statuses = [_record(n, title, fn)[0] for n, title, fn in CRITERIA]
    sys.exit(1 if "FAIL" in statuses else 0)
