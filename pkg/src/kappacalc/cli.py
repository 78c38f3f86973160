"""Command-line front end.

    kappacalc campedelli ring [--verify-generation] [--emit-ideal PATH]
    kappacalc campedelli invariants --group gl32|s7 [--alt-labeling]
    kappacalc campedelli kappa [--max-l N]
    kappacalc polytope stats FILE [--expect NAME]
    kappacalc polytope minkowski FILE FILE --scale K [--expect NAME]
    kappacalc polytope ehrhart FILE --dilation T
    kappacalc burniat kappa [--ledger FILE]

Every command produces a RunReport.  Checks compare a computed value with an
expected one; the exit status is 0 when all of them pass, 1 when any fails
and 2 for usage or input errors.  ``--json PATH`` writes the report with
canonical key ordering, so reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, targets
from .exactmath import format_poly, format_rational, parse_poly

log = logging.getLogger("kappacalc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    passed: bool | None  # None: skipped for lack of data
    note: str = ""

    @property
    def status(self) -> str:
        return {True: "PASS", False: "FAIL", None: "SKIPPED"}[self.passed]

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "status": self.status,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def check(self, name, expected, computed, passed=None, note=""):
        """Record a comparison; ``passed`` defaults to ``expected == computed``."""
        if passed is None:
            passed = expected == computed
        self.checks.append(Check(name, expected, computed, bool(passed), note))
        return passed

    def skip(self, name, expected, note):
        self.checks.append(Check(name, expected, None, None, note))

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def exit_code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "results": _jsonable(self.results),
            "checks": [c.to_json() for c in self.checks],
            "ok": self.ok,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        lines = [f"== {self.command}"]
        for c in self.checks:
            if c.passed is None:
                lines.append(f"SKIPPED  {c.name}: {c.note}")
            else:
                lines.append(
                    f"{c.status:8s} {c.name}: computed {_short(c.computed)}, expected {_short(c.expected)}"
                )
        lines.append("all checks passed" if self.ok else "SOME CHECKS FAILED")
        return "\n".join(lines)


def _short(x, limit=100):
    s = json.dumps(_jsonable(x), sort_keys=True)
    return s if len(s) <= limit else s[: limit - 3] + "..."


# -- campedelli ---------------------------------------------------------------------------

def cmd_campedelli_ring(verify_generation=False, emit_ideal=None) -> RunReport:
    from .equichow import (build_quotient_ideal, campedelli_ring, relation_family,
                           relation_type4, sign_normalization)
    from .gradedring import GradedQuotient, check_generation, pairing_rank

    rep = RunReport("campedelli ring", {"verify_generation": verify_generation})
    R = campedelli_ring()
    gens = build_quotient_ideal()
    hv = R.hilbert_vector(max(targets.VANISHING_DEGREES))
    rep.results["hilbert_vector"] = hv
    rep.results["ideal_generators_by_degree"] = _count_by(g.poly.degree() for g in gens)
    rep.check("hilbert vector", list(targets.HILBERT_VECTOR), hv[: targets.TOP_DEGREE + 1])
    rep.check("dimension zero in degrees 7..9", [0, 0, 0], hv[targets.TOP_DEGREE + 1:])

    norm = sign_normalization(R)
    rep.results["sign_normalization"] = norm
    rep.check("displayed relations hold without a sign change", "identity", norm)

    families = {k: relation_family(k) for k in (1, 2, 3, 4)}
    for k, rels in families.items():
        held = sum(R.ideal_contains(r) for r in rels)
        rep.check(f"relation type ({k}): all S7 images in the ideal", len(rels), held)

    # the type (4) display: which power of the third variable is consistent?
    printed = relation_type4((1, 2, 3), "printed")
    comps = printed.homogeneous_components()
    printed_ok = all(R.ideal_contains(c) for c in comps.values())
    corrected_ok = R.ideal_contains(relation_type4((1, 2, 3), "corrected"))
    rep.results["relation4"] = {
        "z3^3 variant in ideal": printed_ok,
        "z3^2 variant in ideal": corrected_ok,
        "z3^3 variant homogeneous": len(comps) == 1,
        "resolution": "z3^2" if corrected_ok and not printed_ok else "unresolved",
    }
    rep.check("relation type (4) resolution", "z3^2", rep.results["relation4"]["resolution"])

    top = targets.TOP_DEGREE
    ranks = [pairing_rank(R, i, top) for i in range(top + 1)]
    rep.results["pairing_ranks"] = ranks
    rep.check("Poincare pairing has full rank in every degree", hv[: top + 1], ranks)

    if verify_generation:
        subset = families[1] + families[2] + families[4] + [families[3][0]]
        rep.check("types (1),(2),(4) and one (3) generate the ideal up to degree 9",
                  True, check_generation(R, subset, 9))
        everything = [r for rels in families.values() for r in rels]
        rep.check("displayed families generate the whole ideal up to degree 9",
                  True, check_generation(R, everything, 9))
        low = families[1] + families[2]
        redundant = []
        for i, r in enumerate(low):
            rest = GradedQuotient(R.vt, low[:i] + low[i + 1:], max_degree=3)
            if rest.ideal_contains(r):
                redundant.append(format_poly(r))
        rep.check("types (1),(2) are independent", [], redundant)

    if emit_ideal:
        payload = {
            "provenance": {
                "construction": "p(f*g) for the two unstable loci and the harmonic basis, closed under S7",
                "tool": f"kappacalc {__version__}",
            },
            "variables": list(R.vt.names),
            "weights": list(R.vt.weights),
            "basic_relations": [format_poly(r) for r in families[1]],
            "generators": [g.to_json() for g in gens],
            "hilbert_vector": hv,
        }
        _write_json(emit_ideal, payload)
        rep.inputs["emit_ideal"] = str(emit_ideal)
    return rep


def _count_by(values) -> dict:
    out: dict = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return {str(k): out[k] for k in sorted(out)}


def cmd_invariants(group="gl32", alt_labeling=False) -> RunReport:
    from .equichow import campedelli_ring
    from .invariants import (C3_RELATION, INVARIANT_RELATIONS, alternative_labeling, fano_lines,
                             gl32_group, hard_lefschetz_ranks, invariant_dimensions, named_basis,
                             rank_of_classes, reynolds, s7_group, trace_dimension_oracle,
                             verify_invariant_relations)

    if group not in targets.INVARIANT_DIMS:
        raise UsageError(f"unknown group {group!r}; choose gl32 or s7")
    rep = RunReport("campedelli invariants", {"group": group, "alt_labeling": alt_labeling})
    R = campedelli_ring()
    labeling = alternative_labeling() if alt_labeling else None
    G = gl32_group(labeling) if group == "gl32" else s7_group()
    F = fano_lines(labeling)
    rep.results["group_order"] = G.order
    rep.check("group order", 168 if group == "gl32" else 5040, G.order)

    dims = invariant_dimensions(R, G)
    traces = [trace_dimension_oracle(R, G, d) for d in range(targets.TOP_DEGREE + 1)]
    rep.results["dimensions_reynolds"] = dims
    rep.results["dimensions_trace"] = traces
    expected = list(targets.INVARIANT_DIMS[group])
    rep.check("invariant dimensions (Reynolds rank)", expected, dims)
    rep.check("invariant dimensions (trace average)", expected, traces)

    names = {}
    for d in range(targets.TOP_DEGREE + 1):
        labels, classes = named_basis(R, group, d, F)
        fixed = all(reynolds(R, G, c) == c for c in classes)
        names[d] = labels
        rep.check(f"named basis in degree {d} is invariant and independent",
                  [len(labels), True], [rank_of_classes(classes), fixed])
    rep.results["named_basis"] = names

    hl = hard_lefschetz_ranks(R, G)
    rep.results["hard_lefschetz"] = {str(i): list(v) for i, v in hl.items()}
    for i, (r, src, tgt) in hl.items():
        rep.check(f"s1^{2 * i} is an isomorphism in degrees {3 - i} -> {3 + i}", [src, src], [r, tgt])

    if group == "gl32":
        ver = verify_invariant_relations(R, F)
        for rel in INVARIANT_RELATIONS:
            rep.check(f"relation {rel} = 0", True, ver["relations"][rel])
        rep.check(f"relation {C3_RELATION} = 0", True, ver["c3_relation"])
        gen = ver["generated_by_s1_c2_s2_t"]
        rep.check("s1, c2, s2, t generate the invariants", [True] * len(gen), [gen[d] for d in sorted(gen)])
    return rep


def cmd_kappa(max_l=6) -> RunReport:
    from .equichow import campedelli_ring
    from .kappa import MAX_L, SYMBOLIC_VARS, class_of_symbolic, kappa_class, kappa_numerator

    if not 0 <= max_l <= MAX_L:
        raise UsageError(f"--max-l must lie in 0..{MAX_L}")
    rep = RunReport("campedelli kappa", {"max_l": max_l})
    R = campedelli_ring()
    table = []
    for l in range(max_l + 1):
        num = kappa_numerator(l)
        want = parse_poly(targets.KAPPA_NUMERATORS[l], SYMBOLIC_VARS)
        cls = kappa_class(l, R).scale(2 ** (l + 2))
        want_cls = class_of_symbolic(want, R, degree=l)
        table.append({"l": l, "numerator": format_poly(num), "class": str(cls)})
        rep.check(f"2^{l + 2} kappa_{l} as a polynomial", format_poly(want), format_poly(num), num == want)
        rep.check(f"2^{l + 2} kappa_{l} as a class", str(want_cls), str(cls), cls == want_cls)
    rep.results["table"] = table
    return rep


# -- polytopes ----------------------------------------------------------------------------

def _load_polytope(path):
    from .polytope import LatticePolytope, read_points

    return LatticePolytope(read_points(path))


def _polytope_checks(rep: RunReport, P, expect: str | None, ehrhart_limit=2_000_000):
    from .polytope import ResourceError, ehrhart_volume, is_reflexive

    stats = {"dim": P.dim, "vertices": len(P.vertices), "f_vector": list(P.f_vector())}
    f = stats["f_vector"]
    rep.check("Euler relation on proper faces", 1 - (-1) ** P.dim,
              sum((-1) ** i * f[i + 1] for i in range(P.dim)))
    n = len(P.vertices)
    vol = P.lattice_volume()
    vol_rev = P.lattice_volume(list(range(n))[::-1])
    stats["volume"] = vol
    rep.check("volume agrees across two triangulations", vol, vol_rev)
    try:
        rep.check("volume agrees with the Ehrhart-count oracle", vol, ehrhart_volume(P))
    except ResourceError as exc:
        rep.skip("volume agrees with the Ehrhart-count oracle", vol, str(exc))
    refl, interior = is_reflexive(P)
    stats["reflexive"] = refl
    stats["interior_points"] = [list(p) for p in interior]
    fv = P.facet_volumes()
    stats["facets"] = [{"volume": v, "vertices": k} for v, k in sorted(fv)]
    rep.results["stats"] = stats

    if expect:
        want = targets.POLYTOPES[expect]
        if "f_vector" in want:
            rep.check(f"f-vector ({expect})", list(want["f_vector"]), f)
        if "volume" in want:
            rep.check(f"normalised volume ({expect})", want["volume"], vol)
        if "reflexive" in want:
            rep.check(f"reflexive ({expect})", want["reflexive"], refl)
            if want["reflexive"]:
                rep.check(f"unique interior lattice point ({expect})", 1, len(interior))
        if "facets" in want:
            v, k, count = want["facets"]
            rep.check(f"facets: {count} of volume {v} with {k} vertices ({expect})",
                      [[v, k]] * count, [list(x) for x in sorted(fv)])


def cmd_polytope_stats(path, expect=None) -> RunReport:
    rep = RunReport("polytope stats", {"file": str(path), "expect": expect})
    _polytope_checks(rep, _load_polytope(path), expect)
    return rep


def cmd_polytope_minkowski(path_p, path_q, scale=1, expect=None) -> RunReport:
    from .polytope import minkowski_scaled

    rep = RunReport("polytope minkowski", {"files": [str(path_p), str(path_q)], "scale": scale,
                                           "expect": expect})
    S = minkowski_scaled(_load_polytope(path_p), _load_polytope(path_q), scale)
    f = list(S.f_vector())
    rep.results["f_vector"] = f
    rep.results["vertices"] = len(S.vertices)
    rep.check("Euler relation on proper faces", 1 - (-1) ** S.dim,
              sum((-1) ** i * f[i + 1] for i in range(S.dim)))
    if expect:
        rep.check(f"f-vector ({expect})", list(targets.POLYTOPES[expect]["f_vector"]), f)
    return rep


def cmd_polytope_ehrhart(path, dilation=1) -> RunReport:
    from .polytope import ehrhart_count, is_reflexive

    if dilation < 1:
        raise UsageError("--dilation must be positive")
    rep = RunReport("polytope ehrhart", {"file": str(path), "dilation": dilation})
    P = _load_polytope(path)
    counts = [ehrhart_count(P, t) for t in range(1, dilation + 1)]
    rep.results["counts"] = {str(t): c for t, c in enumerate(counts, start=1)}
    refl, interior = is_reflexive(P)
    rep.results["interior_points"] = len(interior)
    if refl:
        boundary = len(P.boundary_points())
        rep.results["boundary_points"] = boundary
        rep.check("reflexive: count minus boundary points is 1", 1, counts[0] - boundary)
    return rep


# -- burniat ------------------------------------------------------------------------------

def cmd_burniat(ledger_path=None) -> RunReport:
    from .burniat import (BASE_K2, TORIC_VOLUME, burniat_kappa0, burniat_kappa1_degree,
                          burniat_kappa2, kappa1_ledger, kappa2_ledger, load_ledger, toric_quartic)
    from .datafiles import KAPPA2_LEDGER, P4_POINTS, find_data

    rep = RunReport("burniat kappa", {"ledger": str(ledger_path) if ledger_path else None})
    k0 = burniat_kappa0(BASE_K2)
    rep.results["kappa0"] = k0
    rep.check("kappa_0", targets.BURNIAT_KAPPA0, k0)

    p4 = find_data(P4_POINTS)
    if p4 is not None:
        from .burniat import toric_top_power

        quartic = toric_top_power(_load_polytope(p4), Fraction(1, 2), 4)
        rep.inputs["toric_volume_source"] = P4_POINTS
    else:
        quartic = toric_quartic(TORIC_VOLUME)
        rep.inputs["toric_volume_source"] = "18 facets of volume 7 at lattice distance 1"
    rep.results["toric_quartic"] = quartic
    rep.check("toric quartic O(1/2)^4", targets.BURNIAT_TORIC_QUARTIC, quartic)

    l1 = kappa1_ledger()
    rep.results["kappa1_history"] = l1.history()
    rep.check("kappa_1 toric value on a boundary curve", targets.BURNIAT_KAPPA1_TORIC, l1.base_value)
    rep.check("kappa_1 degree on a boundary curve", targets.BURNIAT_KAPPA1_DEGREE, burniat_kappa1_degree(l1))

    l2 = load_ledger(ledger_path) if ledger_path else kappa2_ledger()
    if l2 is None:
        rep.skip("kappa_2", targets.BURNIAT_KAPPA2, f"no blowup ledger ({KAPPA2_LEDGER}) available")
    else:
        rep.results["kappa2_history"] = l2.history()
        rep.check("kappa_2 chain starts at the toric quartic", targets.BURNIAT_TORIC_QUARTIC, l2.base_value)
        rep.check("kappa_2", targets.BURNIAT_KAPPA2, burniat_kappa2(l2))
    return rep


# -- entry point --------------------------------------------------------------------------

def _write_json(path, payload):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(payload), fh, indent=2, sort_keys=True)
        fh.write("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS, help="write the report as JSON")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only failures; no progress")

    ap = argparse.ArgumentParser(prog="kappacalc", parents=[common], description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    top = ap.add_subparsers(dest="area", required=True)

    camp = top.add_parser("campedelli", help="the Campedelli moduli space").add_subparsers(dest="cmd", required=True)
    p = camp.add_parser("ring", parents=[common], help="Chow ring and its relations")
    p.add_argument("--verify-generation", action="store_true")
    p.add_argument("--emit-ideal", metavar="PATH", help="write the ideal generators as JSON")
    p = camp.add_parser("invariants", parents=[common], help="invariant subrings")
    p.add_argument("--group", choices=sorted(targets.INVARIANT_DIMS), default="gl32")
    p.add_argument("--alt-labeling", action="store_true", help="use a different labelling of the Fano plane")
    p = camp.add_parser("kappa", parents=[common], help="kappa classes")
    p.add_argument("--max-l", type=int, default=6)

    poly = top.add_parser("polytope", help="lattice polytopes").add_subparsers(dest="cmd", required=True)
    p = poly.add_parser("stats", parents=[common])
    p.add_argument("file")
    p.add_argument("--expect", choices=sorted(targets.POLYTOPES))
    p = poly.add_parser("minkowski", parents=[common])
    p.add_argument("file_p")
    p.add_argument("file_q")
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--expect", choices=sorted(targets.POLYTOPES))
    p = poly.add_parser("ehrhart", parents=[common])
    p.add_argument("file")
    p.add_argument("--dilation", type=int, default=1)

    burn = top.add_parser("burniat", help="degree-4 Burniat surfaces").add_subparsers(dest="cmd", required=True)
    p = burn.add_parser("kappa", parents=[common])
    p.add_argument("--ledger", metavar="FILE", help="blowup ledger for kappa_2")
    return ap


def run(args) -> RunReport:
    key = (args.area, args.cmd)
    if key == ("campedelli", "ring"):
        return cmd_campedelli_ring(args.verify_generation, args.emit_ideal)
    if key == ("campedelli", "invariants"):
        return cmd_invariants(args.group, args.alt_labeling)
    if key == ("campedelli", "kappa"):
        return cmd_kappa(args.max_l)
    if key == ("polytope", "stats"):
        return cmd_polytope_stats(args.file, args.expect)
    if key == ("polytope", "minkowski"):
        return cmd_polytope_minkowski(args.file_p, args.file_q, args.scale, args.expect)
    if key == ("polytope", "ehrhart"):
        return cmd_polytope_ehrhart(args.file, args.dilation)
    if key == ("burniat", "kappa"):
        return cmd_burniat(args.ledger)
    raise UsageError(f"unknown command {key}")


def main(argv=None) -> int:
    from .burniat import DataError
    from .polytope import DimensionError, PointFileError, ResourceError

    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    quiet = getattr(args, "quiet", False)
    json_path = getattr(args, "json", None)
    logging.basicConfig(level=logging.WARNING if quiet else logging.INFO, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        rep = run(args)
    except (UsageError, PointFileError, DimensionError, ResourceError, DataError) as exc:
        print(f"kappacalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"kappacalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if json_path:
        try:
            with open(json_path, "w", encoding="utf-8") as fh:
                fh.write(rep.dumps())
        except OSError as exc:
            print(f"kappacalc: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    if not quiet:
        print(rep.render())
    else:
        for c in rep.checks:
            if c.passed is False:
                print(f"FAIL {c.name}: computed {_short(c.computed)}, expected {_short(c.expected)}")
    return rep.exit_code()
