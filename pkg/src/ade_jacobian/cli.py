"""Command-line front end.

Exit codes: 0 success, 1 domain error (diagnostic ``<ErrorName>: message``
on standard error), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import charcycle, curve as curve_mod, documents, moduli, sheaves
from ._parallel import thread_cap
from .errors import AdeJacobianError, DocumentError, SelftestFailed
from .partitions import proof_inequality_scan
from .polarisation import (
    b_vector,
    check_assumption_H,
    check_lemma_ei,
    require_assumption_H,
    search_admissible,
)
from .report import Report, render
from .selftest import run_selftest


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input helpers -----------------------------------------------------------


def _curve(args):
    doc = documents.load(documents.CurveDocument, args.curve)
    return doc, documents.curve_from_document(doc)


def _chi(args, doc):
    chi = args.chi if getattr(args, "chi", None) is not None else doc.chi
    if chi is None:
        raise UsageError("chi is required: pass --chi or set it in the curve document")
    return chi


def _polarisation(args, doc, c):
    path = getattr(args, "polarisation", None)
    if path is not None:
        mapping = documents.load(documents.PolarisationDocument, path).polarisation
    elif doc.polarisation is not None:
        mapping = doc.polarisation
    else:
        raise DocumentError("no polarisation: add one to the curve document or pass --polarisation")
    return documents.polarisation_from_mapping(c, mapping)


def _curve_inputs(args, c, p=None, chi=None):
    inputs = {"curve": args.curve, "graph": c.graph.name}
    if p is not None:
        inputs["polarisation"] = dict(zip(c.vertices, p.as_strings()))
    if chi is not None:
        inputs["chi"] = chi
    return inputs


def _marking_row(f, verdict=None, pres=None):
    row = {"oChi": list(f.o_chi), "iSpecial": sorted(f.i_special), "tSpecial": sorted(f.t_special)}
    if verdict is not None:
        row["status"] = verdict.status
    if pres is not None:
        row["form"] = pres.kind
        row["at"] = pres.where
    return row


# -- commands ------------------------------------------------------------------


def cmd_validate(args):
    doc, c = _curve(args)
    v = curve_mod.validate(c)
    two = curve_mod.check_2_connected(c)
    return Report(
        "validate",
        _curve_inputs(args, c),
        {
            "outer": list(v.outer),
            "inner": list(v.inner),
            "genera": v.genera,
            "labels": dict(zip(c.vertices, c.labels)),
            "points": list(v.points),
            "genus": curve_mod.genus(c),
            "two_connected": two.ok,
            "min_split_intersection": two.minimum,
        },
    )


def cmd_polarisation_check(args):
    doc, c = _curve(args)
    chi = _chi(args, doc)
    p = _polarisation(args, doc, c)
    require_assumption_H(c, p, chi)
    report = check_assumption_H(c, p, chi)
    lemma = check_lemma_ei(c, p, chi)
    return Report(
        "polarisation-check",
        _curve_inputs(args, c, p, chi),
        {
            "b": dict(zip(c.vertices, report.b)),
            "sum_outer_b": report.sum_outer,
            "target": report.target,
            "admissible": report.passes,
            "inner_b_all_one": lemma.inner_b_all_one,
            "strict_inequality_checks": lemma.checks,
            "strict_inequality_failures": len(lemma.failures),
        },
    )


def cmd_polarisation_search(args):
    doc, c = _curve(args)
    chi = _chi(args, doc)
    if args.bound < 1:
        raise UsageError("--bound must be >= 1")
    found = search_admissible(c, chi, args.bound)
    rows = [dict(zip(c.vertices, (int(d) for d in p.degrees))) for p in found]
    return Report(
        "polarisation-search",
        {**_curve_inputs(args, c, chi=chi), "bound": args.bound},
        {"count": len(found), "polarisations": rows},
    )


def cmd_stability(args):
    doc, c = _curve(args)
    p = _polarisation(args, doc, c)
    m = documents.load(documents.MarkingDocument, args.marking)
    f = sheaves.make_marking(c, m.oChi, m.iSpecial, m.tSpecial)
    chi = sheaves.total_chi(f)
    if args.chi is not None and args.chi != chi:
        raise sheaves.InvalidMarking(f"marking has chi = {chi}, but --chi {args.chi} was given")
    verdict = sheaves.stability_test(f, p)
    results = {
        "status": verdict.status,
        "chi": chi,
        "leading": str(verdict.leading),
        "witness": dict(zip(c.vertices, verdict.witness)) if verdict.witness else None,
        "restriction_chi": dict(zip(c.vertices, f.restriction_data())),
    }
    notes = []
    if verdict.stable and check_assumption_H(c, p, chi).passes:
        pres = sheaves.presentation(f, p)
        results["form"] = pres.kind
        results["at"] = pres.where
        notes.append(pres.describe())
    return Report(
        "stability",
        {**_curve_inputs(args, c, p, chi), "marking": args.marking},
        results,
        notes,
    )


def cmd_enumerate(args):
    doc, c = _curve(args)
    chi = _chi(args, doc)
    p = _polarisation(args, doc, c)
    if args.window < 0:
        raise UsageError("--window must be >= 0")
    b = b_vector(c, p, chi)
    if args.unguarded:
        found = sheaves.enumerate_stable_unguarded(c, p, chi, args.window, include_semistable=True)
        rows = [_marking_row(f, v) for f, v in found]
    else:
        found = sheaves.enumerate_stable(c, p, chi, args.window)
        rows = [_marking_row(f, v, sheaves.presentation(f, p)) for f, v in found]
    stable = sum(1 for _, v in found if v.stable)
    return Report(
        "enumerate",
        {**_curve_inputs(args, c, p, chi), "window": args.window, "unguarded": args.unguarded},
        {"b": dict(zip(c.vertices, b.values)), "stable_count": stable, "markings": rows},
    )


def cmd_moduli(args):
    doc, c = _curve(args)
    chi = _chi(args, doc)
    p = _polarisation(args, doc, c)
    desc = moduli.describe_moduli(c, p, chi)
    moduli.consistency_check(desc, c)
    comps = [
        {
            "name": y.name,
            "kind": y.kind,
            "dimension": y.dimension,
            "reduced": y.reduced,
            "multiplicity": y.multiplicity,
            "provenance": y.multiplicity_provenance,
        }
        for y in desc.components
    ]
    locus = moduli.singular_locus(c)
    notes = [
        f"{y.name} multiplicity {y.multiplicity} is a CONJECTURE"
        for y in desc.components
        if y.multiplicity_provenance == moduli.CONJECTURE
    ]
    return Report(
        "moduli",
        _curve_inputs(args, c, p, chi),
        {
            "group": desc.group,
            "j_dimension": desc.j_dimension,
            "total_dimension": desc.total_dimension,
            "components": comps,
            "sections": [{"component": s.component, "point": s.point, "meets": s.meets} for s in desc.sections],
            "intersections": [{"a": a, "b": b} for a, b in moduli.component_edges(desc)],
            "singular_locus": {"kind": locus.kind, "strata": list(locus.strata), "dimension": locus.dimension},
        },
        notes,
    )


def _parse_elliptic(text):
    try:
        p, a, b, sx, sy = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("--elliptic expects five integers p,a,b,sx,sy") from None
    return p, a, b, sx, sy


def cmd_char_cycle(args):
    doc, c = _curve(args)
    inputs = _curve_inputs(args, c)
    extra = {}
    spec = None
    if args.torsion is not None:
        t = documents.load(documents.TorsionDocument, args.torsion)
        spec = charcycle.make_torsion_spec(c, t.orders)
        inputs["torsion"] = args.torsion
    elif args.elliptic is not None:
        p, a, b, sx, sy = _parse_elliptic(args.elliptic)
        E = charcycle.EllipticCurveOverPrimeField(p, a, b)
        s = charcycle.ec_point(E, sx, sy)
        spec, order = charcycle.elliptic_torsion_spec(c, E, s)
        inputs["elliptic"] = {"p": p, "a": a, "b": b, "s": [sx, sy]}
        extra = {"order_s": order.m, "order_2s": order.k}
    r = charcycle.char_cycle(c, spec)
    results = {
        "cycle_type": r.cycle_type,
        "laps": r.laps,
        "curve_count": r.curve_count,
        **extra,
    }
    if r.multiplicities:
        results["multiplicities"] = dict(zip(c.vertices, r.multiplicities))
    return Report("char-cycle", inputs, results, [r.note])


def cmd_proof_scan(args):
    doc, c = _curve(args)
    if args.parts < 1:
        raise UsageError("--parts must be >= 1")
    r = proof_inequality_scan(c, args.parts)
    return Report(
        "proof-scan",
        {**_curve_inputs(args, c), "parts": args.parts},
        {
            "families": r.families,
            "maximum": r.maximum,
            "nonnegative": [{"family": list(f), "value": v} for f, v in r.nonnegative],
            "violations": len(r.violations),
            "ok": r.ok,
        },
    )


def cmd_selftest(args):
    results = run_selftest()
    report = Report(
        "selftest",
        {},
        {"checks": [{"check": r.name, "ok": r.ok, "detail": r.detail} for r in results]},
    )
    failed = [r.name for r in results if not r.ok]
    if failed:
        report.status = "error"
        raise SelftestFailed(f"failing checks: {', '.join(failed)}", report)
    return report


# -- parser --------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = _Parser(prog="ade-jacobian", description="Compactified Jacobians of extended ADE curves.", parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_text, curve=True):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        if curve:
            sp.add_argument("--curve", required=True, help="curve document (JSON)")
        sp.set_defaults(handler=fn)
        return sp

    add("validate", cmd_validate, "validate a curve document")

    sp = add("polarisation-check", cmd_polarisation_check, "check the admissibility condition")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--polarisation", help="polarisation document overriding the curve's")

    sp = add("polarisation-search", cmd_polarisation_search, "list admissible integer polarisations")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--bound", type=int, required=True)

    sp = add("stability", cmd_stability, "test one marked sheaf")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--marking", required=True, help="marking document (JSON)")
    sp.add_argument("--polarisation")

    sp = add("enumerate", cmd_enumerate, "list the stable markings")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--window", type=int, default=sheaves.DEFAULT_WINDOW)
    sp.add_argument("--polarisation")
    sp.add_argument("--unguarded", action="store_true", help="skip the admissibility condition and show semistable markings")

    sp = add("moduli", cmd_moduli, "describe the reduced compactified Jacobian")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--polarisation")

    sp = add("char-cycle", cmd_char_cycle, "characteristic cycle")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--torsion", help="torsion document (JSON)")
    group.add_argument("--elliptic", metavar="p,a,b,sx,sy")

    sp = add("proof-scan", cmd_proof_scan, "scan the lattice inequality over partition families")
    sp.add_argument("--parts", type=int, default=3)

    add("selftest", cmd_selftest, "run the invariant suite", curve=False)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_cap()
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=stderr)
        print(exc, file=stderr)
        return 2
    except ValueError as exc:  # bad ADE_JACOBIAN_THREADS
        print(f"usage error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return exc.code or 0

    as_json = getattr(args, "json", False)
    try:
        report = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except AdeJacobianError as exc:
        print(f"{exc.code}: {exc}", file=stderr)
        if isinstance(exc, SelftestFailed) and exc.report is not None:
            stdout.write(render(exc.report, as_json))
        return 1
    stdout.write(render(report, as_json))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
