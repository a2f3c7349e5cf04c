"""Invariant suite behind the ``selftest`` command.

A scaled-down version of the acceptance checks, quick enough to run on
every invocation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .charcycle import (
    EllipticCurveOverPrimeField,
    InvalidEllipticCurve,
    curve_points,
    elliptic_translation_class_order,
)
from .curve import make_curve
from .dynkin import (
    build_graph,
    label_identity_failures,
    null_vector_check,
    seminegativity_scan,
    supported_graphs,
)
from .moduli import consistency_check, describe_moduli
from .partitions import (
    dual_partition,
    min_sum_identity_check,
    partitions_of,
    proof_inequality_scan,
    square_sum_identity_check,
)
from .polarisation import check_assumption_H, make_polarisation, search_admissible
from .sheaves import enumerate_stable


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _lattice():
    bad = []
    for g in supported_graphs(9):
        if not null_vector_check(g).ok or label_identity_failures(g):
            bad.append(g.name)
        elif not seminegativity_scan(g, 2).ok:
            bad.append(g.name)
    return not bad, f"{len(supported_graphs(9))} graphs" + (f"; failing {bad}" if bad else "")


def _partitions():
    count = 0
    parts = [p for n in range(1, 8) for p in partitions_of(n)]
    for p in parts:
        if dual_partition(dual_partition(p)) != p or not square_sum_identity_check(p).holds:
            return False, f"identity fails at {p}"
        count += 1
    for p in parts:
        for q in parts:
            if not min_sum_identity_check(p, q).holds:
                return False, f"min-sum identity fails at {p}, {q}"
    return True, f"{count} partitions"


def _proof_scan():
    families = 0
    for g in supported_graphs(9):
        report = proof_inequality_scan(make_curve(g), 2)
        if not report.ok:
            return False, f"{g.name}: {len(report.violations)} violations"
        families += report.families
    return True, f"{families} families"


def _moduli():
    for g in supported_graphs(9):
        c = make_curve(g)
        p = make_polarisation(c, [1] * len(g.vertices))
        consistency_check(describe_moduli(c, p, 1), c)
    return True, "all graphs, chi = 1"


def _classification():
    runs = 0
    for kind, n in (("A", 1), ("A", 2), ("A", 3), ("D", 4)):
        c = make_curve(build_graph(kind, n))
        for chi in (1, 2, 3):
            for p in search_admissible(c, chi, 2):
                enumerate_stable(c, p, chi)
                runs += 1
    return True, f"{runs} admissible polarisations"


def _polarisation_examples():
    c = make_curve(build_graph("A", 1))
    p12 = make_polarisation(c, [1, 2])
    p11 = make_polarisation(c, [1, 1])
    for chi in range(1, 31):
        if check_assumption_H(c, p12, chi).passes != (chi % 3 != 0):
            return False, f"e = (1, 2), chi = {chi}"
        if check_assumption_H(c, p11, chi).passes != (chi % 2 == 1):
            return False, f"e = (1, 1), chi = {chi}"
    return True, "chi in 1..30"


def _elliptic():
    points = 0
    for p in (5, 7, 11, 13):
        for a in range(p):
            for b in range(p):
                try:
                    E = EllipticCurveOverPrimeField(p, a, b)
                except InvalidEllipticCurve:
                    continue
                for s in curve_points(E)[1:]:
                    elliptic_translation_class_order(E, s)
                    points += 1
    return True, f"{points} points over p <= 13"


CHECKS = (
    ("lattice", _lattice),
    ("partitions", _partitions),
    ("proof-scan", _proof_scan),
    ("moduli", _moduli),
    ("classification", _classification),
    ("polarisation-examples", _polarisation_examples),
    ("elliptic-orders", _elliptic),
)


def run_selftest():
    results = []
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a failing invariant must not abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
    return results
