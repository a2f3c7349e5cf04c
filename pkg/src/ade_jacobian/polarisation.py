"""Polarisation degrees on the components and the admissibility condition.

A polarisation is recorded only through its degrees ``e_v`` on the reduced
components C_v; all arithmetic is done with :class:`fractions.Fraction`
so that boundary cases such as ``e_o * chi / e`` being an integer are
decided exactly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import (
    AssumptionNotSatisfied,
    InvalidPolarisation,
    NonPositiveChi,
    UnknownVertex,
    ZeroEulerCharacteristic,
)


def parse_degree(value):
    """Accept an int, a Fraction or a ``"p/q"`` string; reject floats."""
    if isinstance(value, bool):
        raise InvalidPolarisation(f"invalid degree {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidPolarisation(f"invalid degree {value!r}") from None
    raise InvalidPolarisation(f"degrees must be integers or 'p/q' strings, got {value!r}")


@dataclass(frozen=True)
class Polarisation:
    degrees: tuple  # Fractions, aligned with the graph's vertex order

    def __post_init__(self):
        if any(d <= 0 for d in self.degrees):
            raise InvalidPolarisation("all degrees must be positive")

    def scaled(self, factor):
        factor = Fraction(factor)
        if factor <= 0:
            raise InvalidPolarisation("scale factor must be positive")
        return Polarisation(tuple(d * factor for d in self.degrees))

    def integral(self):
        """Degrees multiplied by the common denominator, as Python ints."""
        den = reduce(math.lcm, (d.denominator for d in self.degrees), 1)
        return tuple(int(d * den) for d in self.degrees)

    def as_strings(self):
        return tuple(str(d) for d in self.degrees)


def make_polarisation(curve, degrees):
    """``degrees`` is a mapping vertex -> degree or a sequence in vertex order."""
    vertices = curve.vertices
    if isinstance(degrees, dict):
        unknown = sorted(set(degrees) - set(vertices))
        if unknown:
            raise UnknownVertex(f"unknown vertices in polarisation: {', '.join(unknown)}")
        missing = [v for v in vertices if v not in degrees]
        if missing:
            raise InvalidPolarisation(f"missing degrees for {', '.join(missing)}")
        values = [degrees[v] for v in vertices]
    else:
        values = list(degrees)
        if len(values) != len(vertices):
            raise InvalidPolarisation(
                f"expected {len(vertices)} degrees, got {len(values)}"
            )
    return Polarisation(tuple(parse_degree(x) for x in values))


def total_degree(curve, p):
    return sum(m * d for m, d in zip(curve.labels, p.degrees))


def inner_degree(curve, p):
    """e_I = sum over multiple components of m_i e_i."""
    return sum(m * d for m, d in zip(curve.labels, p.degrees) if m > 1)


def _check_chi(chi):
    if chi == 0:
        raise ZeroEulerCharacteristic()
    if chi < 0:
        raise NonPositiveChi(f"chi must be positive, got {chi}")


@dataclass(frozen=True)
class BVector:
    values: tuple
    chi: int

    def __getitem__(self, i):
        return self.values[i]


def b_vector(curve, p, chi):
    """b_v = ceil(e_v * chi / e) for every vertex."""
    _check_chi(chi)
    e = total_degree(curve, p)
    return BVector(tuple(math.ceil(d * chi / e) for d in p.degrees), chi)


@dataclass(frozen=True)
class AdmissibilityReport:
    chi: int
    b: tuple
    sum_outer: int
    target: int
    integral_outer: tuple  # vertices o with e_o * chi / e an integer

    @property
    def passes(self):
        return self.sum_outer == self.target


def check_assumption_H(curve, p, chi):
    """Report whether sum_{o in O} b_o equals chi + |O| - 1."""
    b = b_vector(curve, p, chi)
    e = total_degree(curve, p)
    g = curve.graph
    outer_idx = [g.index(o) for o in g.outer]
    return AdmissibilityReport(
        chi=chi,
        b=b.values,
        sum_outer=sum(b[i] for i in outer_idx),
        target=chi + len(outer_idx) - 1,
        integral_outer=tuple(
            g.vertices[i] for i in outer_idx if (p.degrees[i] * chi / e).denominator == 1
        ),
    )


def require_assumption_H(curve, p, chi):
    report = check_assumption_H(curve, p, chi)
    if not report.passes:
        raise AssumptionNotSatisfied(
            f"sum of b_o over reduced components is {report.sum_outer}, "
            f"need chi + |O| - 1 = {report.target}",
            report,
        )
    return report


@dataclass(frozen=True)
class InnerBoundReport:
    inner_b_all_one: bool
    subsets: int
    checks: int
    failures: tuple  # (J, f) pairs violating the strict inequality

    @property
    def ok(self):
        return self.inner_b_all_one and not self.failures


def check_lemma_ei(curve, p, chi):
    """Verify the two consequences of the admissibility condition.

    (i) b_i = 1 on multiple components.  (ii) For every J subset of O and
    every f on the grid (1/D)Z in [0, e_I] (D the common denominator of
    the degrees), with J proper or f < e_I:
    ``1 - |J| + sum_J b_j > (f + sum_J e_j) * chi / e``.
    """
    require_assumption_H(curve, p, chi)
    g = curve.graph
    b = b_vector(curve, p, chi)
    e = total_degree(curve, p)
    e_inner = inner_degree(curve, p)
    den = reduce(math.lcm, (d.denominator for d in p.degrees), 1)
    top = int(e_inner * den)

    inner_ok = all(b[g.index(i)] == 1 for i in g.inner)
    outer = g.outer
    failures = []
    subsets = checks = 0
    for size in range(len(outer) + 1):
        for J in itertools.combinations(outer, size):
            subsets += 1
            idx = [g.index(j) for j in J]
            lhs = 1 - len(J) + sum(b[i] for i in idx)
            e_J = sum(p.degrees[i] for i in idx)
            for F in range(top + 1):
                if len(J) == len(outer) and F == top:
                    continue
                checks += 1
                if not lhs > (Fraction(F, den) + e_J) * chi / e:
                    failures.append((J, Fraction(F, den)))
    return InnerBoundReport(inner_ok, subsets, checks, tuple(failures))


def search_admissible(curve, chi, degree_bound):
    """Integer degree vectors in [1, bound]^V satisfying the admissibility condition."""
    _check_chi(chi)
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    out = []
    for degs in itertools.product(range(1, degree_bound + 1), repeat=len(curve.vertices)):
        p = Polarisation(tuple(Fraction(d) for d in degs))
        if check_assumption_H(curve, p, chi).passes:
            out.append(p)
    return out


def dual_b(b):
    """Parameters (2 - b_v) of the stable sheaves L(-x) with Euler characteristic -chi."""
    return BVector(tuple(2 - x for x in b.values), -b.chi)


def dual_parameters(curve, p, chi):
    require_assumption_H(curve, p, chi)
    return dual_b(b_vector(curve, p, chi))
