"""Extended ADE curves: a labelled Dynkin graph, genera of the components,
and one named intersection point per edge.

Intersection numbers are computed in the lattice (Z^V, S), i.e. every
component is treated as a (-2)-curve.  Self-intersections of reduced
components never enter the computations, so they are not stored.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from math import prod

import numpy as np

from .dynkin import ExtendedDynkinGraph, box_vectors, cartan_matrix
from .errors import InvalidGraph, NonRationalMultipleComponent, UnknownVertex


@dataclass(frozen=True)
class IntersectionPoint:
    name: str
    u: str
    w: str
    edge: int  # position in graph.edges


def _point_names(g):
    pairs = [(g.vertices[a], g.vertices[b]) for a, b in g.edges]
    totals = Counter(pairs)
    seen = Counter()
    points = []
    for k, (u, w) in enumerate(pairs):
        base = f"x_{u}.{w}"
        if totals[(u, w)] > 1:
            name = f"{base}#{seen[(u, w)]}"
            seen[(u, w)] += 1
        else:
            name = base
        points.append(IntersectionPoint(name, u, w, k))
    return tuple(points)


@dataclass(frozen=True)
class ExtendedADECurve:
    graph: ExtendedDynkinGraph
    genera: tuple
    points: tuple = field(default=None)

    def __post_init__(self):
        if self.points is None:
            object.__setattr__(self, "points", _point_names(self.graph))

    @property
    def vertices(self):
        return self.graph.vertices

    @property
    def labels(self):
        return self.graph.labels

    def genus_of(self, vertex):
        return self.genera[self.graph.index(vertex)]

    @cached_property
    def S(self):
        return cartan_matrix(self.graph)

    def point(self, name):
        for x in self.points:
            if x.name == name:
                return x
        raise UnknownVertex(f"unknown intersection point {name!r}")

    def points_on(self, vertex):
        return tuple(x for x in self.points if vertex in (x.u, x.w))


def make_curve(graph, genera=None):
    """Build and validate a curve; ``genera`` maps vertex names to genera."""
    genera = dict(genera or {})
    unknown = sorted(set(genera) - set(graph.vertices))
    if unknown:
        raise UnknownVertex(f"unknown vertices in genera: {', '.join(unknown)}")
    c = ExtendedADECurve(graph, tuple(int(genera.get(v, 0)) for v in graph.vertices))
    validate(c)
    return c


@dataclass(frozen=True)
class ValidationReport:
    graph: str
    inner: tuple
    outer: tuple
    genera: dict
    points: tuple


def validate(c):
    g = c.graph
    if len(c.genera) != len(g.vertices):
        raise InvalidGraph("one genus per vertex is required")
    if any(not isinstance(x, int) or x < 0 for x in c.genera):
        raise InvalidGraph("genera must be nonnegative integers")
    names = [x.name for x in c.points]
    if len(c.points) != len(g.edges) or len(set(names)) != len(names):
        raise InvalidGraph("every edge needs exactly one uniquely named point")
    bad = [v for v in g.inner if c.genus_of(v) > 0]
    if bad:
        raise NonRationalMultipleComponent(bad)
    return ValidationReport(
        graph=g.name,
        inner=g.inner,
        outer=g.outer,
        genera=dict(zip(g.vertices, c.genera)),
        points=tuple(names),
    )


def genus(c):
    """Arithmetic genus 1 + sum of the genera of the reduced components."""
    return 1 + sum(c.genus_of(o) for o in c.graph.outer)


def intersection_number(c, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return int(a @ c.S @ b)


def component(c, vertex):
    """The subcurve C_v as a lattice vector."""
    v = [0] * len(c.vertices)
    v[c.graph.index(vertex)] = 1
    return tuple(v)


def complement(c, vertex):
    """C^v = C - C_v."""
    v = list(c.labels)
    v[c.graph.index(vertex)] -= 1
    return tuple(v)


def subcurves(c, proper_only=False):
    """All subcurves 0 <= z <= m in lexicographic order."""
    out = [tuple(int(x) for x in row) for row in box_vectors(c.labels)]
    if proper_only:
        out = out[1:-1]
    return out


def subcurve_count(c):
    return prod(m + 1 for m in c.labels)


@dataclass(frozen=True)
class ConnectivityReport:
    total: tuple
    decompositions: int
    minimum: int
    witness: tuple  # (A, B) attaining the minimum, lexicographically first A
    required: int

    @property
    def ok(self):
        return self.minimum is None or self.minimum >= self.required


def _min_split(c, total, required):
    S = c.S
    total = np.asarray(total, dtype=np.int64)
    A = box_vectors(total.tolist())[1:-1]
    B = total[None, :] - A
    if len(A) == 0:
        # a single reduced component: nothing to decompose
        return ConnectivityReport(tuple(int(x) for x in total), 0, None, None, required)
    values = np.einsum("ij,jk,ik->i", A, S, B)
    k = int(np.argmin(values))
    return ConnectivityReport(
        total=tuple(int(x) for x in total),
        decompositions=len(A),
        minimum=int(values[k]),
        witness=(tuple(int(x) for x in A[k]), tuple(int(x) for x in B[k])),
        required=required,
    )


def check_2_connected(c):
    """Minimum of A.B over all decompositions C = A + B into effective nonzero parts."""
    return _min_split(c, c.labels, 2)


def check_1_connected_complement(c, vertex):
    """Minimum of A.B over all decompositions C - C_v = A + B."""
    return _min_split(c, complement(c, vertex), 1)


@dataclass(frozen=True)
class CodimensionReport:
    family_dimension: int
    ambient_dimension: int
    codimension: int


def stratum_codimension(c):
    """Codimension in |C| of curves of the same type, for C in a K3 linear system.

    Moving the reduced components in their own linear systems gives a
    family of dimension sum(g_o); the ambient system has dimension g(C).
    """
    family = sum(c.genus_of(o) for o in c.graph.outer)
    ambient = genus(c)
    report = CodimensionReport(family, ambient, ambient - family)
    assert report.codimension == 1
    return report
