"""Symbolic description of the reduced compactified Jacobian.

Every vertex v contributes one component Y_v of M_red.  For reduced
components Y_o is a P^1-bundle over J whose boundary consists of one
section per intersection point on C_o; for multiple components Y_i is the
stratum J x C_i of sheaves singular along C_i.  J stands for the product
of the Picard varieties of the reduced components and is carried only by
its dimension.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curve import genus
from .dynkin import ExtendedDynkinGraph, to_networkx
from .errors import InconsistentDescription
from .polarisation import require_assumption_H, _check_chi

P1_BUNDLE = "P1BundleOverJ"
SINGULAR_STRATUM = "SingularStratum"

THEOREM = "THEOREM"
CONJECTURE = "CONJECTURE"


@dataclass(frozen=True)
class ModuliComponent:
    name: str
    vertex: str
    kind: str
    base_dimension: int
    dimension: int
    reduced: bool
    multiplicity: int
    multiplicity_provenance: str


@dataclass(frozen=True)
class Section:
    component: str
    point: str
    meets: str  # the other component containing this section


@dataclass(frozen=True)
class ModuliDescription:
    graph: str
    chi: int
    components: tuple
    sections: tuple
    intersection_graph: ExtendedDynkinGraph
    group: str
    j_dimension: int
    j_factors: tuple  # Pic of each reduced component
    total_dimension: int


def describe_moduli(curve, p, chi):
    _check_chi(chi)
    require_assumption_H(curve, p, chi)
    g = curve.graph
    j_dim = sum(curve.genus_of(o) for o in g.outer)
    total = genus(curve)
    components = []
    for v, m in zip(g.vertices, g.labels):
        if m == 1:
            components.append(
                ModuliComponent(f"Y_{v}", v, P1_BUNDLE, j_dim, j_dim + 1, True, 1, THEOREM)
            )
        else:
            components.append(
                ModuliComponent(f"Y_{v}", v, SINGULAR_STRATUM, j_dim, j_dim + 1, False, m, CONJECTURE)
            )
    sections = []
    for x in curve.points:
        for here, there in ((x.u, x.w), (x.w, x.u)):
            if g.label(here) == 1:
                sections.append(Section(f"Y_{here}", x.name, f"Y_{there}"))
    # Y_u and Y_w meet along the locus of sheaves singular at x = C_u n C_w,
    # one edge per intersection point.
    meeting = tuple(
        tuple(sorted((g.index(x.u), g.index(x.w)))) for x in curve.points
    )
    intersection_graph = ExtendedDynkinGraph(g.kind, g.n, g.vertices, meeting, g.labels)
    return ModuliDescription(
        graph=g.name,
        chi=chi,
        components=tuple(components),
        sections=tuple(sections),
        intersection_graph=intersection_graph,
        group="Gm" if not g.inner else "Ga",
        j_dimension=j_dim,
        j_factors=tuple(f"Pic(C_{o})" for o in g.outer),
        total_dimension=total,
    )


def component_edges(desc):
    """Edges between moduli components, one per point where two of them meet."""
    g = desc.intersection_graph
    return sorted(
        (f"Y_{g.vertices[a]}", f"Y_{g.vertices[b]}") for a, b in g.edges
    )


@dataclass(frozen=True)
class SingularLocus:
    graph: str
    strata: tuple  # names of point strata or multiple components
    kind: str  # "points" or "components"
    dimension: int


def singular_locus(curve):
    """J x (C_sing)_red as a list of strata with its dimension."""
    g = curve.graph
    j_dim = sum(curve.genus_of(o) for o in g.outer)
    if not g.inner:
        return SingularLocus(g.name, tuple(x.name for x in curve.points), "points", j_dim)
    return SingularLocus(g.name, tuple(f"C_{i}" for i in g.inner), "components", j_dim + 1)


@dataclass(frozen=True)
class ConsistencyReport:
    checks: tuple  # names of the passed checks


def consistency_check(desc, curve):
    """Cross-check a description against the curve; raise on the first failure."""
    import networkx as nx

    g = curve.graph
    checks = []

    emitted = to_networkx(desc.intersection_graph)
    if not nx.is_isomorphic(emitted, to_networkx(g)):
        raise InconsistentDescription("graph", "intersection graph is not isomorphic to the dual graph")
    expected_edges = sorted((f"Y_{g.vertices[a]}", f"Y_{g.vertices[b]}") for a, b in g.edges)
    if component_edges(desc) != expected_edges:
        raise InconsistentDescription("graph", "edges do not follow v -> Y_v")
    checks.append("graph")

    total = genus(curve)
    if desc.total_dimension != total:
        raise InconsistentDescription("dimension", f"total {desc.total_dimension} != g(C) = {total}")
    for comp in desc.components:
        if comp.dimension != total or comp.base_dimension + 1 != total:
            raise InconsistentDescription("dimension", f"{comp.name} has dimension {comp.dimension}")
    checks.append("dimension")

    for o in g.outer:
        count = sum(1 for s in desc.sections if s.component == f"Y_{o}")
        if count != g.degree(o):
            raise InconsistentDescription("sections", f"Y_{o} has {count} sections, degree {g.degree(o)}")
    checks.append("sections")

    if (desc.group == "Gm") != (not g.inner) or desc.group not in ("Gm", "Ga"):
        raise InconsistentDescription("group", f"group {desc.group} for {g.name}")
    checks.append("group")

    for comp in desc.components:
        multiple = g.label(comp.vertex) > 1
        if multiple and (comp.reduced or comp.multiplicity_provenance != CONJECTURE):
            raise InconsistentDescription("multiplicity", f"{comp.name} must carry a conjectural multiplicity")
    checks.append("multiplicity")
    return ConsistencyReport(tuple(checks))
