"""Extended (affine) Dynkin graphs of type A~n, D~n, E~6, E~7, E~8.

Vertices are named ``v0``..``vN`` following the Bourbaki numbering of the
affine diagrams, so ``v0`` is always the extending node.  For A~n the
vertices form the cycle v0 - v1 - ... - vn - v0; A~1 is the two-vertex
multigraph with a doubled edge.

The Cartan-type matrix ``S`` is minus the extended Cartan matrix:
``S[v, v] = -2`` and ``S[v, w]`` is the number of edges between v and w.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from .errors import DimensionMismatch, InvalidGraph, InvalidRank

KINDS = ("A", "D", "E")

# Bourbaki edges and marks of the exceptional affine diagrams.
_E_DATA = {
    6: (
        [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)],
        (1, 1, 2, 2, 3, 2, 1),
    ),
    7: (
        [(0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)],
        (1, 2, 2, 3, 4, 3, 2, 1),
    ),
    8: (
        [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)],
        (1, 2, 3, 4, 6, 5, 4, 3, 2),
    ),
}


@dataclass(frozen=True)
class ExtendedDynkinGraph:
    kind: str
    n: int
    vertices: tuple
    edges: tuple  # pairs of vertex indices (i < j), repeated for multi-edges
    labels: tuple

    @property
    def name(self):
        return f"{self.kind}~{self.n}"

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def _index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, vertex):
        try:
            return self._index[vertex]
        except KeyError:
            raise InvalidGraph(f"unknown vertex {vertex!r} for {self.name}") from None

    def label(self, vertex):
        return self.labels[self.index(vertex)]

    @property
    def outer(self):
        """Vertices of label 1 (the reduced components), in canonical order."""
        return tuple(v for v, m in zip(self.vertices, self.labels) if m == 1)

    @property
    def inner(self):
        """Vertices of label > 1 (the multiple components)."""
        return tuple(v for v, m in zip(self.vertices, self.labels) if m > 1)

    def edge_count(self, i, j):
        a, b = min(i, j), max(i, j)
        return sum(1 for e in self.edges if e == (a, b))

    def degree(self, vertex):
        i = self.index(vertex)
        return sum((e[0] == i) + (e[1] == i) for e in self.edges)

    def neighbours(self, vertex):
        """Adjacent vertex names, repeated according to edge multiplicity."""
        i = self.index(vertex)
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(self.vertices[b])
            elif b == i:
                out.append(self.vertices[a])
        return out

    def to_dict(self):
        return {"kind": self.kind, "n": self.n}


def build_graph(kind, n=None):
    """Construct the extended Dynkin graph of the given kind and rank.

    ``kind`` is one of ``"A"``, ``"D"``, ``"E"`` (a trailing ``~`` is
    tolerated).  Raises :class:`InvalidRank` if ``n`` is out of range.
    """
    kind = str(kind).rstrip("~").upper()
    if kind not in KINDS:
        raise InvalidGraph(f"unsupported graph kind {kind!r}")
    if n is None or isinstance(n, bool) or not isinstance(n, int):
        raise InvalidRank(f"{kind}~ requires an integer rank, got {n!r}")

    if kind == "A":
        if n < 1:
            raise InvalidRank(f"A~n requires n >= 1, got {n}")
        edges = [tuple(sorted((i, (i + 1) % (n + 1)))) for i in range(n + 1)]
        labels = (1,) * (n + 1)
    elif kind == "D":
        if n < 4:
            raise InvalidRank(f"D~n requires n >= 4, got {n}")
        edges = [(0, 2), (1, 2)]
        edges += [(i, i + 1) for i in range(2, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n)]
        labels = tuple(1 if i in (0, 1, n - 1, n) else 2 for i in range(n + 1))
    else:
        if n not in _E_DATA:
            raise InvalidRank(f"E~n requires n in {{6, 7, 8}}, got {n}")
        edges, labels = _E_DATA[n]
        edges = [tuple(sorted(e)) for e in edges]

    vertices = tuple(f"v{i}" for i in range(len(labels)))
    return ExtendedDynkinGraph(kind, n, vertices, tuple(edges), tuple(labels))


def supported_graphs(max_vertices=9):
    """All supported graphs with at most ``max_vertices`` vertices."""
    out = [build_graph("A", n) for n in range(1, max_vertices)]
    out += [build_graph("D", n) for n in range(4, max_vertices)]
    out += [build_graph("E", n) for n in (6, 7, 8) if n + 1 <= max_vertices]
    return out


def identify_graph(vertex_labels, edges):
    """Match a user-supplied labelled multigraph against the supported kinds.

    ``vertex_labels`` maps vertex name to label, ``edges`` is a list of
    vertex-name pairs (repeat a pair for a multi-edge).  Returns the
    canonical graph together with the vertex renaming, or raises
    :class:`InvalidGraph` when no supported graph is isomorphic.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import MultiGraphMatcher

    user = nx.MultiGraph()
    for v, m in vertex_labels.items():
        user.add_node(v, label=m)
    for u, w in edges:
        if u not in vertex_labels or w not in vertex_labels:
            raise InvalidGraph(f"edge ({u}, {w}) mentions an unknown vertex")
        if u == w:
            raise InvalidGraph(f"loop at {u} is not allowed")
        user.add_edge(u, w)

    size = len(vertex_labels)
    candidates = []
    if size >= 2:
        candidates.append(build_graph("A", size - 1))
    if size >= 5:
        candidates.append(build_graph("D", size - 1))
    if size - 1 in _E_DATA:
        candidates.append(build_graph("E", size - 1))

    for g in candidates:
        target = to_networkx(g)
        matcher = MultiGraphMatcher(
            target, user, node_match=lambda a, b: a["label"] == b["label"]
        )
        if matcher.is_isomorphic():
            renaming = {user_v: canon for canon, user_v in matcher.mapping.items()}
            return g, renaming
    raise InvalidGraph("graph is not an extended ADE graph with its Dynkin labels")


def to_networkx(g):
    import networkx as nx

    out = nx.MultiGraph()
    for v, m in zip(g.vertices, g.labels):
        out.add_node(v, label=m)
    for a, b in g.edges:
        out.add_edge(g.vertices[a], g.vertices[b])
    return out


def cartan_matrix(g):
    """Integer matrix S with S_vv = -2 and S_vw the number of v-w edges."""
    size = len(g)
    S = np.full((size, size), 0, dtype=np.int64)
    np.fill_diagonal(S, -2)
    for a, b in g.edges:
        S[a, b] += 1
        S[b, a] += 1
    S.setflags(write=False)
    return S


@dataclass(frozen=True)
class NullVectorReport:
    graph: str
    labels: tuple
    product: tuple
    in_kernel: bool
    primitive: bool

    @property
    def ok(self):
        return self.in_kernel and self.primitive


def null_vector_check(g):
    S = cartan_matrix(g)
    m = np.array(g.labels, dtype=np.int64)
    product = tuple(int(x) for x in S @ m)
    return NullVectorReport(
        graph=g.name,
        labels=g.labels,
        product=product,
        in_kernel=all(x == 0 for x in product),
        primitive=reduce(math.gcd, g.labels) == 1,
    )


def quadratic_form(S, v):
    """Exact value of v^T S v (Python integers, no overflow)."""
    S = np.asarray(S)
    v = [int(x) for x in v]
    if S.ndim != 2 or S.shape[0] != S.shape[1] or len(v) != S.shape[0]:
        raise DimensionMismatch(
            f"vector of length {len(v)} against matrix of shape {S.shape}"
        )
    rows = S.tolist()
    return sum(v[i] * rows[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def label_identity_failures(g):
    """Vertices where 2 m_v differs from the sum of neighbouring labels."""
    bad = []
    for v in g.vertices:
        around = sum(g.label(w) for w in g.neighbours(v))
        if 2 * g.label(v) != around:
            bad.append(v)
    return bad


def box_vectors(upper):
    """All integer vectors 0 <= v <= upper (componentwise), lexicographic, as an array."""
    ranges = [range(u + 1) for u in upper]
    arr = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    return arr.reshape(-1, len(upper))


def quadratic_values(S, vectors):
    """Row-wise v^T S v for an (N, |V|) integer array."""
    return np.einsum("ij,jk,ik->i", vectors, S, vectors)


@dataclass(frozen=True)
class ScanReport:
    graph: str
    bound: int
    vectors: int
    zero_values: int
    max_value: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def _is_label_multiple(rows, labels):
    lab = np.asarray(labels, dtype=np.int64)
    t = rows[:, 0] // lab[0]
    return np.all(rows == t[:, None] * lab[None, :], axis=1)


def seminegativity_scan(g, bound):
    """Check evenness, semi-negativity and the kernel dichotomy on a box.

    Every nonzero integer vector with entries in ``[0, bound]`` is tested:
    v^T S v must be even and <= 0, it must vanish exactly on multiples of
    the label vector, and otherwise be at most -2.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    S = cartan_matrix(g)
    vecs = box_vectors([bound] * len(g))[1:]
    q = quadratic_values(S, vecs)
    multiple = _is_label_multiple(vecs, g.labels)

    bad = (q > 0) | (q % 2 != 0) | ((q == 0) != multiple) | (~multiple & (q > -2))
    violations = tuple(
        (tuple(int(x) for x in vecs[i]), int(q[i])) for i in np.flatnonzero(bad)
    )
    return ScanReport(
        graph=g.name,
        bound=bound,
        vectors=len(vecs),
        zero_values=int(np.count_nonzero(q == 0)),
        max_value=int(q.max()),
        violations=violations,
    )
