"""Marked sheaves: the combinatorial model of sheaves of type m.

A marking records, for every reduced component C_o, the Euler
characteristic of the line bundle F_o; for every multiple component C_i
whether F_i is ordinary (O_{m_i C_i}) or special (O_{m_i C_i}(t)); and for
every intersection point x whether the gluing cokernel T_x is ordinary
(O_zeta) or special (O_zeta modulo its socle).

Purely one-dimensional quotients of such a sheaf are restrictions to
subcurves Z = sum m''_v C_v, so stability is decided by a finite scan over
the lattice box 0 <= z <= m.  All comparisons are cross-multiplied
integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._parallel import ordered_map
from .errors import (
    ClassificationMismatch,
    InvalidMarking,
    NotClassified,
    NotSingular,
)
from .polarisation import b_vector, require_assumption_H, total_degree

STABLE = "stable"
PROPERLY_SEMISTABLE = "properly_semistable"
UNSTABLE = "unstable"

DEFAULT_WINDOW = 2


@dataclass(frozen=True)
class MarkedSheaf:
    curve: object
    o_chi: tuple  # aligned with curve.graph.outer
    i_special: frozenset = frozenset()
    t_special: frozenset = frozenset()

    def chi_on(self, vertex):
        """chi(F_v) for any vertex."""
        g = self.curve.graph
        if vertex in g.outer:
            return self.o_chi[g.outer.index(vertex)]
        m = g.label(vertex)
        return m * m + (vertex in self.i_special)

    def restriction_data(self):
        return tuple(self.chi_on(v) for v in self.curve.vertices)

    def key(self):
        g = self.curve.graph
        return (
            self.o_chi,
            tuple(i in self.i_special for i in g.inner),
            tuple(x.name in self.t_special for x in self.curve.points),
        )

    def to_dict(self):
        g = self.curve.graph
        return {
            "oChi": dict(zip(g.outer, self.o_chi)),
            "iSpecial": [i for i in g.inner if i in self.i_special],
            "tSpecial": [x.name for x in self.curve.points if x.name in self.t_special],
        }


def make_marking(curve, o_chi, i_special=(), t_special=()):
    g = curve.graph
    if isinstance(o_chi, dict):
        unknown = sorted(set(o_chi) - set(g.outer))
        missing = [o for o in g.outer if o not in o_chi]
        if unknown or missing:
            raise InvalidMarking(
                "oChi must list exactly the reduced components "
                f"{', '.join(g.outer)}"
            )
        o_chi = [o_chi[o] for o in g.outer]
    o_chi = tuple(int(x) for x in o_chi)
    if len(o_chi) != len(g.outer):
        raise InvalidMarking(f"expected {len(g.outer)} oChi values, got {len(o_chi)}")
    i_special = frozenset(i_special)
    t_special = frozenset(t_special)
    if not i_special <= set(g.inner):
        bad = sorted(i_special - set(g.inner))
        raise InvalidMarking(f"iSpecial must be multiple components, got {', '.join(bad)}")
    names = {x.name for x in curve.points}
    if not t_special <= names:
        bad = sorted(t_special - names)
        raise InvalidMarking(f"unknown intersection points: {', '.join(bad)}")
    return MarkedSheaf(curve, o_chi, i_special, t_special)


def total_chi(f):
    """chi(F) = sum_v chi(F_v) - sum_x chi(T_x)."""
    c = f.curve
    g = c.graph
    total = sum(f.chi_on(v) for v in g.vertices)
    for x in c.points:
        total -= g.label(x.u) * g.label(x.w) - (x.name in f.t_special)
    return total


def hilbert_polynomial(f, p):
    """(leading coefficient e, constant term chi(F)) of P(F, n) = e n + chi(F)."""
    return total_degree(f.curve, p), total_chi(f)


def restriction_chi(f, z):
    """chi of the pure restriction of F to the subcurve z (0 <= z <= m)."""
    c = f.curve
    g = c.graph
    z = tuple(int(x) for x in z)
    if len(z) != len(g.vertices) or any(
        not 0 <= a <= m for a, m in zip(z, g.labels)
    ):
        raise InvalidMarking(f"subcurve {z} is not inside the box 0 <= z <= m")
    total = 0
    for v, zv, m in zip(g.vertices, z, g.labels):
        if zv == 0:
            continue
        if m == 1:
            total += f.o_chi[g.outer.index(v)]
        else:
            total += zv * zv + (v in f.i_special and zv == m)
    for x in c.points:
        a, b = g.index(x.u), g.index(x.w)
        full = z[a] == g.labels[a] and z[b] == g.labels[b]
        total -= z[a] * z[b] - (x.name in f.t_special and full)
    return total


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    witness: tuple  # None when stable
    chi: int
    leading: object  # Fraction e

    @property
    def stable(self):
        return self.status == STABLE

    def to_dict(self):
        return {
            "status": self.status,
            "witness": list(self.witness) if self.witness is not None else None,
            "chi": self.chi,
            "leading": str(self.leading),
        }


def stability_test(f, p):
    """Brute-force Gieseker stability over every proper nonzero subcurve.

    F is unstable if some quotient has chi(F|_Z)/e(Z) < chi(F)/e, properly
    semistable if the minimum is attained with equality, and stable
    otherwise.  Witnesses are the lexicographically first offending
    subcurve.
    """
    c = f.curve
    degrees = p.integral()
    e = sum(m * d for m, d in zip(c.labels, degrees))
    chi = total_chi(f)
    first_equal = None
    for z in itertools.islice(itertools.product(*(range(m + 1) for m in c.labels)), 1, None):
        if z == c.labels:
            continue
        e_z = sum(a * d for a, d in zip(z, degrees))
        lhs = chi * e_z
        rhs = restriction_chi(f, z) * e
        if lhs > rhs:
            return StabilityVerdict(UNSTABLE, z, chi, total_degree(c, p))
        if lhs == rhs and first_equal is None:
            first_equal = z
    if first_equal is not None:
        return StabilityVerdict(PROPERLY_SEMISTABLE, first_equal, chi, total_degree(c, p))
    return StabilityVerdict(STABLE, None, chi, total_degree(c, p))


# -- vectorised scan ------------------------------------------------------


@dataclass(frozen=True)
class _SubcurveTable:
    Z: np.ndarray  # proper nonzero subcurves, lexicographic
    base: np.ndarray  # sum_I z_i^2 - sum_x z_u z_w
    features: np.ndarray  # columns: z_o (O), [z_i = m_i] (I), [both ends full] (points)
    screen: np.ndarray  # indices of single components and their complements


@lru_cache(maxsize=32)
def _subcurve_table(curve):
    from .dynkin import box_vectors

    g = curve.graph
    m = np.array(g.labels, dtype=np.int64)
    Z = box_vectors(list(g.labels))[1:-1]
    o_idx = [g.index(o) for o in g.outer]
    i_idx = [g.index(i) for i in g.inner]
    ends = np.array([(g.index(x.u), g.index(x.w)) for x in curve.points], dtype=np.int64)

    base = (Z[:, i_idx] ** 2).sum(axis=1) - (Z[:, ends[:, 0]] * Z[:, ends[:, 1]]).sum(axis=1)
    full = Z == m[None, :]
    features = np.concatenate(
        [
            Z[:, o_idx],
            full[:, i_idx].astype(np.int64),
            (full[:, ends[:, 0]] & full[:, ends[:, 1]]).astype(np.int64),
        ],
        axis=1,
    )
    support = (Z > 0).sum(axis=1)
    deficit = (m[None, :] - Z).sum(axis=1)
    screen = np.flatnonzero((support == 1) | (deficit == 1))
    return _SubcurveTable(Z, base, features.astype(np.float64), screen)


def _marking_features(curve, f):
    o_chi, i_bits, t_bits = f.key()
    return o_chi + tuple(int(b) for b in i_bits) + tuple(int(b) for b in t_bits)


def _differences(table, e_z, e, chi, rows, cols=None):
    """chi * e(Z) - chi(F|_Z) * e for every row and subcurve column.

    Entries are small integers, so the float64 product is exact.
    """
    feats = table.features if cols is None else table.features[cols]
    base = table.base if cols is None else table.base[cols]
    ez = e_z if cols is None else e_z[cols]
    restricted = (rows @ feats.T).astype(np.int64) + base[None, :]
    return chi * ez[None, :] - restricted * e


def _batch_verdicts(curve, degrees, chi, rows):
    """Status codes (0 stable, 1 semistable, 2 unstable) and witness columns."""
    table = _subcurve_table(curve)
    e = int(sum(m * d for m, d in zip(curve.labels, degrees)))
    e_z = table.Z @ np.array(degrees, dtype=np.int64)
    diff = _differences(table, e_z, e, chi, rows.astype(np.float64))
    unstable = diff > 0
    equal = diff == 0
    any_unstable = unstable.any(axis=1)
    any_equal = equal.any(axis=1)
    status = np.where(any_unstable, 2, np.where(any_equal, 1, 0))
    witness = np.where(any_unstable, unstable.argmax(axis=1), equal.argmax(axis=1))
    return status, witness


def _screen_out_unstable(curve, degrees, chi, rows):
    """Mask of rows not destabilised by a single component or its complement."""
    table = _subcurve_table(curve)
    e = int(sum(m * d for m, d in zip(curve.labels, degrees)))
    e_z = table.Z @ np.array(degrees, dtype=np.int64)
    diff = _differences(table, e_z, e, chi, rows.astype(np.float64), table.screen)
    return ~(diff > 0).any(axis=1)


def stability_test_batch(markings, p):
    """Vectorised :func:`stability_test` for markings on a common curve."""
    if not markings:
        return []
    c = markings[0].curve
    rows = np.array([_marking_features(c, f) for f in markings], dtype=np.int64)
    chis = [total_chi(f) for f in markings]
    degrees = p.integral()
    table = _subcurve_table(c)
    e = total_degree(c, p)
    out = []
    for chi in sorted(set(chis)):
        sel = [k for k, x in enumerate(chis) if x == chi]
        status, witness = _batch_verdicts(c, degrees, chi, rows[sel])
        for k, s, w in zip(sel, status, witness):
            z = None if s == 0 else tuple(int(a) for a in table.Z[w])
            out.append((k, StabilityVerdict((STABLE, PROPERLY_SEMISTABLE, UNSTABLE)[s], z, chi, e)))
    out.sort(key=lambda kv: kv[0])
    return [v for _, v in out]


def window_markings(curve, centre, chi, window):
    """All markings with oChi within ``window`` of ``centre`` and total chi equal to ``chi``.

    Ordered by (oChi, iSpecial bits, tSpecial bits) lexicographically.
    """
    g = curve.graph
    const = sum(m * m for m in g.labels if m > 1) - sum(
        g.label(x.u) * g.label(x.w) for x in curve.points
    )
    outer_centre = [centre[g.index(o)] for o in g.outer]
    n_inner, n_points = len(g.inner), len(curve.points)
    point_subsets = {}
    for k in range(n_points + 1):
        subsets = []
        for idx in itertools.combinations(range(n_points), k):
            bits = [0] * n_points
            for j in idx:
                bits[j] = 1
            subsets.append(tuple(bits))
        point_subsets[k] = sorted(subsets)

    rows = []
    ranges = [range(b - window, b + window + 1) for b in outer_centre]
    for o_chi in itertools.product(*ranges):
        for i_bits in itertools.product((0, 1), repeat=n_inner):
            need = chi - const - sum(o_chi) - sum(i_bits)
            for t_bits in point_subsets.get(need, ()):
                rows.append(o_chi + i_bits + t_bits)
    return rows


@lru_cache(maxsize=64)
def _window_array(curve, centre, chi, window):
    arr = np.array(window_markings(curve, centre, chi, window), dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _row_to_marking(curve, row):
    g = curve.graph
    n_o, n_i = len(g.outer), len(g.inner)
    o_chi = tuple(int(x) for x in row[:n_o])
    i_sp = frozenset(v for v, bit in zip(g.inner, row[n_o : n_o + n_i]) if bit)
    t_sp = frozenset(x.name for x, bit in zip(curve.points, row[n_o + n_i :]) if bit)
    return MarkedSheaf(curve, o_chi, i_sp, t_sp)


def enumerate_stable_unguarded(curve, p, chi, chi_window=DEFAULT_WINDOW, include_semistable=False):
    """Brute-force all markings in the window and keep the stable ones.

    With ``include_semistable`` the properly semistable markings are
    returned too (as separate verdicts), which is useful for reporting
    failures of the admissibility condition.
    """
    b = b_vector(curve, p, chi)
    rows = _window_array(curve, tuple(b.values), chi, chi_window)
    if not len(rows):
        return []
    degrees = p.integral()
    table = _subcurve_table(curve)
    e = total_degree(curve, p)

    def work(block):
        # strict failures on the screening subcurves are final; only
        # survivors need the full scan
        kept = block[_screen_out_unstable(curve, degrees, chi, block)]
        status, witness = _batch_verdicts(curve, degrees, chi, kept)
        return kept, status, witness

    blocks = [rows[k : k + 4096] for k in range(0, len(rows), 4096)]
    results = ordered_map(work, blocks)
    out = []
    for kept, status, witness in results:
        for row, s, w in zip(kept, status, witness):
            if s == 0 or (include_semistable and s == 1):
                z = None if s == 0 else tuple(int(a) for a in table.Z[w])
                verdict = StabilityVerdict((STABLE, PROPERLY_SEMISTABLE)[s], z, chi, e)
                out.append((_row_to_marking(curve, row), verdict))
    return out


def expected_stable_family(curve, b):
    """The markings with exactly one special piece and oChi = b (+1 at a special o)."""
    g = curve.graph
    ordinary = tuple(b[g.index(o)] for o in g.outer)
    family = []
    for k, o in enumerate(g.outer):
        o_chi = ordinary[:k] + (ordinary[k] + 1,) + ordinary[k + 1 :]
        family.append(MarkedSheaf(curve, o_chi))
    for i in g.inner:
        family.append(MarkedSheaf(curve, ordinary, frozenset([i])))
    for x in curve.points:
        family.append(MarkedSheaf(curve, ordinary, frozenset(), frozenset([x.name])))
    return family


def enumerate_stable(curve, p, chi, chi_window=DEFAULT_WINDOW):
    """Stable markings in the window under the admissibility condition.

    Raises :class:`ClassificationMismatch` if the brute-force result is not
    exactly the family with one special piece.
    """
    require_assumption_H(curve, p, chi)
    found = enumerate_stable_unguarded(curve, p, chi, chi_window)
    expected = {f.key() for f in expected_stable_family(curve, b_vector(curve, p, chi))}
    got = {f.key() for f, _ in found}
    if got != expected:
        raise ClassificationMismatch(
            f"{len(got - expected)} unexpected and {len(expected - got)} missing stable markings"
        )
    return found


# -- presentation as L(x) ---------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    kind: str  # "LineBundle" | "SingularAtIntersection" | "SingularOnMultipleComponent"
    where: str  # vertex or point name
    restriction: tuple  # chi(F_v) per vertex

    @property
    def singular(self):
        return self.kind != "LineBundle"

    def describe(self):
        if self.kind == "LineBundle":
            return f"L(x) with x a smooth point of C_{self.where}: a line bundle"
        if self.kind == "SingularAtIntersection":
            return f"L(x) with x = {self.where}, singular at the intersection point"
        return f"L(t) with t a free point of C_{self.where}, singular on the multiple component"


def special_pieces(f, b):
    """Special pieces of ``f`` relative to ``b``; raises if some piece is neither."""
    g = f.curve.graph
    pieces = []
    for o, value in zip(g.outer, f.o_chi):
        target = b[g.index(o)]
        if value == target + 1:
            pieces.append(("LineBundle", o))
        elif value != target:
            raise NotClassified(
                f"F_{o} has chi {value}, neither ordinary ({target}) nor special ({target + 1})"
            )
    pieces += [("SingularOnMultipleComponent", i) for i in g.inner if i in f.i_special]
    pieces += [
        ("SingularAtIntersection", x.name) for x in f.curve.points if x.name in f.t_special
    ]
    return pieces


def presentation(f, p):
    """Normal form L(x) of a marking with exactly one special piece."""
    chi = total_chi(f)
    b = b_vector(f.curve, p, chi)
    pieces = special_pieces(f, b)
    if len(pieces) != 1:
        raise NotClassified(f"expected exactly one special piece, found {len(pieces)}")
    kind, where = pieces[0]
    return Presentation(kind, where, f.restriction_data())


def uniqueness_key(f):
    """Isomorphism key for singular markings: (singular point, restrictions)."""
    if f.t_special:
        point = ("point", tuple(sorted(f.t_special)))
    elif f.i_special:
        point = ("component", tuple(sorted(f.i_special)))
    else:
        raise NotSingular("a line-bundle marking has no singular point")
    return point, f.restriction_data()
