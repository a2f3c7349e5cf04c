"""Characteristic cycles of the moduli space.

For A~n the cycle walks once around the components and comes back
translated by (L_u) -> (L_u(x_u - x_{u+1})); the number of laps before it
closes is the order k of that translation, i.e. the lcm of the orders of
O_{C_u}(x_u - x_{u+1}) in Pic^0(C_u).  Here x_u = C_{u-1} n C_u, so on the
cycle v0 - v1 - ... - vn - v0 the two points of C_u are the points of edges
u - 1 and u.

The elliptic backend handles an A~1 curve whose non-rational component is
an elliptic curve E meeting the other component in s and -s, so the
relevant class is O_E(s - (-s)), which corresponds to the point 2s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import (
    FieldTooLarge,
    InvalidEllipticCurve,
    InvalidTorsionSpec,
    PointNotOnCurve,
    SpecForbidden,
    SpecMissing,
)

INF = math.inf
NAIVE_FIELD_LIMIT = 10**6


# -- torsion data -----------------------------------------------------------


@dataclass(frozen=True)
class TorsionSpec:
    orders: tuple  # per vertex: positive int or INF


def parse_order(value):
    if value == "inf" or value == INF:
        return INF
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidTorsionSpec(f"orders must be positive integers or 'inf', got {value!r}")
    return value


def make_torsion_spec(curve, orders):
    """``orders`` maps vertex -> order (int or ``"inf"``); rational components default to 1."""
    unknown = sorted(set(orders) - set(curve.vertices))
    if unknown:
        raise InvalidTorsionSpec(f"unknown vertices: {', '.join(unknown)}")
    values = []
    for v in curve.vertices:
        g_v = curve.genus_of(v)
        if v not in orders:
            if g_v > 0:
                raise InvalidTorsionSpec(f"missing order for the genus {g_v} component {v}")
            values.append(1)
            continue
        d = parse_order(orders[v])
        if g_v == 0 and d != 1:
            raise InvalidTorsionSpec(f"{v} is rational, so its order must be 1")
        if g_v > 0 and d == 1:
            # two distinct points on a curve of positive genus are never linearly equivalent
            raise InvalidTorsionSpec(f"{v} has genus {g_v}; the class x_u - x_(u+1) is nontrivial")
        values.append(d)
    return TorsionSpec(tuple(values))


def translation_order(spec):
    """lcm of the per-component orders; INF if any is infinite."""
    if any(d == INF for d in spec.orders):
        return INF
    return reduce(math.lcm, spec.orders, 1)


@dataclass(frozen=True)
class CycleReport:
    graph: str
    cycle_type: str
    laps: object  # int or INF; None for D/E
    curve_count: object  # rational curves in one reduced cycle
    multiplicities: tuple  # per vertex, D/E only
    note: str


def char_cycle(curve, spec=None):
    g = curve.graph
    if g.kind == "A":
        if spec is None:
            raise SpecMissing("A~n curves need torsion orders for every component")
        if len(spec.orders) != len(g.vertices):
            raise InvalidTorsionSpec("one order per vertex is required")
        spec = make_torsion_spec(curve, dict(zip(g.vertices, spec.orders)))
        k = translation_order(spec)
        count = INF if k == INF else k * len(g.vertices)
        return CycleReport(
            graph=g.name,
            cycle_type="A~ (cycle of rational curves)",
            laps=k,
            curve_count=count,
            multiplicities=(),
            note=(
                f"cycle closes after {k} lap(s) through {len(g.vertices)} components; "
                "the A~ index of the cycle is ambiguous for k >= 2, so laps and "
                "curve count are both reported"
            ),
        )
    if spec is not None:
        raise SpecForbidden(f"{g.name} cycles do not depend on torsion data")
    return CycleReport(
        graph=g.name,
        cycle_type=g.name,
        laps=None,
        curve_count=len(g.vertices),
        multiplicities=g.labels,
        note=(
            f"reduced characteristic cycle of type {g.name}; the non-reduced cycle "
            "carries the Dynkin labels as multiplicities"
        ),
    )


# -- elliptic curves over prime fields --------------------------------------


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class EllipticCurveOverPrimeField:
    """y^2 = x^3 + a x + b over F_p, p > 3 prime."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p <= 3 or not _is_prime(self.p):
            raise InvalidEllipticCurve(f"p must be a prime > 3, got {self.p}")
        if not (0 <= self.a < self.p and 0 <= self.b < self.p):
            raise InvalidEllipticCurve("coefficients must lie in [0, p)")
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise InvalidEllipticCurve(f"singular curve: 4a^3 + 27b^2 = 0 mod {self.p}")

    def contains(self, P):
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return (y * y - (x * x * x + self.a * x + self.b)) % self.p == 0


@dataclass(frozen=True)
class ECPoint:
    x: int = None
    y: int = None

    @property
    def is_infinity(self):
        return self.x is None


INFINITY = ECPoint()


def ec_point(E, x, y):
    P = ECPoint(x % E.p, y % E.p)
    if not E.contains(P):
        raise PointNotOnCurve(f"({x}, {y}) is not on y^2 = x^3 + {E.a}x + {E.b} mod {E.p}")
    return P


def _require(E, *points):
    for P in points:
        if not E.contains(P):
            raise PointNotOnCurve(f"{P} is not on the curve")


def ec_neg(E, P):
    _require(E, P)
    if P.is_infinity:
        return P
    return ECPoint(P.x, (-P.y) % E.p)


def _add(E, P, Q):
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    p = E.p
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            return INFINITY
        lam = (3 * P.x * P.x + E.a) * pow(2 * P.y, -1, p) % p
    else:
        lam = (Q.y - P.y) * pow(Q.x - P.x, -1, p) % p
    x = (lam * lam - P.x - Q.x) % p
    return ECPoint(x, (lam * (P.x - x) - P.y) % p)


def ec_add(E, P, Q):
    _require(E, P, Q)
    return _add(E, P, Q)


def ec_scalar(E, n, P):
    """n P by double-and-add; negative n uses -P."""
    _require(E, P)
    if n < 0:
        n, P = -n, ec_neg(E, P)
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = _add(E, result, addend)
        addend = _add(E, addend, addend)
        n >>= 1
    return result


def point_order(E, P):
    """Least n >= 1 with n P = O, by repeated addition."""
    if E.p > NAIVE_FIELD_LIMIT:
        raise FieldTooLarge(f"naive order computation is limited to p <= {NAIVE_FIELD_LIMIT}")
    _require(E, P)
    if P.is_infinity:
        return 1
    # same chord-and-tangent steps as _add, on bare integers
    p, a = E.p, E.a
    x0, y0 = P.x, P.y
    x, y = x0, y0
    n = 1
    while True:
        if x == x0:
            if (y + y0) % p == 0:
                return n + 1
            lam = (3 * x * x + a) * pow(2 * y, -1, p) % p
        else:
            lam = (y0 - y) * pow(x0 - x, -1, p) % p
        x_new = (lam * lam - x - x0) % p
        y = (lam * (x - x_new) - y) % p
        x = x_new
        n += 1


def curve_points(E):
    """All points of E(F_p), infinity first, then affine points sorted by (x, y)."""
    if E.p > NAIVE_FIELD_LIMIT:
        raise FieldTooLarge(f"point enumeration is limited to p <= {NAIVE_FIELD_LIMIT}")
    p = E.p
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    pts = [INFINITY]
    for x in range(p):
        rhs = (x * x * x + E.a * x + E.b) % p
        for y in roots.get(rhs, ()):
            pts.append(ECPoint(x, y))
    return pts


@dataclass(frozen=True)
class TranslationClassOrder:
    k: int  # order of O_E(s - (-s)), i.e. of the point 2s
    m: int  # order of s


def elliptic_translation_class_order(E, s):
    """Orders of s and of the class O_E(s - (-s)) ~ 2s.

    The class has order m for odd m and m / 2 for even m.
    """
    m = point_order(E, s)
    k = point_order(E, ec_add(E, s, s))
    expected = m if m % 2 else m // 2
    if k != expected:
        raise AssertionError(f"order of 2s is {k}, expected {expected} from m = {m}")
    return TranslationClassOrder(k, m)


def elliptic_torsion_spec(curve, E, s):
    """Torsion data for a curve with exactly one irrational component, of genus 1.

    That component plays the role of E with intersection points s and -s;
    every other component is rational.
    """
    irrational = [v for v in curve.vertices if curve.genus_of(v) > 0]
    if len(irrational) != 1 or curve.genus_of(irrational[0]) != 1:
        raise InvalidTorsionSpec(
            "the elliptic backend needs exactly one non-rational component, of genus 1"
        )
    if s.is_infinity or ec_add(E, s, s).is_infinity:
        raise InvalidTorsionSpec("s must not be 2-torsion: the two intersection points must differ")
    order = elliptic_translation_class_order(E, s)
    return make_torsion_spec(curve, {irrational[0]: order.k}), order
