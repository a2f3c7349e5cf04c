import math

import pytest
from hypothesis import given, settings, strategies as st

from ade_jacobian.charcycle import (
    INF,
    INFINITY,
    NAIVE_FIELD_LIMIT,
    ECPoint,
    EllipticCurveOverPrimeField,
    TorsionSpec,
    char_cycle,
    curve_points,
    ec_add,
    ec_neg,
    ec_point,
    ec_scalar,
    elliptic_torsion_spec,
    elliptic_translation_class_order,
    make_torsion_spec,
    point_order,
    translation_order,
)
from ade_jacobian.errors import (
    FieldTooLarge,
    InvalidEllipticCurve,
    InvalidTorsionSpec,
    PointNotOnCurve,
    SpecForbidden,
    SpecMissing,
)

from conftest import curve

E = EllipticCurveOverPrimeField(13, 2, 3)


def order_oracle(E, P):
    """Order via the affine formulas written out independently."""
    p = E.p

    def add(A, B):
        if A is None:
            return B
        if B is None:
            return A
        (x1, y1), (x2, y2) = A, B
        if x1 == x2 and (y1 + y2) % p == 0:
            return None
        if A == B:
            lam = (3 * x1 * x1 + E.a) * pow(2 * y1, p - 2, p)
        else:
            lam = (y2 - y1) * pow(x2 - x1, p - 2, p)
        lam %= p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)

    start = None if P.is_infinity else (P.x, P.y)
    Q, n = start, 1
    while Q is not None:
        Q, n = add(Q, start), n + 1
    return n


def test_curve_validation():
    for args in ((4, 1, 1), (15, 1, 1), (3, 1, 1), (13, 13, 1)):
        with pytest.raises(InvalidEllipticCurve):
            EllipticCurveOverPrimeField(*args)
    with pytest.raises(InvalidEllipticCurve):
        EllipticCurveOverPrimeField(5, 0, 0)  # singular


def test_group_law_identities():
    points = curve_points(E)
    for P in points[:12]:
        assert ec_add(E, P, INFINITY) == P
        assert ec_add(E, P, ec_neg(E, P)).is_infinity
        assert ec_scalar(E, point_order(E, P), P).is_infinity
    P, Q = points[1], points[2]
    assert ec_add(E, P, Q) == ec_add(E, Q, P)
    assert ec_scalar(E, -1, P) == ec_neg(E, P)


def test_point_not_on_curve():
    with pytest.raises(PointNotOnCurve):
        ec_point(E, 0, 0)
    with pytest.raises(PointNotOnCurve):
        ec_add(E, ECPoint(0, 0), INFINITY)


def test_orders():
    assert point_order(E, INFINITY) == 1
    two_torsion = [P for P in curve_points(E) if not P.is_infinity and P.y == 0]
    assert all(point_order(E, P) == 2 for P in two_torsion)
    big = EllipticCurveOverPrimeField(1000003, 1, 1)
    with pytest.raises(FieldTooLarge):
        point_order(big, INFINITY)
    assert big.p > NAIVE_FIELD_LIMIT


def test_point_count_against_hasse():
    for p in (5, 7, 11, 13, 17):
        Ep = EllipticCurveOverPrimeField(p, 1, 1) if (4 + 27) % p else EllipticCurveOverPrimeField(p, 1, 2)
        n = len(curve_points(Ep))
        assert abs(n - (p + 1)) <= 2 * math.isqrt(p) + 1
        # every point order divides the group order
        assert all(n % point_order(Ep, P) == 0 for P in curve_points(Ep))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 17, 19, 23]), st.integers(0, 22), st.integers(0, 22), st.data())
def test_orders_match_oracle_and_rule(p, a, b, data):
    a, b = a % p, b % p
    try:
        Ep = EllipticCurveOverPrimeField(p, a, b)
    except InvalidEllipticCurve:
        return
    P = data.draw(st.sampled_from(curve_points(Ep)))
    m = point_order(Ep, P)
    assert m == order_oracle(Ep, P)
    r = elliptic_translation_class_order(Ep, P)
    assert r.m == m and r.k == (m if m % 2 else m // 2)


def test_special_points():
    r = elliptic_translation_class_order(E, INFINITY)
    assert (r.m, r.k) == (1, 1)
    for p in (5, 7, 11, 13):
        for a in range(p):
            for b in range(p):
                try:
                    Ep = EllipticCurveOverPrimeField(p, a, b)
                except InvalidEllipticCurve:
                    continue
                for P in curve_points(Ep)[1:]:
                    if P.y == 0:
                        assert (elliptic_translation_class_order(Ep, P).k) == 1
    # a point of order 3 gives a class of order 3
    found = next(
        (Ep, P)
        for p in (5, 7, 11, 13)
        for a in range(p)
        for b in range(p)
        if (4 * a**3 + 27 * b**2) % p
        for Ep in [EllipticCurveOverPrimeField(p, a, b)]
        for P in curve_points(Ep)
        if point_order(Ep, P) == 3
    )
    assert elliptic_translation_class_order(*found).k == 3


def test_translation_order():
    assert translation_order(TorsionSpec((1, 1, 1))) == 1
    assert translation_order(TorsionSpec((1, 3))) == 3
    assert translation_order(TorsionSpec((4, 6))) == 12
    assert translation_order(TorsionSpec((2, INF))) == INF


def test_torsion_spec_rules():
    c = curve("A", 1, {"v1": 1})
    assert make_torsion_spec(c, {"v1": 2}).orders == (1, 2)
    assert make_torsion_spec(c, {"v1": "inf"}).orders == (1, INF)
    with pytest.raises(InvalidTorsionSpec):
        make_torsion_spec(c, {"v0": 2, "v1": 2})
    with pytest.raises(InvalidTorsionSpec):
        make_torsion_spec(c, {"v1": 1})
    with pytest.raises(InvalidTorsionSpec):
        make_torsion_spec(c, {})
    with pytest.raises(InvalidTorsionSpec):
        make_torsion_spec(c, {"v1": 0})
    with pytest.raises(InvalidTorsionSpec):
        make_torsion_spec(c, {"v9": 2})


def test_cycles():
    rational = curve("A", 1)
    r = char_cycle(rational, make_torsion_spec(rational, {}))
    assert (r.laps, r.curve_count) == (1, 2)
    c = curve("A", 1, {"v1": 1})
    r = char_cycle(c, make_torsion_spec(c, {"v1": 2}))
    assert (r.laps, r.curve_count) == (2, 4)
    r = char_cycle(c, make_torsion_spec(c, {"v1": "inf"}))
    assert r.laps == INF and r.curve_count == INF
    d4 = curve("D", 4)
    r = char_cycle(d4)
    assert r.cycle_type == "D~4" and r.multiplicities == (1, 1, 2, 1, 1) and r.laps is None
    with pytest.raises(SpecMissing):
        char_cycle(rational)
    with pytest.raises(SpecForbidden):
        char_cycle(d4, TorsionSpec((1,) * 5))
    with pytest.raises(InvalidTorsionSpec):
        char_cycle(c, TorsionSpec((1, 1)))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_one_lap_iff_all_rational(n, data):
    genera = {f"v{k}": data.draw(st.integers(0, 2)) for k in range(n + 1)}
    c = curve("A", n, genera)
    orders = {v: data.draw(st.integers(2, 6)) for v, g in genera.items() if g > 0}
    r = char_cycle(c, make_torsion_spec(c, orders))
    assert (r.laps == 1) == all(g == 0 for g in genera.values())
    assert r.laps == math.lcm(1, *orders.values())


def test_elliptic_backend():
    c = curve("A", 1, {"v0": 1})
    P = next(P for P in curve_points(E) if not P.is_infinity and point_order(E, P) > 2)
    spec, order = elliptic_torsion_spec(c, E, P)
    assert spec.orders[0] == order.k and spec.orders[1] == 1
    with pytest.raises(InvalidTorsionSpec):
        elliptic_torsion_spec(curve("A", 1, {"v0": 2}), E, P)
    with pytest.raises(InvalidTorsionSpec):
        elliptic_torsion_spec(curve("A", 1, {"v0": 1, "v1": 1}), E, P)
    two = next((Q for Q in curve_points(E) if not Q.is_infinity and Q.y == 0), None)
    if two is not None:
        with pytest.raises(InvalidTorsionSpec):
            elliptic_torsion_spec(c, E, two)
