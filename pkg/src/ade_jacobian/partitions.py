"""Partition identities and the lattice inequality behind the classification.

On a multiple component the graded pieces of F_i have ranks r_1 >= r_2 >= ...,
a partition of m_i.  Its conjugate n_r = max{k : r_k >= r} feeds the
quadratic-form bound 1 + 1/2 sum_r n_r^T S n_r >= chi(F) - sum chi(F_v) + sum chi(T_x) = 0,
which forces n_1 = m.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NotAPartition


def _check(p):
    p = tuple(p)
    if any(isinstance(x, bool) or not isinstance(x, (int, np.integer)) or x < 1 for x in p):
        raise NotAPartition(f"{p} must consist of positive integers")
    if any(a < b for a, b in zip(p, p[1:])):
        raise NotAPartition(f"{p} is not weakly decreasing")
    return tuple(int(x) for x in p)


def dual_partition(p):
    """Conjugate partition (transpose of the Young diagram)."""
    p = _check(p)
    if not p:
        return ()
    return tuple(sum(1 for part in p if part >= r) for r in range(1, p[0] + 1))


def partitions_of(n, max_parts=None):
    """Partitions of n in reverse lexicographic order, optionally with at most ``max_parts`` parts."""
    def rec(remaining, largest, parts_left):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first, parts_left - 1):
                yield (first,) + rest

    limit = n if max_parts is None else max_parts
    return list(rec(n, n, limit))


@dataclass(frozen=True)
class IdentityReport:
    lhs: int
    rhs: int

    @property
    def holds(self):
        return self.lhs == self.rhs


def min_sum_identity_check(p, q):
    """sum_{k,k'} min(p_k, q_k') against sum_r p*_r q*_r."""
    p, q = _check(p), _check(q)
    lhs = sum(min(a, b) for a in p for b in q)
    dp, dq = dual_partition(p), dual_partition(q)
    rhs = sum(a * b for a, b in zip(dp, dq))
    return IdentityReport(lhs, rhs)


def square_sum_identity_check(p):
    """sum_k p_k (2k - 1) against sum_r (p*_r)^2."""
    p = _check(p)
    lhs = sum(part * (2 * k - 1) for k, part in enumerate(p, start=1))
    rhs = sum(x * x for x in dual_partition(p))
    return IdentityReport(lhs, rhs)


def transversal_length_bound(m_u, m_w):
    """chi(T_x) bound for line-bundle restrictions: all ranks 1, so m_u * m_w."""
    return min_sum_identity_check((1,) * m_u, (1,) * m_w)


@dataclass(frozen=True)
class ProofScanReport:
    graph: str
    max_parts: int
    families: int
    maximum: int
    nonnegative: tuple  # families with value >= 0
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def families(curve, max_parts):
    """Families n_1 >= ... >= n_k of vectors with sum m, componentwise decreasing.

    Per vertex the entries (n_1v, ..., n_kv) form a partition of m_v into at
    most k parts, padded with zeros.
    """
    per_vertex = []
    for m in curve.labels:
        options = [p + (0,) * (max_parts - len(p)) for p in partitions_of(m, max_parts)]
        per_vertex.append(options)
    for choice in itertools.product(*per_vertex):
        yield tuple(tuple(col[r] for col in choice) for r in range(max_parts))


def proof_inequality_scan(curve, max_parts):
    """Evaluate 1 + 1/2 sum_r n_r^T S n_r over every family.

    The value is at most 1 always, equals 1 on the trivial family (m, 0, ...),
    and is negative on every other family.
    """
    if max_parts < 1:
        raise ValueError("max_parts must be >= 1")
    S = np.asarray(curve.S)
    m = tuple(curve.labels)
    trivial = (m,) + ((0,) * len(m),) * (max_parts - 1)
    fams = list(families(curve, max_parts))
    arr = np.array(fams, dtype=np.int64)  # (F, parts, V)
    q = np.einsum("frv,vw,frw->f", arr, S, arr)
    values = 1 + q // 2
    nonneg = []
    violations = []
    odd = set(np.flatnonzero(q % 2).tolist())
    for k, (fam, value) in enumerate(zip(fams, values.tolist())):
        if k in odd:
            violations.append((fam, value))
            continue
        if value >= 0:
            nonneg.append((fam, value))
        if value > 1 or (fam == trivial) != (value >= 0) or (fam == trivial and value != 1):
            violations.append((fam, value))
    return ProofScanReport(
        graph=curve.graph.name,
        max_parts=max_parts,
        families=len(fams),
        maximum=int(values.max()),
        nonnegative=tuple(nonneg),
        violations=tuple(violations),
    )
