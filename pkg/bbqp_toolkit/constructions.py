"""
Witness instances and reductions: the tight dominance instance, the traps
for alternating and N^alpha local search, the median/PARTITION instance,
BQP embedding and zero padding.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
from django.conf import settings

from bbqp_toolkit.core import Instance, make_solution
from bbqp_toolkit.exceptions import ConstructionError, DimensionMismatch


@dataclass(frozen=True)
class PaddedInstance:
    inner: Instance
    original_m: int
    original_n: int
    a: int
    b: int


def tight_instance(m, n):
    """q_mn = -1 and zeros elsewhere: exactly 2^(m+n-2) solutions have f <= A."""
    if m < 1 or n < 1:
        raise ConstructionError('tight instance needs m, n >= 1')
    Q = np.zeros((m, n), dtype=np.int64)
    Q[m - 1, n - 1] = -1
    return Instance(Q, name='tight-%dx%d' % (m, n))


def alternating_trap(n, M):
    """
    q_11 = 1, q_nn = M, zeros elsewhere; x-first alternating from x = e_1
    stops at value 1 while the optimum is M + 1.
    """
    if n < 2 or M < 1:
        raise ConstructionError('alternating trap needs n >= 2 and M >= 1')
    Q = np.zeros((n, n), dtype=np.int64)
    Q[0, 0] = 1
    Q[n - 1, n - 1] = M
    instance = Instance(Q, name='alternating-trap-%d-%d' % (n, M))
    start_x = np.zeros(n, dtype=np.int64)
    start_x[0] = 1
    return instance, make_solution(instance, start_x, np.zeros(n, dtype=np.int64))


def local_search_trap(n):
    """
    An n x n instance whose solution (e_n, e_n) is locally optimal for N^alpha,
    alpha = n/5, yet worse than the average.

    Interior entries are a = 6/n, the last row and column are -1 and the
    corner is lambda = (alpha - 1)(n - 1) a; everything is scaled by n to
    stay integral.
    """
    if n < 10 or n % 5:
        raise ConstructionError('local search trap needs n >= 10 and a multiple of 5, got %d' % n)
    alpha = n // 5
    Q = np.full((n, n), 6, dtype=np.int64)
    Q[n - 1, :] = -n
    Q[:, n - 1] = -n
    Q[n - 1, n - 1] = (alpha - 1) * (n - 1) * 6
    instance = Instance(Q, name='local-search-trap-%d' % n)
    corner = np.zeros(n, dtype=np.int64)
    corner[n - 1] = 1
    return instance, make_solution(instance, corner, corner), alpha


def local_search_trap_gap(n):
    """
    A - f(start) of the scaled trap: (n / 4n)(0.4 n^2 + 11.6 n - 12),
    which is (2 n^2 + 58 n - 60) / 20.
    """
    return Fraction(2 * n * n + 58 * n - 60, 20)


def partition_median_instance(a, eps_scale_inverse):
    """
    m = 2, n = |a|: d_j = a_j S, q_1j = a_j, q_2j = -a_j with S the inverse
    of epsilon. Both medians equal (S/2) sum(a) iff a has an equal-sum
    partition.
    """
    a = [int(v) for v in a]
    if not a or min(a) < 1:
        raise ConstructionError('PARTITION weights must be positive integers')
    if sum(a) >= eps_scale_inverse:
        raise ConstructionError('epsilon * sum(a) must stay below 1: need scale > %d' % sum(a))
    weights = np.array(a, dtype=np.int64)
    Q = np.vstack([weights, -weights])
    return Instance(Q, np.zeros(2, dtype=np.int64), weights * eps_scale_inverse,
                    name='partition-median-%d' % len(a))


def bqp_threshold(Qp, cp):
    """Smallest M for which bqp_to_bbqp keeps every optimum on x = y."""
    Qp = np.abs(np.asarray(Qp, dtype=np.int64))
    cp = np.abs(np.asarray(cp, dtype=np.int64))
    return 1 + int(Qp.sum()) + int(cp.sum())


def bqp_to_bbqp(Qp, cp, M):
    """
    Embeds max x^T Q' x + c'x into BBQP at twice the scale:
    Q = 2Q' + 4M I, c = d = c' - 2M. Any x != y loses at least 2M against x = y.
    """
    Qp = np.asarray(Qp, dtype=np.int64)
    cp = np.asarray(cp, dtype=np.int64)
    if Qp.ndim != 2 or Qp.shape[0] != Qp.shape[1]:
        raise ConstructionError("Q' must be square")
    if len(cp) != Qp.shape[0]:
        raise DimensionMismatch("c'", Qp.shape[0], len(cp))
    threshold = bqp_threshold(Qp, cp)
    if M < threshold:
        raise ConstructionError('M must be at least %d, got %d' % (threshold, M))
    n = Qp.shape[0]
    Q = 2 * Qp + 4 * M * np.eye(n, dtype=np.int64)
    linear = cp - 2 * M
    return Instance(Q, linear, linear, name='bqp-%d' % n)


def pad_instance(instance, a, b):
    """Embeds the instance in the top-left corner of an ab m x ab n zero instance."""
    if b < 1 or a <= b or gcd(a, b) != 1:
        raise ConstructionError('padding needs coprime a > b >= 1, got a=%d b=%d' % (a, b))
    rows, columns = a * b * instance.m, a * b * instance.n
    limit = getattr(settings, 'BBQP_MAX_PADDED_DIM', 4096)
    if max(rows, columns) > limit:
        raise ConstructionError('padded size %dx%d exceeds BBQP_MAX_PADDED_DIM=%d'
                                % (rows, columns, limit))
    Q = np.zeros((rows, columns), dtype=np.int64)
    Q[:instance.m, :instance.n] = instance.Q
    c = np.zeros(rows, dtype=np.int64)
    c[:instance.m] = instance.c
    d = np.zeros(columns, dtype=np.int64)
    d[:instance.n] = instance.d
    inner = Instance(Q, c, d, name='%s-padded-%d-%d' % (instance.name or 'instance', a, b))
    return PaddedInstance(inner, instance.m, instance.n, a, b)


def original_block(padded):
    inner = padded.inner
    m, n = padded.original_m, padded.original_n
    return Instance(inner.Q[:m, :n], inner.c[:m], inner.d[:n])


def recover_solution(padded, s):
    """The first original_m / original_n components, valued on the original block."""
    if len(s.x) != padded.inner.m:
        raise DimensionMismatch('x', padded.inner.m, len(s.x))
    if len(s.y) != padded.inner.n:
        raise DimensionMismatch('y', padded.inner.n, len(s.y))
    return make_solution(original_block(padded), s.x[:padded.original_m], s.y[:padded.original_n])
