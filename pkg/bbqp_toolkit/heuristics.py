"""
Rounding schemes, alternating algorithms and neighborhood searches for BBQP.

Every threshold is strict: a component is set to 1 only when its marginal
gain is positive, ties go to 0.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from django.conf import settings

from bbqp_toolkit import rng
from bbqp_toolkit.core import (FractionalPoint, Solution, best_of, check_point,
    make_solution, marginals)
from bbqp_toolkit.exceptions import InvalidNeighborhood

logger = logging.getLogger(__name__)

X_FIRST = 'x'
Y_FIRST = 'y'

HK = 'hk'
ALPHA = 'alpha'


@dataclass(frozen=True)
class NeighborhoodSpec:
    """
        N^{h,k}: flip at most h components of x and at most k of y.
        N^alpha: (any x, at most alpha flips of y) union (at most alpha flips of x, any y).
    """
    kind: str
    h: int = 0
    k: int = 0
    alpha: int = 0

    @classmethod
    def for_hk(cls, h, k):
        return cls(HK, h=h, k=k)

    @classmethod
    def for_alpha(cls, alpha):
        return cls(ALPHA, alpha=alpha)

    def validate(self, m, n):
        if self.kind == HK:
            if not 0 <= self.h <= m or not 0 <= self.k <= n:
                raise InvalidNeighborhood('N^{%d,%d} needs 0 <= h <= %d and 0 <= k <= %d'
                                          % (self.h, self.k, m, n))
        elif self.kind == ALPHA:
            if not 0 <= self.alpha <= max(m, n):
                raise InvalidNeighborhood('N^%d needs 0 <= alpha <= %d' % (self.alpha, max(m, n)))
        else:
            raise InvalidNeighborhood('unknown neighborhood kind %r' % self.kind)

    def __str__(self):
        if self.kind == HK:
            return 'N^{%d,%d}' % (self.h, self.k)
        return 'N^%d' % self.alpha


@dataclass(frozen=True)
class LocalSearchResult:
    solution: Solution
    iterations: int
    converged: bool


def _ball(size, radius):
    return sum(comb(size, r) for r in range(min(radius, size) + 1))


def neighborhood_size(spec, m, n):
    """|N^{h,k}| and |N^alpha| in closed form."""
    if spec.kind == HK:
        return _ball(m, spec.h) * _ball(n, spec.k)
    x_ball, y_ball = _ball(m, spec.alpha), _ball(n, spec.alpha)
    return (1 << m) * y_ball + (1 << n) * x_ball - x_ball * y_ball


def flip_neighbors(base, radius):
    """
    Every binary vector within Hamming distance ``radius`` of ``base``,
    one per row, sorted lexicographically.
    """
    base = np.asarray(base, dtype=np.int64)
    size = len(base)
    rows = []
    for r in range(min(radius, size) + 1):
        for positions in itertools.combinations(range(size), r):
            row = base.copy()
            row[list(positions)] ^= 1
            rows.append(row)
    vectors = np.array(rows, dtype=np.int64).reshape(len(rows), size)
    return vectors[lex_order(vectors)]


def lex_order(rows):
    if rows.shape[1] == 0:
        return np.arange(rows.shape[0])
    return np.lexsort(rows.T[::-1])


def _positive(offset, weights, vector):
    """
    Componentwise ``offset + weights @ vector > 0`` for a real vector.

    Floating point decides clear cases; components within rounding noise of
    zero are settled in exact rational arithmetic.
    """
    vector = np.asarray(vector, dtype=np.float64)
    gains = offset.astype(np.float64) + weights.astype(np.float64) @ vector
    scale = np.abs(weights).astype(np.float64) @ np.abs(vector) + np.abs(offset) + 1.0
    positive = gains > 0
    values = vector.tolist()
    for index in np.flatnonzero(np.abs(gains) <= 1e-9 * scale):
        exact = Fraction(int(offset[index]))
        for q, v in zip(weights[index].tolist(), values):
            if q and v:
                exact += q * Fraction(v)
        positive[index] = exact > 0
    return positive.astype(np.int64)


def best_response_y(instance, x):
    """The optimal y for fixed x: y_j = 1 iff d_j + sum_i q_ij x_i > 0."""
    return _positive(instance.d, instance.Q.T, x)


def best_response_x(instance, y):
    """The optimal x for fixed y: x_i = 1 iff c_i + sum_j q_ij y_j > 0."""
    return _positive(instance.c, instance.Q, y)


def round_y_optimize_x(instance, point):
    """RyOx: round y by the sign of its marginal at x, then set x optimally."""
    check_point(instance, point)
    y = best_response_y(instance, point.x)
    return make_solution(instance, best_response_x(instance, y), y)


def round_x_optimize_y(instance, point):
    """RxOy: round x by the sign of its marginal at y, then set y optimally."""
    check_point(instance, point)
    x = best_response_x(instance, point.y)
    return make_solution(instance, x, best_response_y(instance, x))


def half_start(m, n):
    return FractionalPoint(np.full(m, 0.5), np.full(n, 0.5))


def _unit_draws(generator, size):
    return rng.ran(generator, 0.0, 1.0, size)


def _type1_side(units, weights):
    low = 0.5 * units
    high = np.maximum(0.5 + 0.5 * units, np.nextafter(0.5, 1.0))
    return np.where(weights < 0, low, high)


def type1_start(instance, seed):
    """
    x_i in (0, 0.5] when gamma_i < 0, else in (0.5, 1]; y likewise with delta.
    """
    totals = marginals(instance)
    generator = rng.make_generator(seed)
    x_units = _unit_draws(generator, instance.m)
    y_units = _unit_draws(generator, instance.n)
    return FractionalPoint(_type1_side(x_units, totals.gamma),
                           _type1_side(y_units, totals.delta))


def _type2_side(units, weights):
    peak = int(np.abs(weights).max())
    if peak == 0:
        return np.full(len(weights), 0.5)
    share = np.abs(weights).astype(np.float64) / peak
    low = 0.5 - share * (0.5 * units)
    high = share * np.maximum(0.5 + 0.5 * units, np.nextafter(0.5, 1.0))
    return np.clip(np.where(weights < 0, low, high), 0.0, 1.0)


def type2_start(instance, seed):
    """
    Random start weighted by |gamma_i| / max|gamma| (and |delta_j| / max|delta|).
    A side whose weights are all zero is set to 1/2.
    """
    totals = marginals(instance)
    generator = rng.make_generator(seed)
    x_units = _unit_draws(generator, instance.m)
    y_units = _unit_draws(generator, instance.n)
    return FractionalPoint(_type2_side(x_units, totals.gamma),
                           _type2_side(y_units, totals.delta))


def _respond_y(instance, current):
    return make_solution(instance, current.x, best_response_y(instance, current.x))


def _respond_x(instance, current):
    return make_solution(instance, best_response_x(instance, current.y), current.y)


def alternating(instance, start, first=X_FIRST, max_iters=None):
    """
    Fix one side, set the other optimally, and repeat.

    x-first fixes x and chooses y in the first half of every round. A side is
    replaced only when its best response strictly improves f; the run
    converges after the first round without improvement, which leaves a
    solution that is locally optimal for N^0.
    """
    if first not in (X_FIRST, Y_FIRST):
        raise ValueError('first must be %r or %r' % (X_FIRST, Y_FIRST))
    if max_iters is None:
        max_iters = (getattr(settings, 'BBQP_ALTERNATING_ITERS', None)
                     or 10 * (instance.m + instance.n))
    steps = (_respond_y, _respond_x) if first == X_FIRST else (_respond_x, _respond_y)
    current = make_solution(instance, start.x, start.y)
    for iteration in range(1, max_iters + 1):
        before = current.value
        for step in steps:
            candidate = step(instance, current)
            if candidate.value > current.value:
                current = candidate
        logger.debug('alternating round %d: %d -> %d', iteration, before, current.value)
        if current.value == before:
            return LocalSearchResult(current, iteration, True)
    return LocalSearchResult(current, max_iters, False)


def guaranteed_alternating(instance, first=X_FIRST):
    """
    Best of the alternating runs started at (1^m, 1^n) and (0^m, 0^n).

    x-first, the result dominates at least 2^(m+n-2) + 3 * 2^(n-1) solutions;
    y-first the bound has 2^(m-1) in place of 2^(n-1).
    """
    ones = make_solution(instance, np.ones(instance.m), np.ones(instance.n))
    zeros = make_solution(instance, np.zeros(instance.m), np.zeros(instance.n))
    return best_of([alternating(instance, ones, first).solution,
                    alternating(instance, zeros, first).solution])


def guaranteed_rounding(instance):
    """Best of RyOx and RxOy, each started at (1^m, 1^n) and at (0^m, 0^n)."""
    starts = [FractionalPoint(np.ones(instance.m), np.ones(instance.n)),
              FractionalPoint(np.zeros(instance.m), np.zeros(instance.n))]
    return best_of([scheme(instance, point) for point in starts
                    for scheme in (round_y_optimize_x, round_x_optimize_y)])


def _row_chunks(count, width, budget=1 << 20):
    step = max(1, budget // max(width, 1))
    for start in range(0, count, step):
        yield start, min(count, start + step)


def best_neighbor_hk(instance, s, h, k):
    """
    A best member of N^{h,k}(s); ties go to the lexicographically smallest
    (x, y) bitstring.
    """
    NeighborhoodSpec.for_hk(h, k).validate(instance.m, instance.n)
    xs = flip_neighbors(s.x, h)
    ys = flip_neighbors(s.y, k)
    projected = instance.Q @ ys.T
    y_linear = ys @ instance.d
    best_value, best_pair = None, None
    # rows and columns are in lexicographic order, so the first maximum in
    # row-major order is the lexicographically smallest tied pair
    for low, high in _row_chunks(len(xs), len(ys)):
        block = xs[low:high] @ projected + (xs[low:high] @ instance.c)[:, None] + y_linear[None, :]
        flat = int(np.argmax(block))
        value = int(block.flat[flat])
        if best_value is None or value > best_value:
            row, column = divmod(flat, block.shape[1])
            best_value, best_pair = value, (low + row, column)
    return make_solution(instance, xs[best_pair[0]], ys[best_pair[1]])


def _completions(instance, fixed, free_side):
    """Optimal completions for a batch of fixed-side vectors (one per row)."""
    if free_side == 'x':
        gains = fixed @ instance.Q.T + instance.c
        free = (gains > 0).astype(np.int64)
        values = (gains * free).sum(axis=1) + fixed @ instance.d
        return free, fixed, values
    gains = fixed @ instance.Q + instance.d
    free = (gains > 0).astype(np.int64)
    values = (gains * free).sum(axis=1) + fixed @ instance.c
    return fixed, free, values


def best_neighbor_alpha(instance, s, alpha):
    """
    A best member of N^alpha(s).

    Each side's flip set is enumerated and the other side is completed
    exactly through its marginals. Completions send zero-gain components to 0,
    which is also the lexicographically smallest choice among equal values.
    """
    NeighborhoodSpec.for_alpha(alpha).validate(instance.m, instance.n)
    x_a, y_a, values_a = _completions(instance, flip_neighbors(s.y, alpha), 'x')
    x_b, y_b, values_b = _completions(instance, flip_neighbors(s.x, alpha), 'y')
    xs = np.vstack([x_a, x_b])
    ys = np.vstack([y_a, y_b])
    values = np.concatenate([values_a, values_b])
    tied = np.flatnonzero(values == values.max())
    pairs = np.hstack([xs[tied], ys[tied]])
    chosen = tied[lex_order(pairs)[0]]
    return make_solution(instance, xs[chosen], ys[chosen])


def best_neighbor(instance, s, spec):
    if spec.kind == HK:
        return best_neighbor_hk(instance, s, spec.h, spec.k)
    return best_neighbor_alpha(instance, s, spec.alpha)


def local_search(instance, start, spec, max_iters=None):
    """Best-improvement local search over ``spec`` until no neighbor is strictly better."""
    spec.validate(instance.m, instance.n)
    if max_iters is None:
        max_iters = getattr(settings, 'BBQP_LOCAL_SEARCH_ITERS', 1000)
    current = make_solution(instance, start.x, start.y)
    for iteration in range(max_iters):
        candidate = best_neighbor(instance, current, spec)
        if candidate.value <= current.value:
            return LocalSearchResult(current, iteration, True)
        logger.debug('local search %s step %d: %d -> %d', spec, iteration + 1,
                     current.value, candidate.value)
        current = candidate
    return LocalSearchResult(current, max_iters, False)
