"""
Exhaustive ground truth for small instances.

All 2^(m+n) objective values are produced block by block: a chunk of x
vectors against a fixed block of low-order y bits, with the remaining y bits
walked in Gray-code order so that each step adds or removes one column of
x^T Q + d.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np
import pulp
from django.conf import settings

from bbqp_toolkit.core import Solution, average_value, make_solution
from bbqp_toolkit.exceptions import EnumerationCapExceeded
from bbqp_toolkit.heuristics import HK, flip_neighbors, lex_order, neighborhood_size

logger = logging.getLogger(__name__)

LOW_Y_BITS = 10
X_CHUNK_BITS = 12


@dataclass(frozen=True)
class EnumerationReport:
    optimum: Solution
    minimum: int
    mean: Fraction
    theta1: int
    theta2: int
    count_at_most_average: int
    total_solutions: int
    nontrivial_mean: Fraction

    def as_rows(self):
        return [
            ('optimum', self.optimum.value),
            ('optimum_solution', str(self.optimum)),
            ('minimum', self.minimum),
            ('mean', self.mean),
            ('nontrivial_mean', self.nontrivial_mean),
            ('theta1', self.theta1),
            ('theta2', self.theta2),
            ('count_at_most_average', self.count_at_most_average),
            ('total_solutions', self.total_solutions),
        ]


def check_cap(variables):
    cap = getattr(settings, 'BBQP_ORACLE_CAP', 30)
    if variables > cap:
        raise EnumerationCapExceeded('m+n = %d exceeds BBQP_ORACLE_CAP=%d' % (variables, cap))


def bits_matrix(masks, width):
    """Row r holds the binary expansion of masks[r], component i being bit i."""
    masks = np.asarray(masks, dtype=np.int64)
    return (masks[:, None] >> np.arange(width, dtype=np.int64)) & 1


def gray_code_steps(num_bits):
    """Yield (code, flipped_bit) for codes 1 .. 2^num_bits - 1 in Gray order."""
    last = 0
    for i in range(1, 1 << num_bits):
        code = (i >> 1) ^ i
        yield code, (code ^ last).bit_length() - 1
        last = code


def value_blocks(instance):
    """
    Yield (x_masks, y_masks, values) with values[r, s] = f(x_masks[r], y_masks[s]).

    Together the blocks cover every solution exactly once. Blocks are fresh
    arrays and may be retained by the caller.
    """
    m, n = instance.m, instance.n
    low_bits = min(n, LOW_Y_BITS)
    low_masks = np.arange(1 << low_bits, dtype=np.int64)
    y_low = bits_matrix(low_masks, low_bits)
    low_linear = y_low @ instance.d[:low_bits]
    chunk = 1 << min(m, X_CHUNK_BITS)
    for first in range(0, 1 << m, chunk):
        x_masks = np.arange(first, min(1 << m, first + chunk), dtype=np.int64)
        xs = bits_matrix(x_masks, m)
        projected = xs @ instance.Q
        values = (projected[:, :low_bits] @ y_low.T + (xs @ instance.c)[:, None]
                  + low_linear[None, :])
        yield x_masks, low_masks, values
        for code, bit in gray_code_steps(n - low_bits):
            column = low_bits + bit
            contribution = (projected[:, column] + instance.d[column])[:, None]
            if code >> bit & 1:
                values = values + contribution
            else:
                values = values - contribution
            yield x_masks, low_masks | (code << low_bits), values


def _magnitude(instance):
    return (int(np.abs(instance.Q).sum()) + int(np.abs(instance.c).sum())
            + int(np.abs(instance.d).sum()))


def _exact_sum(values, bound):
    if bound * values.size < (1 << 62):
        return int(values.sum())
    return int(sum(int(v) for v in values.ravel().tolist()))


def _lex_min_tie(x_masks, y_masks, values, target, m, n):
    rows = np.flatnonzero((values == target).any(axis=1))
    row = rows[lex_order(bits_matrix(x_masks[rows], m))[0]]
    columns = np.flatnonzero(values[row] == target)
    column = columns[lex_order(bits_matrix(y_masks[columns], n))[0]]
    x = bits_matrix(x_masks[row:row + 1], m)[0]
    y = bits_matrix(y_masks[column:column + 1], n)[0]
    return tuple(int(v) for v in x), tuple(int(v) for v in y)


def _count_at_most(instance, threshold):
    return sum(int(np.count_nonzero(values <= threshold))
               for _, _, values in value_blocks(instance))


def _kth_smallest(instance, k, low, high):
    """Smallest v with |{f <= v}| >= k, by bisection over [low, high] with counting passes."""
    while low < high:
        middle = (low + high) // 2
        if _count_at_most(instance, middle) >= k:
            high = middle
        else:
            low = middle + 1
    return low


def enumerate_stats(instance):
    """Optimum, minimum, mean, both medians and |{f <= A}| by full enumeration."""
    m, n = instance.m, instance.n
    check_cap(m + n)
    total = 1 << (m + n)
    gather = m + n <= getattr(settings, 'BBQP_ORACLE_GATHER_BITS', 22)
    logger.info('enumerating %d solutions of %r (%s medians)', total, instance,
                'gathered' if gather else 'counted')
    # f is integral, so f <= A exactly when f <= floor(A)
    threshold = floor(average_value(instance))
    bound = _magnitude(instance)
    best, best_pair, minimum = None, None, None
    value_sum, trivial_sum, at_most_average = 0, 0, 0
    gathered = []
    for x_masks, y_masks, values in value_blocks(instance):
        block_max, block_min = int(values.max()), int(values.min())
        if best is None or block_max >= best:
            pair = _lex_min_tie(x_masks, y_masks, values, block_max, m, n)
            if best is None or block_max > best or pair < best_pair:
                best, best_pair = block_max, pair
        minimum = block_min if minimum is None else min(minimum, block_min)
        value_sum += _exact_sum(values, bound)
        zero_rows = x_masks == 0
        if zero_rows.any():
            trivial_sum += _exact_sum(values[zero_rows], bound)
        zero_columns = y_masks == 0
        if zero_columns.any():
            trivial_sum += _exact_sum(values[:, zero_columns], bound)
        at_most_average += int(np.count_nonzero(values <= threshold))
        if gather:
            gathered.append(values.ravel())
    k = total // 2
    if gather:
        ordered = np.partition(np.concatenate(gathered), [k - 1, k])
        theta1, theta2 = int(ordered[k - 1]), int(ordered[k])
    else:
        theta1 = _kth_smallest(instance, k, minimum, best)
        theta2 = _kth_smallest(instance, k + 1, theta1, best)
    return EnumerationReport(
        optimum=Solution(best_pair[0], best_pair[1], best),
        minimum=minimum,
        mean=Fraction(value_sum, total),
        theta1=theta1,
        theta2=theta2,
        count_at_most_average=at_most_average,
        total_solutions=total,
        nontrivial_mean=Fraction(value_sum - trivial_sum, ((1 << m) - 1) * ((1 << n) - 1)),
    )


def optimum(instance):
    return enumerate_stats(instance).optimum


def dominance_count(instance, s):
    """|{(x, y) : f(x, y) <= f(s)}|."""
    check_cap(instance.m + instance.n)
    return _count_at_most(instance, make_solution(instance, s.x, s.y).value)


def dominance_ratio(instance, s):
    return Fraction(dominance_count(instance, s), 1 << (instance.m + instance.n))


def alternating_dominance_floor(m, n):
    """Solutions a converged alternating solution always dominates."""
    return (1 << m) + (1 << n) - 1


def dominance_floor(m, n):
    """Solutions any no-worse-than-average solution dominates."""
    return 1 << (m + n - 2)


def guaranteed_alternating_floor(m, n, first='x'):
    return (1 << (m + n - 2)) + 3 * (1 << ((n if first == 'x' else m) - 1))


def _all_vectors(size):
    return bits_matrix(np.arange(1 << size, dtype=np.int64), size)


def _exceeds(instance, xs, ys, value):
    projected = instance.Q @ ys.T
    y_linear = ys @ instance.d
    step = max(1, (1 << 20) // max(len(ys), 1))
    for first in range(0, len(xs), step):
        rows = xs[first:first + step]
        block = rows @ projected + (rows @ instance.c)[:, None] + y_linear[None, :]
        if (block > value).any():
            return True
    return False


def is_local_optimum(instance, s, spec):
    """True iff no member of the neighborhood of s has a strictly larger value."""
    spec.validate(instance.m, instance.n)
    size = neighborhood_size(spec, instance.m, instance.n)
    cap = getattr(settings, 'BBQP_NEIGHBORHOOD_CAP', 1 << 24)
    if size > cap:
        raise EnumerationCapExceeded('%s has %d members, above BBQP_NEIGHBORHOOD_CAP=%d'
                                     % (spec, size, cap))
    value = make_solution(instance, s.x, s.y).value
    if spec.kind == HK:
        return not _exceeds(instance, flip_neighbors(s.x, spec.h),
                            flip_neighbors(s.y, spec.k), value)
    return not (_exceeds(instance, _all_vectors(instance.m), flip_neighbors(s.y, spec.alpha), value)
                or _exceeds(instance, flip_neighbors(s.x, spec.alpha), _all_vectors(instance.n), value))


def brute_force_partition_check(a):
    """True iff some subset of a sums to half the total."""
    if len(a) > 24:
        raise EnumerationCapExceeded('PARTITION check is limited to 24 weights')
    total = sum(a)
    if total % 2:
        return False
    reachable = 1
    for weight in a:
        reachable |= reachable << weight
    return bool(reachable >> (total // 2) & 1)


def _satisfied(constraint, assignment):
    lhs = sum(coefficient * assignment[variable.name] for variable, coefficient in constraint.items())
    rhs = -constraint.constant
    if constraint.sense == pulp.LpConstraintLE:
        return lhs <= rhs
    if constraint.sense == pulp.LpConstraintGE:
        return lhs >= rhs
    return lhs == rhs


def _names(constraint):
    return {variable.name for variable in constraint.keys()}


def _auxiliary_blocks(problem, primary):
    """Group auxiliary variables that share a constraint."""
    parent = {}

    def find(name):
        while parent[name] != name:
            parent[name] = parent[parent[name]]
            name = parent[name]
        return name

    for variable in problem.variables():
        if variable.name not in primary:
            parent[variable.name] = variable.name
    for constraint in problem.constraints.values():
        auxiliary = sorted(_names(constraint) - primary)
        for name in auxiliary[1:]:
            parent[find(name)] = find(auxiliary[0])
    blocks = {}
    for name in parent:
        blocks.setdefault(find(name), []).append(name)
    return [sorted(names) for names in blocks.values()]


def lp_model_optimum(problem, m, n):
    """
    Optimum of a binary pulp model over the primary variables x_i, y_j.

    Auxiliary variables are grouped into blocks that share constraints; for
    every assignment of the primary variables a block touches, all of its
    binary assignments are tried, so the search is exhaustive.
    """
    check_cap(m + n)
    primary = ['x_%d' % (i + 1) for i in range(m)] + ['y_%d' % (j + 1) for j in range(n)]
    primary_set = set(primary)
    objective = {variable.name: coefficient for variable, coefficient in problem.objective.items()}
    constraints = list(problem.constraints.values())
    tables = []
    for names in _auxiliary_blocks(problem, primary_set):
        members = set(names)
        touching = [c for c in constraints if members & _names(c)]
        touched = sorted(set().union(*map(_names, touching)) & primary_set)
        table = {}
        for outer in itertools.product((0, 1), repeat=len(touched)):
            assignment = dict(zip(touched, outer))
            best = None
            for inner in itertools.product((0, 1), repeat=len(names)):
                assignment.update(zip(names, inner))
                if all(_satisfied(c, assignment) for c in touching):
                    gain = sum(objective.get(name, 0) * value for name, value in zip(names, inner))
                    if best is None or gain > best:
                        best = gain
            table[outer] = best
        tables.append((touched, table))
    plain = [c for c in constraints if _names(c) <= primary_set]
    best = None
    for values in itertools.product((0, 1), repeat=m + n):
        assignment = dict(zip(primary, values))
        if not all(_satisfied(c, assignment) for c in plain):
            continue
        total = sum(objective.get(name, 0) * value for name, value in assignment.items())
        for touched, table in tables:
            gain = table[tuple(assignment[name] for name in touched)]
            if gain is None:
                break
            total += gain
        else:
            if best is None or total > best:
                best = total
    return best
