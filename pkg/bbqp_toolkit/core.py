"""
Instances, solutions and the exact average-value formulas of BBQP.

An instance P(Q, c, d) asks to maximize f(x, y) = x^T Q y + cx + dy over
x in {0,1}^m and y in {0,1}^n. All instance data is integral; averages are
returned as exact ``Fraction`` values (their denominators divide 4 for the
full average).
"""
import io
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np

from bbqp_toolkit.exceptions import (DimensionMismatch, InstanceFormatError,
    InstanceOverflow, InvalidVector)

INT64_MAX = (1 << 63) - 1

# A(Q,c,d) and its relatives are exact rationals with small power-of-two
# denominators; Fraction keeps them reduced and compares exactly with ints.
QuarterRational = Fraction


def _int_array(values, label, ndim):
    raw = np.asarray(values)
    if raw.dtype.kind == 'f':
        if not np.all(np.isfinite(raw)) or not np.all(raw == np.round(raw)):
            raise InvalidVector('%s must hold integers' % label)
    elif raw.dtype.kind == 'O':
        if not all(isinstance(v, (int, np.integer)) for v in raw.flat):
            raise InvalidVector('%s must hold integers' % label)
    elif raw.dtype.kind not in 'iub':
        raise InvalidVector('%s must hold integers' % label)
    try:
        array = np.array(raw.tolist(), dtype=np.int64)
    except OverflowError:
        raise InstanceOverflow('%s has an entry outside the 64-bit range' % label)
    if array.ndim != ndim:
        raise InvalidVector('%s must be %d-dimensional' % (label, ndim))
    array.setflags(write=False)
    return array


class Instance(object):
    """
        The problem datum (Q, c, d). Immutable after construction.

        c and d default to zero vectors (a homogeneous instance).
    """
    __slots__ = ('Q', 'c', 'd', 'name')

    def __init__(self, Q, c=None, d=None, name=None):
        Q = _int_array(Q, 'Q', 2)
        m, n = Q.shape
        if m < 1 or n < 1:
            raise InvalidVector('Q must have at least one row and one column')
        c = _int_array(np.zeros(m, dtype=np.int64) if c is None else c, 'c', 1)
        d = _int_array(np.zeros(n, dtype=np.int64) if d is None else d, 'd', 1)
        if len(c) != m:
            raise DimensionMismatch('c', m, len(c))
        if len(d) != n:
            raise DimensionMismatch('d', n, len(d))
        magnitude = sum(abs(v) for row in Q.tolist() for v in row)
        magnitude += sum(abs(v) for v in c.tolist()) + sum(abs(v) for v in d.tolist())
        if magnitude > INT64_MAX:
            raise InstanceOverflow(
                'sum of absolute entries %d does not fit in 64 bits' % magnitude)
        object.__setattr__(self, 'Q', Q)
        object.__setattr__(self, 'c', c)
        object.__setattr__(self, 'd', d)
        object.__setattr__(self, 'name', name)

    def __setattr__(self, key, value):
        raise AttributeError('Instance is immutable')

    @property
    def m(self):
        return self.Q.shape[0]

    @property
    def n(self):
        return self.Q.shape[1]

    @property
    def is_homogeneous(self):
        return not self.c.any() and not self.d.any()

    def renamed(self, name):
        return Instance(self.Q, self.c, self.d, name=name)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (np.array_equal(self.Q, other.Q) and np.array_equal(self.c, other.c)
                and np.array_equal(self.d, other.d))

    __hash__ = None

    def __repr__(self):
        return '<Instance %s %dx%d>' % (self.name or '', self.m, self.n)


@dataclass(frozen=True)
class Solution:
    x: tuple
    y: tuple
    value: int

    @property
    def is_trivial(self):
        return not any(self.x) or not any(self.y)

    @property
    def sort_key(self):
        # maximum value first, then the lexicographically smallest bitstrings
        return (-self.value, self.x, self.y)

    def __str__(self):
        return format_solution(self)


@dataclass(frozen=True)
class Marginals:
    gamma: np.ndarray
    delta: np.ndarray
    alpha: int
    beta: int
    gamma_total: int


@dataclass(frozen=True, eq=False)
class FractionalPoint:
    """A pair of vectors in [0,1]^m x [0,1]^n, the input of the rounding schemes."""
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        for label in ('x', 'y'):
            vector = np.array(getattr(self, label), dtype=np.float64)
            if vector.ndim != 1:
                raise InvalidVector('%s must be a vector' % label)
            if not np.all(np.isfinite(vector)) or np.any(vector < 0.0) or np.any(vector > 1.0):
                raise InvalidVector('%s has a component outside [0, 1]' % label)
            vector.setflags(write=False)
            object.__setattr__(self, label, vector)

    @classmethod
    def from_solution(cls, solution):
        return cls(np.array(solution.x, dtype=np.float64), np.array(solution.y, dtype=np.float64))

    @property
    def is_binary(self):
        return bool(np.all((self.x == 0) | (self.x == 1)) and np.all((self.y == 0) | (self.y == 1)))


def binary_vector(values, length, label):
    vector = np.asarray(values)
    if vector.ndim != 1:
        raise InvalidVector('%s must be a vector' % label)
    if len(vector) != length:
        raise DimensionMismatch(label, length, len(vector))
    if not np.all((vector == 0) | (vector == 1)):
        raise InvalidVector('%s must be binary' % label)
    return vector.astype(np.int64)


def check_point(instance, point):
    if len(point.x) != instance.m:
        raise DimensionMismatch('x', instance.m, len(point.x))
    if len(point.y) != instance.n:
        raise DimensionMismatch('y', instance.n, len(point.y))


def evaluate(instance, x, y):
    x = binary_vector(x, instance.m, 'x')
    y = binary_vector(y, instance.n, 'y')
    return int(x @ instance.Q @ y + instance.c @ x + instance.d @ y)


def make_solution(instance, x, y):
    x = binary_vector(x, instance.m, 'x')
    y = binary_vector(y, instance.n, 'y')
    value = int(x @ instance.Q @ y + instance.c @ x + instance.d @ y)
    return Solution(tuple(int(v) for v in x), tuple(int(v) for v in y), value)


def best_of(solutions):
    return min(solutions, key=lambda s: s.sort_key)


def evaluate_fractional(instance, point, exact=False):
    """
    f extended to real vectors.

    With ``exact`` the value is a Fraction: every float is a dyadic rational,
    so the bilinear form is evaluated without rounding.
    """
    check_point(instance, point)
    if not exact:
        Q = instance.Q.astype(np.float64)
        return float(point.x @ Q @ point.y + instance.c.astype(np.float64) @ point.x
                     + instance.d.astype(np.float64) @ point.y)
    xs = [Fraction(v) for v in point.x.tolist()]
    ys = [Fraction(v) for v in point.y.tolist()]
    total = Fraction(0)
    for xi, row, ci in zip(xs, instance.Q.tolist(), instance.c.tolist()):
        if xi:
            total += xi * (sum(q * yj for q, yj in zip(row, ys) if q and yj) + ci)
    total += sum(dj * yj for dj, yj in zip(instance.d.tolist(), ys) if dj and yj)
    return total


def marginals(instance):
    row_sums = instance.Q.sum(axis=1)
    column_sums = instance.Q.sum(axis=0)
    return Marginals(
        gamma=instance.c + row_sums,
        delta=instance.d + column_sums,
        alpha=int(row_sums.sum()),
        beta=int(instance.c.sum()),
        gamma_total=int(instance.d.sum()),
    )


def average_value(instance):
    """A(Q,c,d) = (1/4) sum q_ij + (1/2) sum c_i + (1/2) sum d_j."""
    totals = marginals(instance)
    return Fraction(totals.alpha + 2 * totals.beta + 2 * totals.gamma_total, 4)


def average_nontrivial(instance):
    """
    Mean of f over the (2^m - 1)(2^n - 1) solutions with x != 0 and y != 0.

    The trivial solutions contribute 2^(n-1) sum d_j (x = 0) and
    2^(m-1) sum c_i (y = 0) to the total 2^(m+n) A(Q,c,d).
    """
    totals = marginals(instance)
    m, n = instance.m, instance.n
    scaled_total = ((1 << (m + n - 2)) * totals.alpha
                    + (1 << (m + n - 1)) * (totals.beta + totals.gamma_total))
    trivial_total = (1 << (n - 1)) * totals.gamma_total + (1 << (m - 1)) * totals.beta
    return Fraction(scaled_total - trivial_total, ((1 << m) - 1) * ((1 << n) - 1))


def average_upper_bound(instance):
    """Avg+ = max{alpha + beta + gamma, beta, gamma, 0}."""
    totals = marginals(instance)
    return max(totals.alpha + totals.beta + totals.gamma_total,
               totals.beta, totals.gamma_total, 0)


def corner_solutions(instance):
    ones_m, zeros_m = np.ones(instance.m), np.zeros(instance.m)
    ones_n, zeros_n = np.ones(instance.n), np.zeros(instance.n)
    return [make_solution(instance, ones_m, ones_n), make_solution(instance, ones_m, zeros_n),
            make_solution(instance, zeros_m, ones_n), make_solution(instance, zeros_m, zeros_n)]


def best_corner_solution(instance):
    return best_of(corner_solutions(instance))


def best_trivial_solution(instance):
    y_only = make_solution(instance, np.zeros(instance.m), instance.d > 0)
    x_only = make_solution(instance, instance.c > 0, np.zeros(instance.n))
    return best_of([y_only, x_only])


def complement_class(instance, x, y):
    """The class P(x,y); its four values always sum to 4 A(Q,c,d)."""
    x = binary_vector(x, instance.m, 'x')
    y = binary_vector(y, instance.n, 'y')
    return (make_solution(instance, x, y), make_solution(instance, x, 1 - y),
            make_solution(instance, 1 - x, y), make_solution(instance, 1 - x, 1 - y))


def transpose(instance):
    return Instance(instance.Q.T, instance.d, instance.c, name=instance.name)


def bitstring(vector):
    return ''.join('1' if v else '0' for v in vector)


def decimal_string(value):
    """Decimal rendering of a rational; exact whenever the denominator is 2^a 5^b."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return str(Decimal(value.numerator) / Decimal(value.denominator))



def format_solution(solution):
    return 'x:%s y:%s value:%d' % (bitstring(solution.x), bitstring(solution.y), solution.value)


def parse_solution(text, instance=None):
    """
    Reads ``x:<bits> y:<bits> [value:<int>]``.

    With an instance the value is recomputed and a stated value must agree.
    """
    fields = {}
    for token in text.split():
        key, sep, value = token.partition(':')
        if not sep or key not in ('x', 'y', 'value') or key in fields:
            raise InstanceFormatError('malformed solution token %r' % token)
        fields[key] = value
    if 'x' not in fields or 'y' not in fields:
        raise InstanceFormatError('solution needs both x and y')
    bits = {}
    for key in ('x', 'y'):
        if not fields[key] or set(fields[key]) - set('01'):
            raise InstanceFormatError('%s must be a bitstring' % key)
        bits[key] = [int(b) for b in fields[key]]
    stated = None
    if 'value' in fields:
        try:
            stated = int(fields['value'])
        except ValueError:
            raise InstanceFormatError('value must be an integer')
    if instance is None:
        if stated is None:
            raise InstanceFormatError('value is required without an instance')
        return Solution(tuple(bits['x']), tuple(bits['y']), stated)
    solution = make_solution(instance, bits['x'], bits['y'])
    if stated is not None and stated != solution.value:
        raise InstanceFormatError('stated value %d differs from f(x,y) = %d'
                                  % (stated, solution.value))
    return solution


def _tokens(stream):
    for lineno, line in enumerate(stream, 1):
        for token in line.split('#', 1)[0].split():
            yield lineno, token


def read_instance(source, name=None):
    """
    Parses the whitespace-separated instance format::

        m n
        <m rows of n integers: Q>
        <m integers: c>
        <n integers: d>

    '#' starts a comment. ``source`` is a text stream or a string.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    tokens = _tokens(source)

    def take(what):
        try:
            lineno, token = next(tokens)
        except StopIteration:
            raise InstanceFormatError('unexpected end of input while reading %s' % what)
        try:
            return int(token)
        except ValueError:
            raise InstanceFormatError('%s: %r is not an integer' % (what, token), lineno)

    m, n = take('m'), take('n')
    if m < 1 or n < 1:
        raise InstanceFormatError('dimensions must be positive, got %d %d' % (m, n))
    Q = [[take('Q[%d][%d]' % (i + 1, j + 1)) for j in range(n)] for i in range(m)]
    c = [take('c[%d]' % (i + 1)) for i in range(m)]
    d = [take('d[%d]' % (j + 1)) for j in range(n)]
    for lineno, token in tokens:
        raise InstanceFormatError('unexpected trailing token %r' % token, lineno)
    return Instance(Q, c, d, name=name)


def write_instance(instance, stream, comments=()):
    for comment in comments:
        stream.write('# %s\n' % comment)
    stream.write('%d %d\n' % (instance.m, instance.n))
    for row in instance.Q.tolist():
        stream.write(' '.join(str(v) for v in row) + '\n')
    stream.write(' '.join(str(v) for v in instance.c.tolist()) + '\n')
    stream.write(' '.join(str(v) for v in instance.d.tolist()) + '\n')
