"""
The two linearizations of BBQP as pulp models written in LP format, and
import of fractional solutions produced by external solvers.

Variables are binary and named x_i, y_j and <prefix>_i_j (1-based);
constraints are named c1, c2, ... in the order they are generated. The
writer lists constraints and variables sorted by name.
"""
import io
import os
import re
import tempfile
from dataclasses import dataclass

import numpy as np
import pulp
from django.conf import settings

from bbqp_toolkit.core import FractionalPoint
from bbqp_toolkit.exceptions import FractionalBoundsError, InstanceFormatError

ILP1 = 'ILP1'
ILP2 = 'ILP2'

OBJECTIVE_NAME = 'obj'

_illegal = re.compile(r'[^A-Za-z0-9_.]')


@dataclass(frozen=True)
class ModelStats:
    variable_count: int
    constraint_count: int
    binary_count: int
    formulation: str

    @classmethod
    def of(cls, problem, formulation):
        variables = problem.variables()
        return cls(len(variables), len(problem.constraints),
                   sum(1 for v in variables if v.isBinary()), formulation)


class _Model(object):

    def __init__(self, formulation, instance):
        self.problem = pulp.LpProblem(
            '%s_%s' % (formulation, _illegal.sub('_', instance.name or 'instance')),
            pulp.LpMaximize)
        self.x = [self.binary('x_%d' % (i + 1)) for i in range(instance.m)]
        self.y = [self.binary('y_%d' % (j + 1)) for j in range(instance.n)]

    def binary(self, name):
        return pulp.LpVariable(name, cat=pulp.LpBinary)

    def objective(self, terms):
        terms = [(variable, coefficient) for variable, coefficient in terms if coefficient]
        if not terms:
            # an empty objective would make pulp add its dummy variable
            terms = [(self.x[0] if self.x else self.y[0], 0)]
        self.problem += pulp.LpAffineExpression(terms), OBJECTIVE_NAME

    def row(self, terms, sense, rhs):
        name = 'c%d' % (len(self.problem.constraints) + 1)
        self.problem.addConstraint(
            pulp.LpConstraint(pulp.LpAffineExpression(terms), sense, rhs=rhs), name)

    def linear_terms(self, instance):
        return (list(zip(self.x, instance.c.tolist()))
                + list(zip(self.y, instance.d.tolist())))


def _pairs(instance):
    for i, row in enumerate(instance.Q.tolist()):
        for j, q in enumerate(row):
            yield i, j, q


def build_ilp1(instance):
    """
    max sum q_ij z_ij + cx + dy subject to z_ij <= x_i, z_ij <= y_j for all
    pairs and z_ij >= x_i + y_j - 1 only where q_ij < 0.
    """
    model = _Model(ILP1, instance)
    pairs = list(_pairs(instance))
    z = {(i, j): model.binary('z_%d_%d' % (i + 1, j + 1)) for i, j, _ in pairs}
    model.objective([(z[i, j], q) for i, j, q in pairs] + model.linear_terms(instance))
    for i, j, _ in pairs:
        model.row([(z[i, j], 1), (model.x[i], -1)], pulp.LpConstraintLE, 0)
        model.row([(z[i, j], 1), (model.y[j], -1)], pulp.LpConstraintLE, 0)
    for i, j, q in pairs:
        if q < 0:
            model.row([(z[i, j], 1), (model.x[i], -1), (model.y[j], -1)],
                      pulp.LpConstraintGE, -1)
    return model.problem


def build_ilp2(instance):
    """
    max sum q_ij (u/4 + v - w/4 - z/4) + cx + dy with, per pair,
    u + 2v = x + y, u + v <= 1, w - z = x - y and z + w <= 1.
    """
    model = _Model(ILP2, instance)
    pairs = list(_pairs(instance))
    terms = []
    blocks = {}
    for i, j, q in pairs:
        suffix = '%d_%d' % (i + 1, j + 1)
        u, v, w, z = (model.binary(prefix + suffix) for prefix in ('u_', 'v_', 'w_', 'z_'))
        blocks[i, j] = u, v, w, z
        # q / 4 is exact in binary floating point
        terms += [(u, q / 4), (v, q), (w, -q / 4), (z, -q / 4)]
    model.objective(terms + model.linear_terms(instance))
    for i, j, _ in pairs:
        u, v, w, z = blocks[i, j]
        x, y = model.x[i], model.y[j]
        model.row([(u, 1), (v, 2), (x, -1), (y, -1)], pulp.LpConstraintEQ, 0)
        model.row([(u, 1), (v, 1)], pulp.LpConstraintLE, 1)
        model.row([(z, -1), (w, 1), (x, -1), (y, 1)], pulp.LpConstraintEQ, 0)
        model.row([(z, 1), (w, 1)], pulp.LpConstraintLE, 1)
    return model.problem


BUILDERS = {ILP1: build_ilp1, ILP2: build_ilp2}


def build(instance, formulation):
    try:
        builder = BUILDERS[formulation.upper()]
    except KeyError:
        raise ValueError('unknown formulation %r' % formulation)
    return builder(instance)


def write_problem(problem, out):
    """Copies ``problem.writeLP`` output, which always goes to a file, onto a text stream."""
    with tempfile.TemporaryDirectory(prefix='bbqp-') as directory:
        path = os.path.join(directory, 'model.lp')
        problem.writeLP(path)
        with open(path) as f:
            out.write(f.read())


def emit(instance, formulation, out):
    problem = build(instance, formulation)
    write_problem(problem, out)
    return ModelStats.of(problem, formulation.upper())


def emit_ilp1(instance, out):
    return emit(instance, ILP1, out)


def emit_ilp2(instance, out):
    return emit(instance, ILP2, out)


def read_fractional_solution(instance, source):
    """
    Reads ``x <i> <value>`` / ``y <j> <value>`` lines (1-based, '#' comments).
    Unlisted components are 0; values within the tolerance of [0, 1] are
    snapped onto it, anything further out is rejected.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    tolerance = getattr(settings, 'BBQP_FRACTIONAL_TOLERANCE', 1e-9)
    vectors = {'x': np.zeros(instance.m), 'y': np.zeros(instance.n)}
    seen = set()
    for lineno, raw in enumerate(source, 1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        if len(tokens) != 3 or tokens[0] not in vectors:
            raise InstanceFormatError('expected "x <i> <value>" or "y <j> <value>"', lineno)
        side = tokens[0]
        try:
            index = int(tokens[1])
            value = float(tokens[2])
        except ValueError:
            raise InstanceFormatError('malformed index or value', lineno)
        if not 1 <= index <= len(vectors[side]):
            raise InstanceFormatError('%s index %d out of range 1..%d'
                                      % (side, index, len(vectors[side])), lineno)
        if (side, index) in seen:
            raise InstanceFormatError('%s %d listed twice' % (side, index), lineno)
        if not -tolerance <= value <= 1 + tolerance:
            raise FractionalBoundsError('%s %d = %r lies outside [0, 1]' % (side, index, value),
                                        lineno)
        seen.add((side, index))
        vectors[side][index - 1] = min(1.0, max(0.0, value))
    return FractionalPoint(vectors['x'], vectors['y'])


def write_fractional_solution(point, out):
    for label, vector in (('x', point.x), ('y', point.y)):
        for index, value in enumerate(vector.tolist(), 1):
            if value:
                out.write('%s %d %r\n' % (label, index, value))
