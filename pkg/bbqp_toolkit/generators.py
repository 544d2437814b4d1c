"""
Seeded instance families: uniform random data and the graph encodings
(biclique, bipartite max cut, induced subgraph, rank-one factorization).
"""
from dataclasses import dataclass, replace

import numpy as np

from bbqp_toolkit import rng
from bbqp_toolkit.core import Instance
from bbqp_toolkit.exceptions import ConstructionError

RANDOM = 'random'
BICLIQUE = 'biclique'
MAXCUT = 'maxcut'
INDUCED_SUBGRAPH = 'induced-subgraph'
FACTORIZATION = 'factorization'

FAMILIES = (RANDOM, BICLIQUE, MAXCUT, INDUCED_SUBGRAPH, FACTORIZATION)


@dataclass(frozen=True)
class GeneratorConfig:
    family: str
    m: int
    n: int
    low: int = -100
    high: int = 100
    density: float = 0.5
    penalty: int = None
    seed: int = 0

    def validate(self):
        if self.family not in FAMILIES:
            raise ConstructionError('unknown family %r' % self.family)
        if self.m < 1 or self.n < 1:
            raise ConstructionError('dimensions must be positive')
        if self.low > self.high:
            raise ConstructionError('value range [%d, %d] is empty' % (self.low, self.high))
        if not 0.0 <= self.density <= 1.0:
            raise ConstructionError('density must lie in [0, 1]')
        if self.family == MAXCUT and self.low < 0:
            raise ConstructionError('max cut weights must be nonnegative')
        if self.family == BICLIQUE and self.penalty is not None:
            if self.penalty < self.minimum_penalty():
                raise ConstructionError('biclique penalty must be at least %d'
                                        % self.minimum_penalty())

    def minimum_penalty(self):
        return 1 + self.m * self.n * max(abs(self.low), abs(self.high))

    def describe(self):
        parts = ['family=%s' % self.family, 'm=%d' % self.m, 'n=%d' % self.n,
                 'range=[%d,%d]' % (self.low, self.high), 'seed=%d' % self.seed]
        if self.family != RANDOM:
            parts.insert(4, 'density=%g' % self.density)
        if self.family == BICLIQUE:
            parts.insert(5, 'penalty=%d' % (self.penalty or self.minimum_penalty()))
        return ' '.join(parts)

    @property
    def name(self):
        return '%s-%dx%d-s%d' % (self.family, self.m, self.n, self.seed)


def _uniform(generator, config, shape):
    return generator.integers(config.low, config.high, size=shape, endpoint=True, dtype=np.int64)


def random_instance(config):
    """q_ij, c_i and d_j i.i.d. uniform over [low, high]."""
    config.validate()
    if config.family != RANDOM:
        raise ConstructionError('random_instance needs the random family')
    generator = rng.make_generator(config.seed)
    Q = _uniform(generator, config, (config.m, config.n))
    c = _uniform(generator, config, config.m)
    d = _uniform(generator, config, config.n)
    return Instance(Q, c, d, name=config.name)


def _edges(generator, config):
    return generator.random((config.m, config.n)) < config.density


def structured_instance(config):
    config.validate()
    if config.family == RANDOM:
        raise ConstructionError('structured_instance needs a graph family')
    generator = rng.make_generator(config.seed)
    shape = (config.m, config.n)
    if config.family == FACTORIZATION:
        H = (generator.random(shape) < config.density).astype(np.int64)
        return Instance(2 * H - 1, name=config.name)
    edges = _edges(generator, config)
    weights = _uniform(generator, config, shape)
    if config.family == BICLIQUE:
        penalty = config.penalty or config.minimum_penalty()
        return Instance(np.where(edges, weights, -penalty), name=config.name)
    if config.family == INDUCED_SUBGRAPH:
        return Instance(np.where(edges, weights, 0), name=config.name)
    return maxcut_instance(np.where(edges, weights, 0)).renamed(config.name)


def maxcut_instance(weights):
    """
    Max cut encoding of a nonnegative bipartite weight matrix:
    f(x, y) = sum w_ij [x_i != y_j], the weight of the cut between
    {i : x_i = 1} + {j : y_j = 1} and the remaining vertices.
    Pairing {i : x_i = 1} with {j : y_j = 0} instead is the same cut with
    the y labels complemented.
    """
    W = np.asarray(weights, dtype=np.int64)
    if (W < 0).any():
        raise ConstructionError('max cut weights must be nonnegative')
    return Instance(-2 * W, W.sum(axis=1), W.sum(axis=0), name='maxcut-%dx%d' % W.shape)


def generate(config):
    if config.family == RANDOM:
        return random_instance(config)
    return structured_instance(config)


def generate_many(config, count):
    return [generate(replace(config, seed=config.seed + offset)) for offset in range(count)]
