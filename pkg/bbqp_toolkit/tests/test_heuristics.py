import itertools
import time
from fractions import Fraction

import numpy as np
from django.test import override_settings

from bbqp_toolkit import heuristics, oracle, rng
from bbqp_toolkit.constructions import alternating_trap, local_search_trap, tight_instance
from bbqp_toolkit.core import (FractionalPoint, Instance, average_upper_bound, average_value,
    evaluate, evaluate_fractional, make_solution)
from bbqp_toolkit.exceptions import DimensionMismatch, InvalidNeighborhood
from bbqp_toolkit.heuristics import NeighborhoodSpec
from bbqp_toolkit.test.testcases import BaseBBQPTestCase


class RoundingTestCase(BaseBBQPTestCase):

    def test_01_ryox_from_halves(self):
        instance = self.create_example_instance()
        solution = heuristics.round_y_optimize_x(instance, heuristics.half_start(2, 2))
        self.assertEqual((solution.x, solution.y, solution.value), ((0, 1), (0, 1), 5))
        self.assertAtLeastAverage(instance, solution)

    def test_02_rxoy_from_halves(self):
        instance = self.create_example_instance()
        solution = heuristics.round_x_optimize_y(instance, heuristics.half_start(2, 2))
        self.assertEqual((solution.x, solution.y, solution.value), ((1, 1), (1, 1), 6))
        self.assertAtLeastAverage(instance, solution)

    def test_03_half_start(self):
        point = heuristics.half_start(2, 3)
        self.assertEqual(point.x.tolist(), [0.5, 0.5])
        self.assertEqual(point.y.tolist(), [0.5, 0.5, 0.5])

    def test_04_tight_instance_rounds_to_nonnegative(self):
        instance = tight_instance(2, 2)
        for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
            self.assertGreaterEqual(scheme(instance, heuristics.half_start(2, 2)).value, 0)

    def test_05_zero_instance(self):
        instance = Instance(np.zeros((2, 3), dtype=np.int64))
        point = FractionalPoint([0.3, 0.9], [0.1, 0.5, 1.0])
        for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
            solution = scheme(instance, point)
            self.assertEqual(solution.value, 0)
            # zero gains round to 0
            self.assertEqual(solution.x, (0, 0))

    def test_06_binary_start_never_gets_worse(self):
        instance = self.create_example_instance()
        start = make_solution(instance, [1, 0], [0, 1])
        point = FractionalPoint.from_solution(start)
        for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
            self.assertGreaterEqual(scheme(instance, point).value, start.value)

    def test_07_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            heuristics.round_y_optimize_x(self.create_example_instance(),
                                          heuristics.half_start(3, 2))

    def test_08_rounding_never_falls_below_the_start(self):
        generator = rng.make_generator(77)
        scale = 16
        for seed, instance in enumerate(self.random_instances(1000, 50, 50, seed=61, low=-100,
                                                               high=100)):
            for point in (heuristics.half_start(instance.m, instance.n),
                          heuristics.type1_start(instance, seed),
                          heuristics.type2_start(instance, seed)):
                floor = evaluate_fractional(instance, point, exact=True)
                for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
                    solution = scheme(instance, point)
                    self.assertSolutionConsistent(instance, solution)
                    self.assertGreaterEqual(solution.value, floor)
            X = generator.integers(0, scale, size=(100, instance.m), endpoint=True)
            Y = generator.integers(0, scale, size=(100, instance.n), endpoint=True)
            # scale**2 * f(X / scale, Y / scale), exact in int64
            floors = (np.einsum('pi,ij,pj->p', X, instance.Q, Y)
                      + scale * (X @ instance.c + Y @ instance.d))
            for x, y, floor in zip(X, Y, floors.tolist()):
                point = FractionalPoint(x / scale, y / scale)
                for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
                    self.assertGreaterEqual(scale * scale * int(scheme(instance, point).value),
                                            floor)

    def test_09_rounding_takes_under_a_millisecond_at_50_by_50(self):
        instance = self.create_random_instance(50, 50, seed=73, low=-100, high=100)
        generator = rng.make_generator(79)
        points = [heuristics.half_start(50, 50)]
        points += [FractionalPoint(*self.random_dyadic_point(generator, 50, 50))
                   for _ in range(99)]
        for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
            scheme(instance, points[0])
            began = time.perf_counter()
            for _ in range(5):
                for point in points:
                    scheme(instance, point)
            per_call = (time.perf_counter() - began) / (5 * len(points))
            self.assertLess(per_call, 1e-3, scheme.__name__)

    def test_10_half_start_beats_the_average_on_large_instances(self):
        for instance in self.random_instances(100, 50, 50, seed=67, low=-1000, high=1000):
            point = heuristics.half_start(instance.m, instance.n)
            for scheme in (heuristics.round_x_optimize_y, heuristics.round_y_optimize_x):
                self.assertAtLeastAverage(instance, scheme(instance, point))

    def test_11_guaranteed_rounding(self):
        for instance in self.random_instances(100, 6, 6, seed=71):
            solution = heuristics.guaranteed_rounding(instance)
            self.assertSolutionConsistent(instance, solution)
            self.assertGreaterEqual(solution.value, average_upper_bound(instance))


class RandomStartTestCase(BaseBBQPTestCase):

    def test_01_type1_negative_marginals(self):
        instance = Instance([[-5]])
        for seed in range(20):
            point = heuristics.type1_start(instance, seed)
            self.assertTrue(0.0 < point.x[0] <= 0.5)
            self.assertTrue(0.0 < point.y[0] <= 0.5)

    def test_02_type1_zero_marginal_counts_as_nonnegative(self):
        point = heuristics.type1_start(self.create_example_instance(), 3)
        self.assertTrue(np.all(point.x > 0.5))
        self.assertTrue(np.all(point.x <= 1.0))

    def test_03_deterministic(self):
        instance = self.create_random_instance(4, 6, 9)
        for start in (heuristics.type1_start, heuristics.type2_start):
            first, second = start(instance, 123), start(instance, 123)
            self.assertEqual(first.x.tolist(), second.x.tolist())
            self.assertEqual(first.y.tolist(), second.y.tolist())
            other = start(instance, 124)
            self.assertNotEqual(first.x.tolist() + first.y.tolist(),
                                other.x.tolist() + other.y.tolist())

    def test_04_type2_zero_and_full_weight(self):
        # gamma = (0, -4): x_1 has zero weight, x_2 carries the full negative weight
        instance = Instance([[0, 0], [-2, -2]], [0, 0], [1, 1])
        for seed in range(20):
            point = heuristics.type2_start(instance, seed)
            self.assertEqual(point.x[0], 0.0)
            self.assertTrue(0.0 <= point.x[1] < 0.5)

    def test_05_type2_all_zero_side_is_half(self):
        instance = Instance([[1, -1], [-1, 1]])
        point = heuristics.type2_start(instance, 1)
        self.assertEqual(point.x.tolist(), [0.5, 0.5])
        self.assertEqual(point.y.tolist(), [0.5, 0.5])

    def test_06_interval_properties(self):
        for seed, instance in enumerate(self.random_instances(100, 8, 8, seed=83)):
            totals = heuristics.marginals(instance)
            point = heuristics.type1_start(instance, seed)
            for values, weights in ((point.x, totals.gamma), (point.y, totals.delta)):
                negative = weights < 0
                self.assertTrue(np.all((values[negative] > 0) & (values[negative] <= 0.5)))
                self.assertTrue(np.all((values[~negative] > 0.5) & (values[~negative] <= 1)))
            point = heuristics.type2_start(instance, seed)
            for values, weights in ((point.x, totals.gamma), (point.y, totals.delta)):
                if not weights.any():
                    self.assertTrue(np.all(values == 0.5))
                    continue
                negative = weights < 0
                self.assertTrue(np.all((values[negative] >= 0) & (values[negative] < 0.5)))
                self.assertTrue(np.all((values[~negative] >= 0) & (values[~negative] <= 1)))
                share = np.abs(weights[~negative]) / np.abs(weights).max()
                self.assertTrue(np.all(values[~negative] <= share))


class AlternatingTestCase(BaseBBQPTestCase):

    def test_01_trap(self):
        instance, start = alternating_trap(2, 10)
        result = heuristics.alternating(instance, start)
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 2)
        self.assertEqual((result.solution.x, result.solution.y, result.solution.value),
                         ((1, 0), (1, 0), 1))
        self.assertEqual(average_value(instance), Fraction(11, 4))
        self.assertEqual(oracle.optimum(instance).value, 11)

    def test_02_optimal_start_converges_at_once(self):
        instance = self.create_example_instance()
        start = make_solution(instance, [1, 1], [1, 1])
        for first in (heuristics.X_FIRST, heuristics.Y_FIRST):
            result = heuristics.alternating(instance, start, first)
            self.assertEqual(result.solution.value, 6)
            self.assertEqual(result.iterations, 1)
            self.assertTrue(result.converged)

    def test_03_round_cap(self):
        instance, start = alternating_trap(3, 10)
        result = heuristics.alternating(instance, start, max_iters=1)
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 1)

    @override_settings(BBQP_ALTERNATING_ITERS=1)
    def test_04_round_cap_setting(self):
        instance, start = alternating_trap(3, 10)
        self.assertFalse(heuristics.alternating(instance, start).converged)

    def test_05_rejects_unknown_order(self):
        instance, start = alternating_trap(2, 10)
        with self.assertRaises(ValueError):
            heuristics.alternating(instance, start, first='z')

    def test_06_converged_solutions_are_side_optimal(self):
        spec = NeighborhoodSpec.for_alpha(0)
        for instance in self.random_instances(60, 4, 4, seed=97):
            start = make_solution(instance, self.zeros(instance.m), self.zeros(instance.n))
            for first in (heuristics.X_FIRST, heuristics.Y_FIRST):
                result = heuristics.alternating(instance, start, first)
                self.assertTrue(result.converged)
                self.assertGreaterEqual(result.solution.value, start.value)
                self.assertTrue(oracle.is_local_optimum(instance, result.solution, spec))
                self.assertGreaterEqual(
                    oracle.dominance_count(instance, result.solution),
                    oracle.alternating_dominance_floor(instance.m, instance.n))

    def test_07_guaranteed_alternating_examples(self):
        instance = self.create_example_instance()
        solution = heuristics.guaranteed_alternating(instance)
        self.assertEqual(solution.value, 6)
        self.assertEqual(oracle.dominance_count(instance, solution), 16)
        zero = Instance(np.zeros((2, 3), dtype=np.int64))
        self.assertEqual(heuristics.guaranteed_alternating(zero).value, 0)
        self.assertEqual(oracle.dominance_count(zero, heuristics.guaranteed_alternating(zero)), 32)
        tight = tight_instance(2, 2)
        solution = heuristics.guaranteed_alternating(tight)
        self.assertEqual(solution.value, 0)
        self.assertEqual(oracle.dominance_count(tight, solution), 16)

    def test_08_guaranteed_alternating_dominance(self):
        for instance in self.random_instances(100, 5, 5, seed=101):
            for first in (heuristics.X_FIRST, heuristics.Y_FIRST):
                solution = heuristics.guaranteed_alternating(instance, first)
                self.assertAtLeastAverage(instance, solution)
                self.assertGreaterEqual(
                    oracle.dominance_count(instance, solution),
                    oracle.guaranteed_alternating_floor(instance.m, instance.n, first))


class NeighborhoodTestCase(BaseBBQPTestCase):

    def test_01_empty_neighborhood_returns_the_solution(self):
        instance = self.create_example_instance()
        s = make_solution(instance, [1, 0], [0, 1])
        self.assertEqual(heuristics.best_neighbor_hk(instance, s, 0, 0), s)

    def test_02_single_flips_escape_the_trap(self):
        instance, _ = alternating_trap(2, 10)
        s = make_solution(instance, [1, 0], [1, 0])
        best = heuristics.best_neighbor_hk(instance, s, 1, 1)
        self.assertEqual((best.x, best.y, best.value), ((1, 1), (1, 1), 11))

    def test_03_neighborhood_sizes(self):
        self.assertEqual(heuristics.neighborhood_size(NeighborhoodSpec.for_hk(1, 1), 2, 2), 9)
        self.assertEqual(heuristics.neighborhood_size(NeighborhoodSpec.for_hk(2, 3), 4, 5),
                         (1 + 4 + 6) * (1 + 5 + 10 + 10))
        self.assertEqual(heuristics.neighborhood_size(NeighborhoodSpec.for_alpha(2), 10, 10),
                         111552)
        self.assertEqual(len(heuristics.flip_neighbors([0, 1, 1, 0], 2)), 11)

    def test_04_flip_neighbors_sorted(self):
        rows = heuristics.flip_neighbors([1, 0, 1], 1).tolist()
        self.assertEqual(rows, [[0, 0, 1], [1, 0, 0], [1, 0, 1], [1, 1, 1]])

    def test_05_alpha_zero_is_the_better_best_response(self):
        for instance in self.random_instances(40, 4, 4, seed=103):
            s = make_solution(instance, self.zeros(instance.m), self.zeros(instance.n))
            best = heuristics.best_neighbor_alpha(instance, s, 0)
            responses = [
                make_solution(instance, heuristics.best_response_x(instance, s.y), s.y),
                make_solution(instance, s.x, heuristics.best_response_y(instance, s.x)),
            ]
            self.assertEqual(best.value, max(r.value for r in responses))

    def test_06_best_neighbors_match_brute_force(self):
        for instance in self.random_instances(40, 4, 4, seed=107):
            s = make_solution(instance, [1] * instance.m, [0] * instance.n)
            every_x = heuristics.flip_neighbors(s.x, instance.m)
            every_y = heuristics.flip_neighbors(s.y, instance.n)
            hk_members = itertools.product(heuristics.flip_neighbors(s.x, 1),
                                           heuristics.flip_neighbors(s.y, 2))
            alpha_members = itertools.chain(
                itertools.product(every_x, heuristics.flip_neighbors(s.y, 1)),
                itertools.product(heuristics.flip_neighbors(s.x, 1), every_y))
            for spec, members in ((NeighborhoodSpec.for_hk(1, 2), hk_members),
                                  (NeighborhoodSpec.for_alpha(1), alpha_members)):
                best = heuristics.best_neighbor(instance, s, spec)
                self.assertSolutionConsistent(instance, best)
                self.assertGreaterEqual(best.value, s.value)
                self.assertEqual(best.value, max(evaluate(instance, x, y) for x, y in members))

    def test_07_ties_go_to_the_smallest_bitstring(self):
        instance = Instance(np.zeros((2, 2), dtype=np.int64))
        s = make_solution(instance, [1, 1], [1, 1])
        best = heuristics.best_neighbor_hk(instance, s, 2, 2)
        self.assertEqual((best.x, best.y), ((0, 0), (0, 0)))
        best = heuristics.best_neighbor_alpha(instance, s, 1)
        # (0,0),(0,0) needs two flips on each side, so it is outside N^1
        self.assertEqual((best.x, best.y), ((0, 0), (0, 1)))

    def test_08_invalid_neighborhoods(self):
        instance = self.create_example_instance()
        s = make_solution(instance, [0, 0], [0, 0])
        with self.assertRaises(InvalidNeighborhood):
            heuristics.best_neighbor_hk(instance, s, 3, 0)
        with self.assertRaises(InvalidNeighborhood):
            heuristics.best_neighbor_alpha(instance, s, -1)
        with self.assertRaises(InvalidNeighborhood):
            NeighborhoodSpec('ring').validate(2, 2)

    def test_09_local_search_trap_certificate(self):
        instance, start, alpha = local_search_trap(10)
        self.assertEqual(alpha, 2)
        best = heuristics.best_neighbor_alpha(instance, start, alpha)
        self.assertEqual(best.value, start.value)
        wider = heuristics.best_neighbor_alpha(instance, start, 10)
        self.assertGreater(wider.value, start.value)


class LocalSearchTestCase(BaseBBQPTestCase):

    def test_01_already_optimal(self):
        instance = self.create_example_instance()
        start = make_solution(instance, [1, 1], [1, 1])
        result = heuristics.local_search(instance, start, NeighborhoodSpec.for_hk(1, 1))
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 0)
        self.assertEqual(result.solution, start)

    def test_02_escapes_the_alternating_trap(self):
        instance, _ = alternating_trap(2, 10)
        start = make_solution(instance, [1, 0], [1, 0])
        result = heuristics.local_search(instance, start, NeighborhoodSpec.for_hk(1, 1))
        self.assertEqual(result.solution.value, 11)
        self.assertEqual(result.iterations, 1)
        self.assertTrue(result.converged)

    def test_03_stops_at_a_local_optimum(self):
        for instance in self.random_instances(40, 4, 4, seed=109):
            start = make_solution(instance, self.zeros(instance.m), self.zeros(instance.n))
            for spec in (NeighborhoodSpec.for_hk(1, 1), NeighborhoodSpec.for_alpha(1)):
                result = heuristics.local_search(instance, start, spec)
                self.assertTrue(result.converged)
                self.assertGreaterEqual(result.solution.value, start.value)
                self.assertTrue(oracle.is_local_optimum(instance, result.solution, spec))

    def test_04_iteration_cap(self):
        instance, _ = alternating_trap(2, 10)
        start = make_solution(instance, [1, 0], [1, 0])
        result = heuristics.local_search(instance, start, NeighborhoodSpec.for_hk(1, 1),
                                         max_iters=0)
        self.assertFalse(result.converged)
        self.assertEqual(result.solution, start)
