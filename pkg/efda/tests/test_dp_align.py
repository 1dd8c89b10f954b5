import unittest

import numpy

from efda import efdaconstants
from efda import efdadpalign
from efda import efdasrvf
from efda import efdawarps


SMALL_STEPS = [(1, 1), (1, 2), (2, 1)]


def smooth_srvf(rng, n_points):
    t = numpy.linspace(0.0, 1.0, n_points)
    values = numpy.zeros(n_points)
    for order in range(1, 4):
        values += rng.normal() * numpy.sin(order * numpy.pi * t + rng.uniform(0, numpy.pi))
    return efdasrvf.to_srvf(efdasrvf.SampledFunction(values))


def all_paths(size, steps):
    """ Every lattice path from (0, 0) to (size - 1, size - 1) """
    paths = []

    def extend(path):
        i, j = path[-1]
        if (i, j) == (size - 1, size - 1):
            paths.append(list(path))
            return
        for a, b in steps:
            if i + a < size and j + b < size:
                path.append((i + a, j + b))
                extend(path)
                path.pop()

    extend([(0, 0)])
    return paths


class DpConfigTest(unittest.TestCase):
    def test_default_slope_set(self):
        cfg = efdadpalign.DpConfig()
        self.assertEqual(len(cfg.slope_set), 19)
        self.assertEqual(cfg.slope_set[0], (1, 1))
        self.assertEqual(set(cfg.slope_set[1:3]), {(4, 5), (5, 4)})
        self.assertEqual(set(cfg.slope_set[3:5]), {(3, 4), (4, 3)})
        self.assertEqual(set(cfg.slope_set[-2:]), {(1, 5), (5, 1)})

    def test_small_slope_set_order(self):
        steps = efdadpalign.DpConfig(slope_max=3).slope_set
        self.assertEqual(len(steps), 7)
        self.assertEqual(steps[0], (1, 1))
        self.assertEqual(set(steps[1:3]), {(2, 3), (3, 2)})
        self.assertEqual(set(steps[3:5]), {(1, 2), (2, 1)})

    def test_lattice_size(self):
        self.assertEqual(efdadpalign.DpConfig().lattice_size(101), 201)
        self.assertEqual(efdadpalign.DpConfig(refine=1).lattice_size(101), 101)
        self.assertEqual(efdadpalign.DpConfig(refine=3).lattice_size(11), 31)
        self.assertEqual(efdadpalign.DpConfig(grid_n=51, refine=3).lattice_size(101), 51)

    def test_rejects_invalid_refinement(self):
        for refine in (0, -1, 1.5):
            with self.assertRaises(efdadpalign.DpConfigError):
                efdadpalign.DpConfig(refine=refine)

    def test_rejects_small_lattice(self):
        with self.assertRaises(efdadpalign.DpConfigError):
            efdadpalign.DpConfig(grid_n=5)

    def test_rejects_slope_set_without_diagonal(self):
        with self.assertRaises(efdadpalign.DpConfigError):
            efdadpalign.DpConfig(slope_set=[(1, 2), (2, 1)])

    def test_rejects_non_coprime_step(self):
        with self.assertRaises(efdadpalign.DpConfigError):
            efdadpalign.DpConfig(slope_set=[(1, 1), (2, 2)])

    def test_rejects_invalid_slope_max(self):
        with self.assertRaises(efdadpalign.DpConfigError):
            efdadpalign.DpConfig(slope_max=0)

    def test_steps_are_coprime(self):
        for a, b in efdaconstants.EfdaConstants.slope_set(4):
            self.assertEqual(numpy.gcd(a, b), 1)


class OptimalPathTest(unittest.TestCase):
    def test_matches_exhaustive_search(self):
        rng = numpy.random.default_rng(0)
        steps = efdadpalign.DpConfig(slope_set=SMALL_STEPS).slope_set
        for size in (8, 9, 10):
            paths = all_paths(size, steps)
            for _ in range(5):
                q1 = rng.normal(size=size)
                q2 = rng.normal(size=size)
                costs = efdadpalign.segment_costs(q1, q2, steps)
                best = min(efdadpalign.path_energy(path, costs, steps) for path in paths)
                path, energy = efdadpalign.optimal_path(q1, q2, steps)
                self.assertEqual(energy, best)
                self.assertEqual(efdadpalign.path_energy(path, costs, steps), energy)
                self.assertEqual(path[0], (0, 0))
                self.assertEqual(path[-1], (size - 1, size - 1))

    def test_diagonal_segment_energy_is_trapezoidal(self):
        q1 = numpy.array([0.0, 1.0, 2.0, 3.0])
        q2 = numpy.zeros(4)
        costs = efdadpalign.segment_costs(q1, q2, [(1, 1)])
        self.assertAlmostEqual(costs[0][1, 1], 0.5 * (1.0 + 4.0) / 3.0)


class OptimalWarpTest(unittest.TestCase):
    def test_self_alignment_is_identity(self):
        q = smooth_srvf(numpy.random.default_rng(1), 101)
        gamma, energy = efdadpalign.optimal_warp(q, q)
        self.assertEqual(energy, 0.0)
        self.assertTrue(gamma.is_identity())

    def test_scaled_self_alignment_is_identity(self):
        t = numpy.linspace(0, 1, 101)
        q = efdasrvf.to_srvf(efdasrvf.SampledFunction(numpy.exp(t)))
        self.assertTrue(numpy.all(q.values > 0))
        for c in (0.3, 3.0, 10.0):
            for cfg in (efdadpalign.DpConfig(), efdadpalign.DpConfig(refine=1, slope_max=3)):
                gamma, _ = efdadpalign.optimal_warp(q.scale(c), q, cfg)
                self.assertTrue(gamma.is_identity(1e-9), 'c=%s %r' % (c, cfg))

    def test_warped_copy_is_close(self):
        q = efdasrvf.to_srvf(efdasrvf.SampledFunction(numpy.sin(2 * numpy.pi * numpy.linspace(0, 1, 101))))
        q_warped = efdasrvf.warp_srvf(q, efdawarps.exponential_warp(0.8, 101))
        distance = efdadpalign.elastic_distance(q, q_warped)
        self.assertLess(distance, 0.5 * efdasrvf.l2_distance(q, q_warped))

    def test_warp_aligns_second_to_first(self):
        q1 = efdasrvf.to_srvf(efdasrvf.SampledFunction(numpy.sin(2 * numpy.pi * numpy.linspace(0, 1, 101))))
        q2 = efdasrvf.warp_srvf(q1, efdawarps.exponential_warp(-0.8, 101))
        for cfg in (efdadpalign.DpConfig(), efdadpalign.DpConfig(grid_n=51)):
            _, gamma, _ = efdadpalign.elastic_match(q1, q2, cfg)
            self.assertEqual(gamma.n, 101)
            self.assertLess(
                efdasrvf.l2_distance(q1, efdasrvf.warp_srvf(q2, gamma)), efdasrvf.l2_distance(q1, q2))

    def test_scaling_does_not_change_the_match(self):
        rng = numpy.random.default_rng(8)
        q1 = smooth_srvf(rng, 101)
        q2 = efdasrvf.warp_srvf(q1, efdawarps.exponential_warp(0.6, 101))
        gamma, _ = efdadpalign.optimal_warp(q1, q2)
        gamma_scaled, _ = efdadpalign.optimal_warp(q1.scale(3.0), q2)
        cross = efdasrvf.inner_product(q1, efdasrvf.warp_srvf(q2, gamma))
        cross_scaled = efdasrvf.inner_product(q1, efdasrvf.warp_srvf(q2, gamma_scaled))
        self.assertAlmostEqual(cross_scaled / cross, 1.0, delta=0.02)

    def test_grid_mismatch(self):
        with self.assertRaises(efdasrvf.GridMismatchError):
            efdadpalign.optimal_warp(efdasrvf.Srvf(numpy.ones(11)), efdasrvf.Srvf(numpy.ones(12)))


class ElasticDistanceTest(unittest.TestCase):
    def test_symmetric(self):
        rng = numpy.random.default_rng(4)
        q1 = smooth_srvf(rng, 61)
        q2 = smooth_srvf(rng, 61)
        self.assertEqual(efdadpalign.elastic_distance(q1, q2), efdadpalign.elastic_distance(q2, q1))

    def test_not_larger_than_l2_distance(self):
        rng = numpy.random.default_rng(6)
        q1 = smooth_srvf(rng, 61)
        q2 = smooth_srvf(rng, 61)
        self.assertLessEqual(efdadpalign.elastic_distance(q1, q2), efdasrvf.l2_distance(q1, q2) + 1e-12)

    def test_pseudo_distance_on_random_triples(self):
        rng = numpy.random.default_rng(21)
        for _ in range(10):
            q1, q2, q3 = [smooth_srvf(rng, 61) for _ in range(3)]
            d12 = efdadpalign.elastic_distance(q1, q2)
            d23 = efdadpalign.elastic_distance(q2, q3)
            d13 = efdadpalign.elastic_distance(q1, q3)
            self.assertGreaterEqual(min(d12, d23, d13), 0.0)
            self.assertEqual(d13, efdadpalign.elastic_distance(q3, q1))
            self.assertLessEqual(d13, d12 + d23 + 2e-3)

    def test_distance_matrix(self):
        rng = numpy.random.default_rng(9)
        qs = [smooth_srvf(rng, 41) for _ in range(4)]
        distances = efdadpalign.distance_matrix(qs)
        numpy.testing.assert_array_equal(distances, distances.T)
        numpy.testing.assert_array_equal(numpy.diag(distances), numpy.zeros(4))
        self.assertTrue(numpy.all(distances[~numpy.eye(4, dtype=bool)] > 0))
