import math
import unittest

import numpy

from efda import efdasrvf
from efda import efdawarps


class SpherePointTest(unittest.TestCase):
    def test_unit_norm(self):
        p = efdawarps.SpherePoint(numpy.linspace(1, 3, 51))
        self.assertAlmostEqual(p.norm(), 1.0, delta=1e-12)

    def test_rejects_negative_values(self):
        with self.assertRaises(efdawarps.SphereGeometryError):
            efdawarps.SpherePoint([1.0, -1.0, 1.0])

    def test_floors_zero_values(self):
        p = efdawarps.SpherePoint([0.0, 1.0, 1.0, 0.0])
        self.assertTrue(numpy.all(p.values > 0))

    def test_tangent_vector_is_projected(self):
        base = efdawarps.SpherePoint.identity(51)
        v = efdawarps.TangentVector(numpy.ones(51) + numpy.linspace(0, 1, 51), base)
        self.assertAlmostEqual(efdasrvf.integrate_values(v.values * base.values), 0.0, delta=1e-12)


class SphereMapsTest(unittest.TestCase):
    def test_identity_maps_to_constant(self):
        psi = efdawarps.warp_to_sphere(efdawarps.identity_warp(101))
        numpy.testing.assert_allclose(psi.values, numpy.ones(101), atol=1e-12)

    def test_sphere_round_trip(self):
        gamma = efdawarps.exponential_warp(1.2, 201)
        back = efdawarps.sphere_to_warp(efdawarps.warp_to_sphere(gamma))
        self.assertLess(gamma.sup_distance(back), 1e-3)

    def test_exp_log_round_trip(self):
        for a_base, a_target in ((0.3, -0.4), (-1.0, 1.0), (0.0, 2.0)):
            base = efdawarps.warp_to_sphere(efdawarps.exponential_warp(a_base, 101))
            target = efdawarps.warp_to_sphere(efdawarps.exponential_warp(a_target, 101))
            back = efdawarps.exp_map(base, efdawarps.log_map(base, target))
            self.assertLess(numpy.max(numpy.abs(back.values - target.values)), 1e-8)

    def test_log_of_base_is_zero(self):
        base = efdawarps.warp_to_sphere(efdawarps.exponential_warp(0.5, 101))
        self.assertLess(efdawarps.log_map(base, base).norm(), 1e-6)

    def test_exp_of_zero_is_base(self):
        base = efdawarps.SpherePoint.identity(21)
        self.assertIs(efdawarps.exp_map(base, efdawarps.TangentVector(numpy.zeros(21), base)), base)

    def test_exp_rejects_long_vectors(self):
        base = efdawarps.SpherePoint.identity(101)
        t = numpy.linspace(0, 1, 101)
        v = efdawarps.TangentVector(5 * math.sqrt(2) * numpy.sin(2 * numpy.pi * t), base)
        with self.assertRaises(efdawarps.SphereGeometryError):
            efdawarps.exp_map(base, v)


class WarpDistanceTest(unittest.TestCase):
    def test_distance_properties(self):
        gamma_1 = efdawarps.exponential_warp(0.7, 101)
        gamma_2 = efdawarps.exponential_warp(-0.4, 101)
        self.assertAlmostEqual(efdawarps.fr_warp_distance(gamma_1, gamma_1), 0.0, delta=1e-7)
        self.assertAlmostEqual(
            efdawarps.fr_warp_distance(gamma_1, gamma_2), efdawarps.fr_warp_distance(gamma_2, gamma_1))
        self.assertGreater(efdawarps.fr_warp_distance(gamma_1, gamma_2), 0.0)
        self.assertLessEqual(efdawarps.fr_warp_distance(gamma_1, gamma_2), math.pi / 2)

    def test_distance_to_square_warp(self):
        t = numpy.linspace(0, 1, 1001)
        distance = efdawarps.fr_warp_distance(efdawarps.identity_warp(1001), efdasrvf.Warping(t ** 2))
        self.assertAlmostEqual(distance, math.acos(2.0 * math.sqrt(2.0) / 3.0), delta=1e-3)
        self.assertAlmostEqual(distance, 0.33984, delta=1e-3)

    def test_right_invariance(self):
        gamma_0 = efdawarps.exponential_warp(0.9, 501)
        gamma_1 = efdawarps.exponential_warp(0.5, 501)
        gamma_2 = efdawarps.exponential_warp(-1.1, 501)
        before = efdawarps.fr_warp_distance(gamma_1, gamma_2)
        after = efdawarps.fr_warp_distance(
            efdawarps.compose_warps(gamma_1, gamma_0), efdawarps.compose_warps(gamma_2, gamma_0))
        self.assertAlmostEqual(before, after, delta=5e-3)


class GroupOperationsTest(unittest.TestCase):
    def test_inverse(self):
        gamma = efdawarps.exponential_warp(1.3, 201)
        identity = efdawarps.identity_warp(201)
        self.assertLess(efdawarps.compose_warps(gamma, efdawarps.invert_warp(gamma)).sup_distance(identity), 1e-3)
        self.assertLess(efdawarps.compose_warps(efdawarps.invert_warp(gamma), gamma).sup_distance(identity), 1e-3)

    def test_square_warp_closed_forms(self):
        t = numpy.linspace(0, 1, 1001)
        square = efdasrvf.Warping(t ** 2)
        numpy.testing.assert_allclose(efdawarps.invert_warp(square).values, numpy.sqrt(t), atol=1e-3)
        numpy.testing.assert_allclose(efdawarps.warp_to_sphere(square).values, numpy.sqrt(2.0 * t), atol=1e-3)

    def test_compose_with_identity(self):
        gamma = efdawarps.exponential_warp(-0.6, 101)
        composed = efdawarps.compose_warps(gamma, efdawarps.identity_warp(101))
        self.assertLess(composed.sup_distance(gamma), 1e-12)

    def test_exponential_family_endpoints(self):
        for a in (-1.5, -0.375, 0.0, 0.375, 1.5):
            values = efdawarps.exponential_warp_values(a, [0.0, 1.0])
            self.assertAlmostEqual(values[0], 0.0)
            self.assertAlmostEqual(values[1], 1.0)


class KarcherMeanWarpsTest(unittest.TestCase):
    def test_cost_trace_non_increasing(self):
        for seed in range(50):
            warps = efdawarps.random_warps_identity_mean(5, 0.4, seed=seed, n_points=51)
            warps = [efdawarps.compose_warps(g, efdawarps.exponential_warp(0.5, 51)) for g in warps]
            result = efdawarps.karcher_mean_warps(warps)
            self.assertTrue(numpy.all(numpy.diff(result.cost_trace) <= 0))

    def test_single_warp(self):
        gamma = efdawarps.exponential_warp(0.8, 101)
        result = efdawarps.karcher_mean_warps([gamma])
        self.assertTrue(result.converged)
        self.assertLess(result.mean.sup_distance(gamma), 1e-3)

    def test_symmetric_pair_has_identity_mean(self):
        base = efdawarps.SpherePoint.identity(101)
        t = numpy.linspace(0, 1, 101)
        v = efdawarps.TangentVector(0.3 * math.sqrt(2) * numpy.sin(2 * numpy.pi * t), base)
        warps = [efdawarps.sphere_to_warp(efdawarps.exp_map(base, v)),
                 efdawarps.sphere_to_warp(efdawarps.exp_map(base, v.scale(-1.0)))]
        result = efdawarps.karcher_mean_warps(warps)
        self.assertTrue(result.converged)
        self.assertLess(result.mean.sup_distance(efdawarps.identity_warp(101)), 1e-3)

    def test_mean_minimizes_cost(self):
        warps = [efdawarps.exponential_warp(a, 101) for a in (-1.0, 0.2, 0.9, 1.4)]
        result = efdawarps.karcher_mean_warps(warps)
        cost = efdawarps.karcher_cost(result.mean, warps)
        for other in warps + [efdawarps.identity_warp(101)]:
            self.assertLessEqual(cost, efdawarps.karcher_cost(other, warps) + 1e-6)

    def test_right_equivariance(self):
        warps = [efdawarps.exponential_warp(a, 201) for a in (-1.0, -0.3, 0.5, 1.2)]
        gamma_0 = efdawarps.exponential_warp(0.7, 201)
        mean = efdawarps.karcher_mean_warps(warps).mean
        shifted_mean = efdawarps.karcher_mean_warps(
            [efdawarps.compose_warps(g, gamma_0) for g in warps]).mean
        self.assertLess(shifted_mean.sup_distance(efdawarps.compose_warps(mean, gamma_0)), 5e-3)

    def test_empty_input(self):
        with self.assertRaises(efdawarps.SphereGeometryError):
            efdawarps.karcher_mean_warps([])


class RandomWarpsTest(unittest.TestCase):
    def test_inverses_have_identity_mean(self):
        warps = efdawarps.random_warps_identity_mean(20, 0.3, seed=4)
        inverses = [efdawarps.invert_warp(g) for g in warps]
        mean = efdawarps.karcher_mean_warps(inverses).mean
        self.assertLess(efdawarps.fr_warp_distance(mean, efdawarps.identity_warp()), 5e-3)

    def test_reproducible(self):
        first = efdawarps.random_warps_identity_mean(4, 0.3, seed=12)
        second = efdawarps.random_warps_identity_mean(4, 0.3, seed=12)
        for g1, g2 in zip(first, second):
            numpy.testing.assert_array_equal(g1.values, g2.values)

    def test_zero_amplitude_gives_identity(self):
        for gamma in efdawarps.random_warps_identity_mean(3, 0.0, seed=1):
            self.assertTrue(gamma.is_identity(1e-12))

    def test_needs_two_warps(self):
        with self.assertRaises(efdawarps.SphereGeometryError):
            efdawarps.random_warps_identity_mean(1, 0.3, seed=1)
