"""
Shared constants used throughout the efda package
"""
import math

import numpy


class EfdaConstants(object):
    """ Shared constants used in the efda package """

    # Sampling
    DEFAULT_GRID_N = 101
    MIN_GRID_N = 3
    MIN_DP_GRID_N = 8
    SPIKE_GRID_N = 1001

    # Dynamic programming
    DEFAULT_SLOPE_MAX = 5
    DEFAULT_LATTICE_REFINE = 2

    # Warping geometry
    GAMMA_DOT_FLOOR = 1e-8
    PSI_FLOOR = math.sqrt(GAMMA_DOT_FLOOR)
    THETA_EPS = 1e-10
    SPHERE_NORM_TOL = 1e-8
    TANGENT_TOL = 1e-6
    WARP_MEAN_STEP = 0.5
    WARP_MEAN_MIN_STEP = 1e-8
    WARP_MEAN_TOL = 1e-6
    WARP_MEAN_MAX_ITER = 100
    RANDOM_WARP_MAX_ATTEMPTS = 100

    # Orbit mean and centering
    ORBIT_MEAN_TOL = 1e-3
    ORBIT_MEAN_MAX_ITER = 30
    CENTERING_TOL = 1e-3
    CENTERING_MAX_PASSES = 5

    # Datasets
    DATASET_SIM1 = 'sim1'
    DATASET_SIM2 = 'sim2'
    DATASET_SIM3 = 'sim3'
    DATASET_SIM4 = 'sim4'
    DATASET_CONSISTENCY = 'consistency'
    DATASETS = [
        DATASET_SIM1,
        DATASET_SIM2,
        DATASET_SIM3,
        DATASET_SIM4,
        DATASET_CONSISTENCY,
    ]
    SPIKE_SIGMA = 0.001
    UNIFORM_SPACING_TOL = 1e-6
    CSV_FLOAT_FORMAT = '%.15g'

    # Distribution laws for the observation model
    LAW_CONSTANT = 'constant'
    LAW_NORMAL = 'normal'
    LAW_EXPONENTIAL = 'exponential'
    LAWS = [
        LAW_CONSTANT,
        LAW_NORMAL,
        LAW_EXPONENTIAL,
    ]

    # Consistency experiment defaults
    CONSISTENCY_SIZES = [5, 10, 20, 30, 40]
    CONSISTENCY_N = 50
    CONSISTENCY_WARP_AMPLITUDE = 0.5
    CONSISTENCY_N_BASIS = 3

    # Artifact file names
    FILE_ALIGNED = 'aligned.csv'
    FILE_WARPS = 'warps.csv'
    FILE_TEMPLATE = 'template.csv'
    FILE_SUMMARY = 'summary.csv'
    FILE_RESULT = 'result.json'
    FILE_DISTANCE_WARP = 'warp.csv'
    FILE_ESTIMATE = 'estimate.csv'
    FILE_ERROR_CURVE = 'error_curve.csv'

    # CLI exit codes
    EXIT_OK = 0
    EXIT_USAGE = 2
    EXIT_NUMERICAL = 3

    @staticmethod
    def grid(n_points):
        """ Uniform grid of n_points samples on [0, 1] """
        return numpy.linspace(0.0, 1.0, n_points)

    @staticmethod
    def slope_sort_key(step):
        """ Order DP steps by how far the slope b/a is from 1, then by a, then by b """
        return abs(math.log(float(step[1]) / step[0])), step[0], step[1]

    @staticmethod
    def slope_set(slope_max=DEFAULT_SLOPE_MAX):
        """
        Admissible DP steps (a, b) with 1 <= a, b <= slope_max and gcd(a, b) == 1, in DP
        tie-break order
        """
        if slope_max < 1:
            raise ValueError('Invalid slope_max "%s"' % slope_max)
        steps = []
        for a in range(1, slope_max + 1):
            for b in range(1, slope_max + 1):
                if math.gcd(a, b) == 1:
                    steps.append((a, b))
        return sorted(steps, key=EfdaConstants.slope_sort_key)
