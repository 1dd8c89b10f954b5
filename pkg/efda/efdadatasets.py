"""
Simulated function collections and spike-train smoothing.

* sim1: bimodal Gaussian mixtures with random peak heights, warped by an exponential family
* sim2: the same mixtures without warping
* sim3: Gaussian bumps with random centers and small amplitude changes
* sim4: a sine wave under an envelope, warped by an exponential family
* consistency: observations of sin(5 pi t) under random warping, scaling and translation

Code Example:
from efda import efdadatasets
collection = efdadatasets.generate('sim1', seed=3)
"""
import math

import numpy
from scipy import stats

from efda import efdacollection
from efda import efdaconstants
from efda import efdaestimation
from efda import efdasrvf
from efda import efdawarps


class UnknownDatasetError(efdasrvf.EfdaError):
    """ Error raised for a dataset name that has no generator """
    pass


BIMODAL_COUNT = 21
BIMODAL_INTERVAL = (-3.0, 3.0)
BIMODAL_PEAKS = (1.5, -1.5)
BIMODAL_HEIGHT_MEAN = 1.0
BIMODAL_HEIGHT_SD = 0.25
BIMODAL_WARP_RANGE = 1.0

GAUSSIAN_COUNT = 29
GAUSSIAN_CENTER = 0.5
GAUSSIAN_SHIFT = 0.25
GAUSSIAN_WIDTH = 0.05
GAUSSIAN_AMPLITUDE_SPREAD = 0.1

WAVE_COUNT = 9
WAVE_INTERVAL = (0.0, 9.0)
WAVE_WARP_RANGE = 1.5


def _bimodal_heights(seed):
    rng = numpy.random.default_rng(seed)
    return rng.normal(BIMODAL_HEIGHT_MEAN, BIMODAL_HEIGHT_SD, size=(BIMODAL_COUNT, 2))


def _bimodal(heights, t):
    """ y(t) = z1 exp(-(t - 1.5)^2 / 2) + z2 exp(-(t + 1.5)^2 / 2) """
    return (heights[0] * numpy.exp(-(t - BIMODAL_PEAKS[0]) ** 2 / 2.0) +
            heights[1] * numpy.exp(-(t - BIMODAL_PEAKS[1]) ** 2 / 2.0))


def interval_warp(a, t, t0, t1):
    """ Exponential warp family moved from [0, 1] onto [t0, t1] """
    width = t1 - t0
    return t0 + width * efdawarps.exponential_warp_values(a, (numpy.asarray(t) - t0) / width)


def sim1_bimodal(seed=None, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """ 21 warped bimodal functions on [-3, 3]; the middle one is unwarped """
    t0, t1 = BIMODAL_INTERVAL
    t = numpy.linspace(t0, t1, n_points)
    slopes = numpy.linspace(-BIMODAL_WARP_RANGE, BIMODAL_WARP_RANGE, BIMODAL_COUNT)
    functions = [
        efdasrvf.SampledFunction(_bimodal(heights, interval_warp(a, t, t0, t1)), t0, t1)
        for heights, a in zip(_bimodal_heights(seed), slopes)]
    return efdacollection.FunctionCollection(functions)


def sim2_unwarped(seed=None, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """ The bimodal functions of sim1_bimodal for the same seed, without warping """
    t0, t1 = BIMODAL_INTERVAL
    t = numpy.linspace(t0, t1, n_points)
    functions = [efdasrvf.SampledFunction(_bimodal(heights, t), t0, t1)
                 for heights in _bimodal_heights(seed)]
    return efdacollection.FunctionCollection(functions)


def sim3_gaussian_shifts(seed=None, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N,
                         shift=GAUSSIAN_SHIFT, amplitude_spread=GAUSSIAN_AMPLITUDE_SPREAD):
    """
    29 Gaussian bumps of standard deviation 0.05 on [0, 1] with centers 0.5 + U(-shift, shift)
    and amplitudes U(1 - amplitude_spread, 1 + amplitude_spread). Perfectly aligned bumps keep
    the amplitude spread in ls: about 0.005 on average for these defaults.
    """
    rng = numpy.random.default_rng(seed)
    centers = GAUSSIAN_CENTER + rng.uniform(-shift, shift, size=GAUSSIAN_COUNT)
    amplitudes = rng.uniform(1.0 - amplitude_spread, 1.0 + amplitude_spread, size=GAUSSIAN_COUNT)
    t = efdaconstants.EfdaConstants.grid(n_points)
    functions = [
        efdasrvf.SampledFunction(amplitude * numpy.exp(-(t - center) ** 2 / (2.0 * GAUSSIAN_WIDTH ** 2)))
        for center, amplitude in zip(centers, amplitudes)]
    return efdacollection.FunctionCollection(functions)


def sim4_wave(seed=None, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """
    9 functions on [0, 9]: f(t) = (1 - (gamma(t) / 9 - 0.5)^2) sin(pi gamma(t)) with warp slopes
    -1.5 to 1.5 in steps of 0.375. The data is fixed; seed is accepted for a uniform interface.
    """
    t0, t1 = WAVE_INTERVAL
    t = numpy.linspace(t0, t1, n_points)
    functions = []
    for a in numpy.linspace(-WAVE_WARP_RANGE, WAVE_WARP_RANGE, WAVE_COUNT):
        gamma = interval_warp(a, t, t0, t1)
        functions.append(efdasrvf.SampledFunction(
            (1.0 - (gamma / t1 - 0.5) ** 2) * numpy.sin(numpy.pi * gamma), t0, t1))
    return efdacollection.FunctionCollection(functions)


def consistency_observations(seed=None, n=efdaconstants.EfdaConstants.CONSISTENCY_N,
                             n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """ n observations of sin(5 pi t) under the default observation model """
    model = efdaestimation.ObservationModel.default(n_points=n_points, seed=seed)
    return efdacollection.FunctionCollection(efdaestimation.simulate_observations(model, n))


def smooth_spike_train(spike_times, sigma=efdaconstants.EfdaConstants.SPIKE_SIGMA,
                       n_points=efdaconstants.EfdaConstants.SPIKE_GRID_N):
    """
    Spike train convolved with a Gaussian kernel: f(t) = sum_i N(t; t_i, sigma^2) on [0, 1]
    :param spike_times: <list> spike times in [0, 1]
    :param sigma: <float> kernel standard deviation, > 0
    :param n_points: <int> samples of the output
    """
    if not sigma > 0:
        raise ValueError('Kernel width must be positive, got "%s"' % sigma)
    spike_times = numpy.asarray(spike_times, dtype=float).ravel()
    if numpy.any((spike_times < 0) | (spike_times > 1)) or not numpy.all(numpy.isfinite(spike_times)):
        raise ValueError('Spike times must lie in [0, 1]')
    t = efdaconstants.EfdaConstants.grid(n_points)
    if not len(spike_times):
        return efdasrvf.SampledFunction(numpy.zeros(n_points))
    return efdasrvf.SampledFunction(
        stats.norm.pdf(t[:, None], loc=spike_times[None, :], scale=sigma).sum(axis=1))


GENERATORS = {
    efdaconstants.EfdaConstants.DATASET_SIM1: sim1_bimodal,
    efdaconstants.EfdaConstants.DATASET_SIM2: sim2_unwarped,
    efdaconstants.EfdaConstants.DATASET_SIM3: sim3_gaussian_shifts,
    efdaconstants.EfdaConstants.DATASET_SIM4: sim4_wave,
}


def generate(name, seed=None, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N, n=None):
    """
    Build a named dataset
    :param name: <str> one of EfdaConstants.DATASETS
    :param n: <int> number of functions; only used by the consistency dataset
    """
    if name == efdaconstants.EfdaConstants.DATASET_CONSISTENCY:
        return consistency_observations(
            seed=seed, n=n or efdaconstants.EfdaConstants.CONSISTENCY_N, n_points=n_points)
    if name not in GENERATORS:
        raise UnknownDatasetError(name, 'Unknown dataset, expected one of %s, got' % ', '.join(
            efdaconstants.EfdaConstants.DATASETS))
    return GENERATORS[name](seed=seed, n_points=n_points)


def peak_height(sigma):
    """ Height of a single smoothed spike """
    return 1.0 / (math.sqrt(2.0 * math.pi) * sigma)
