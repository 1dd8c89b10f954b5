"""
Signal estimation under the observation model f_i = c_i (g o gamma_i) + e_i, where c_i > 0 is
a random scale, e_i a random constant translation and gamma_i a random warping whose inverses
have sample Karcher mean gamma_id. With the population means of c_i and e_i known, the aligned
sample mean gives back g:

    g_hat = (mean of aligned f_i - E e) / E c

Code Example:
from efda import efdaestimation
model = efdaestimation.ObservationModel.default(seed=1)
curve = efdaestimation.consistency_experiment(model, [5, 10, 20])
print(curve, efdaestimation.error_trend(curve))
"""
from concurrent import futures

import numpy
from scipy import stats

from efda import efdaconstants
from efda import efdamean
from efda import efdasrvf
from efda import efdavalidator
from efda import efdawarps


class ObservationModelError(efdasrvf.EfdaError):
    """ Error raised for an invalid observation model or estimation request """
    pass


def constant_law(value):
    return {'law': efdaconstants.EfdaConstants.LAW_CONSTANT, 'value': float(value)}


def normal_law(mean, sd):
    return {'law': efdaconstants.EfdaConstants.LAW_NORMAL, 'mean': float(mean), 'sd': float(sd)}


def exponential_law(mean):
    return {'law': efdaconstants.EfdaConstants.LAW_EXPONENTIAL, 'mean': float(mean)}


def validate_law(descriptor):
    try:
        efdavalidator.EfdaValidator.validate_law(descriptor)
    except efdavalidator.ArtifactValidationError as err:
        raise ObservationModelError(descriptor, 'Invalid distribution law (%s):' % err)


def sample_law(descriptor, rng, size):
    """ Draw size samples from a validated law descriptor """
    law = descriptor['law']
    if law == efdaconstants.EfdaConstants.LAW_CONSTANT:
        samples = numpy.full(size, descriptor['value'], dtype=float)
    elif law == efdaconstants.EfdaConstants.LAW_NORMAL:
        samples = rng.normal(descriptor['mean'], descriptor['sd'], size=size)
    elif law == efdaconstants.EfdaConstants.LAW_EXPONENTIAL:
        samples = rng.exponential(descriptor['mean'], size=size)
    else:
        raise ObservationModelError(law, 'Unknown distribution law')
    if not numpy.all(numpy.isfinite(samples)):
        raise ObservationModelError(descriptor, 'Distribution law produced non-finite samples:')
    return samples


def consistency_signal(n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """ g(t) = sin(5 pi t) on [0, 1] """
    return efdasrvf.SampledFunction(numpy.sin(5.0 * numpy.pi * efdaconstants.EfdaConstants.grid(n_points)))


class ObservationModel(object):
    """ True signal plus the laws of the random scales, translations and warpings """

    def __init__(self, g, c_mean=1.0, e_mean=0.0, scale_law=None, noise_law=None,
                 warp_amplitude=efdaconstants.EfdaConstants.CONSISTENCY_WARP_AMPLITUDE, seed=0,
                 n_basis=efdaconstants.EfdaConstants.CONSISTENCY_N_BASIS):
        """
        :param g: <SampledFunction> true signal
        :param c_mean: <float> population mean of the scales, > 0
        :param e_mean: <float> population mean of the translations
        :param scale_law: <dict> law of c_i; defaults to the constant c_mean
        :param noise_law: <dict> law of e_i; defaults to the constant e_mean
        :param warp_amplitude: <float> amplitude of the random warpings, 0 for none
        :param seed: <int> base seed
        :param n_basis: <int> sine terms in the random warpings
        """
        if not isinstance(g, efdasrvf.SampledFunction):
            raise TypeError("Expected SampledFunction signal, '%s' given" % str(type(g)))
        if not c_mean > 0:
            raise ObservationModelError(c_mean, 'Mean scale must be positive, got')
        if warp_amplitude < 0:
            raise ObservationModelError(warp_amplitude, 'Warp amplitude must be non-negative, got')
        self.g = g
        self.c_mean = float(c_mean)
        self.e_mean = float(e_mean)
        self.scale_law = scale_law or constant_law(c_mean)
        self.noise_law = noise_law or constant_law(e_mean)
        validate_law(self.scale_law)
        validate_law(self.noise_law)
        self.warp_amplitude = float(warp_amplitude)
        self.seed = seed
        self.n_basis = n_basis

    @staticmethod
    def default(n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N, seed=0):
        """ g = sin(5 pi t), exponential scales of mean 1, standard normal translations """
        return ObservationModel(
            consistency_signal(n_points), c_mean=1.0, e_mean=0.0,
            scale_law=exponential_law(1.0), noise_law=normal_law(0.0, 1.0), seed=seed)

    @staticmethod
    def zero_corruption(g, seed=0):
        """ Unit scales, no translation and no warping: every observation equals g """
        return ObservationModel(g, c_mean=1.0, e_mean=0.0, warp_amplitude=0.0, seed=seed)

    def rng(self, *stream):
        """ Random generator for a stream derived from the model seed """
        return numpy.random.default_rng([self.seed if self.seed is not None else 0] + list(stream))

    def __repr__(self):
        return 'ObservationModel(c_mean=%g, e_mean=%g, scale_law=%s, noise_law=%s, warp_amplitude=%g)' % (
            self.c_mean, self.e_mean, self.scale_law, self.noise_law, self.warp_amplitude)


class ObservationSample(object):
    """ Simulated observations with the scales, translations and warpings behind them """

    def __init__(self, functions, scales, translations, warps):
        self.functions = functions
        self.scales = scales
        self.translations = translations
        self.warps = warps

    @property
    def s_bar(self):
        """ Sample mean of sqrt(c_i) """
        return float(numpy.mean(numpy.sqrt(self.scales)))


class EstimationReport(object):
    """ Estimate of the signal and its L2 error """

    def __init__(self, estimate, error, n, s_bar=None, alignment=None):
        if error is not None and error < 0:
            raise ObservationModelError(error, 'Estimation error must be non-negative, got')
        self.estimate = estimate
        self.error = error
        self.n = n
        self.s_bar = s_bar
        self.alignment = alignment

    def __repr__(self):
        return 'EstimationReport(n=%d, error=%s)' % (self.n, self.error)


def draw_observations(m, n, rng=None):
    """
    Draw n observations c_i (g o gamma_i) + e_i with their ingredients
    :param m: <ObservationModel>
    :param n: <int> sample size, >= 2
    :param rng: <numpy.random.Generator> defaults to the model's base stream
    :return: ObservationSample
    """
    if n < 2:
        raise ObservationModelError(n, 'Need at least 2 observations, got')
    rng = rng if rng is not None else m.rng()
    scales = sample_law(m.scale_law, rng, n)
    translations = sample_law(m.noise_law, rng, n)
    warps = efdawarps.random_warps_identity_mean(
        n, m.warp_amplitude, n_basis=m.n_basis, seed=rng, n_points=m.g.n)
    functions = [
        m.g.with_values(c * efdasrvf.warp_function(m.g, gamma).values + e)
        for c, e, gamma in zip(scales, translations, warps)]
    return ObservationSample(functions, scales, translations, warps)


def simulate_observations(m, n, rng=None):
    """ n observations from the model; deterministic for a given seed """
    return draw_observations(m, n, rng).functions


def l2_error(estimate, g):
    """ L2 distance between two functions sampled on the same grid, over [0, 1] """
    if estimate.n != g.n:
        raise efdasrvf.GridMismatchError((estimate.n, g.n), 'Cannot compare functions sampled on grids')
    return float(numpy.sqrt(efdasrvf.integrate_values((estimate.values - g.values) ** 2)))


def estimate_signal(fs, c_mean, e_mean, cfg=None, g=None, s_bar=None, aligner=None):
    """
    Align the observations and rescale their mean: g_hat = (mean f~_i - e_mean) / c_mean
    :param fs: <list> of SampledFunction
    :param c_mean: <float> population mean of the scales, non-zero
    :param e_mean: <float> population mean of the translations
    :param cfg: <DpConfig>
    :param g: <SampledFunction> true signal; when given the L2 error is reported
    :param s_bar: <float> sample mean of sqrt(c_i), passed through to the report
    :param aligner: <EfdaAligner> overrides cfg
    :return: EstimationReport
    """
    if c_mean == 0:
        raise ObservationModelError(c_mean, 'Mean scale must be non-zero, got')
    if not fs:
        raise efdamean.EmptyCollectionError('', 'Cannot estimate a signal from no observations')
    aligner = aligner or efdamean.EfdaAligner(cfg)
    alignment = aligner.align_all(fs)
    aligned_mean = numpy.mean([f.values for f in alignment.aligned], axis=0)
    estimate = fs[0].with_values((aligned_mean - e_mean) / c_mean)
    error = l2_error(estimate, g) if g is not None else None
    return EstimationReport(estimate, error, len(fs), s_bar=s_bar, alignment=alignment)


def _trial_error(m, n, repeat, aligner):
    sample = draw_observations(m, n, m.rng(n, repeat))
    report = estimate_signal(
        sample.functions, m.c_mean, m.e_mean, g=m.g, s_bar=sample.s_bar, aligner=aligner)
    return report.error


def consistency_experiment(m, sizes=None, cfg=None, repeats=1, verbosity=0, workers=1):
    """
    Estimation error of g for each sample size, averaged over repeats. The trial for size n
    and repeat r draws from the stream (seed, n, r).
    :param m: <ObservationModel>
    :param sizes: <list> sample sizes, each >= 2
    :param cfg: <DpConfig>
    :param repeats: <int> trials per size
    :param verbosity: <int> 1 logs one line per size
    :param workers: <int> threads running trials
    :return: <list> of (n, mean error)
    """
    sizes = list(sizes or efdaconstants.EfdaConstants.CONSISTENCY_SIZES)
    if not sizes:
        raise ObservationModelError('', 'Consistency experiment needs at least one sample size')
    for n in sizes:
        if int(n) != n or n < 2:
            raise ObservationModelError(n, 'Sample sizes must be integers >= 2, got')
    if repeats < 1:
        raise ObservationModelError(repeats, 'Need at least one repeat, got')
    aligner = efdamean.EfdaAligner(cfg, verbosity=max(verbosity - 1, 0))
    if verbosity:
        aligner.log('**** EFDA CONSISTENCY EXPERIMENT ****', 'Sizes:', sizes,
                    ', Repeats:', repeats, ', Model:', m)

    trials = [(int(n), r) for n in sizes for r in range(repeats)]
    if workers > 1:
        with futures.ThreadPoolExecutor(max_workers=workers) as executor:
            errors = list(executor.map(lambda trial: _trial_error(m, trial[0], trial[1], aligner), trials))
    else:
        errors = [_trial_error(m, n, r, aligner) for n, r in trials]

    curve = []
    for index, n in enumerate(sizes):
        mean_error = float(numpy.mean(errors[index * repeats:(index + 1) * repeats]))
        curve.append((int(n), mean_error))
        if verbosity:
            aligner.log('n=%d: mean L2 error %.6g over %d trials' % (n, mean_error, repeats))
    return curve


def error_trend(curve):
    """ Spearman rank correlation between sample size and error """
    if len(curve) < 2:
        raise ObservationModelError(len(curve), 'Error trend needs at least 2 sizes, got')
    sizes, errors = zip(*curve)
    return float(stats.spearmanr(sizes, errors)[0])
