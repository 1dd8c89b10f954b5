"""
Alignment quality criteria comparing a collection before and after alignment:
* ls: cross-validated least squares, relative to leave-one-out means
* pc: pairwise Pearson correlation, aligned over original
* sls: least squares on the first derivatives, relative to the full mean
Values below 1 for ls and sls and above 1 for pc indicate better synchronization.
"""
import numpy

from efda import efdasrvf


class MetricDenominatorError(efdasrvf.EfdaError):
    """ Error raised when a criterion is undefined because its reference term is zero """
    pass


class MetricReport(object):
    """ The (ls, pc, sls) triple for n functions """

    def __init__(self, ls, pc, sls, n):
        self.ls = float(ls)
        self.pc = float(pc)
        self.sls = float(sls)
        self.n = n

    def to_dict(self):
        return {'ls': self.ls, 'pc': self.pc, 'sls': self.sls}

    def __str__(self):
        return 'ls=%.6g pc=%.6g sls=%.6g' % (self.ls, self.pc, self.sls)

    def __repr__(self):
        return 'MetricReport(%s, n=%d)' % (str(self), self.n)


def _as_matrix(original, aligned):
    if len(original) != len(aligned):
        raise efdasrvf.GridMismatchError(
            (len(original), len(aligned)), 'Original and aligned collections differ in size:')
    if len(original) < 2:
        raise MetricDenominatorError(len(original), 'Alignment criteria need at least 2 functions, got')
    efdasrvf.check_common_grid(list(original) + list(aligned))
    return (numpy.array([f.values for f in original]),
            numpy.array([f.values for f in aligned]))


def _row_integrals(matrix):
    return numpy.array([efdasrvf.integrate_values(row) for row in matrix])


def least_squares(original, aligned):
    """ (1/n) sum_i int (f~_i - mean_{j != i} f~_j)^2 / int (f_i - mean_{j != i} f_j)^2 """
    before, after = _as_matrix(original, aligned)
    n = len(before)
    loo_before = (before.sum(axis=0) - before) / (n - 1)
    loo_after = (after.sum(axis=0) - after) / (n - 1)
    numerators = _row_integrals((after - loo_after) ** 2)
    denominators = _row_integrals((before - loo_before) ** 2)
    if numpy.any(denominators <= 0):
        raise MetricDenominatorError(
            int(numpy.argmin(denominators)), 'Least squares undefined: function equals its leave-one-out mean, index')
    return float(numpy.mean(numerators / denominators))


def _correlation_sum(matrix):
    centred = matrix - matrix.mean(axis=1)[:, None]
    norms = numpy.sqrt((centred ** 2).sum(axis=1))
    constant = norms == 0
    norms[constant] = 1.0
    unit = centred / norms[:, None]
    correlations = unit.dot(unit.T)
    correlations[constant, :] = 0.0
    correlations[:, constant] = 0.0
    return float(correlations.sum() - numpy.trace(correlations))


def pairwise_correlation(original, aligned):
    """ sum_{i != j} cc(f~_i, f~_j) / sum_{i != j} cc(f_i, f_j); a constant function has cc 0 """
    before, after = _as_matrix(original, aligned)
    denominator = _correlation_sum(before)
    if denominator == 0:
        raise MetricDenominatorError('', 'Pairwise correlation undefined: original correlations sum to zero')
    return _correlation_sum(after) / denominator


def sobolev_least_squares(original, aligned):
    """ sum_i int (df~_i - mean df~)^2 / sum_i int (df_i - mean df)^2 """
    before, after = _as_matrix(original, aligned)
    before = numpy.array([efdasrvf.derivative(row) for row in before])
    after = numpy.array([efdasrvf.derivative(row) for row in after])
    denominator = _row_integrals((before - before.mean(axis=0)) ** 2).sum()
    if denominator <= 0:
        raise MetricDenominatorError('', 'Sobolev least squares undefined: original derivatives are identical')
    return float(_row_integrals((after - after.mean(axis=0)) ** 2).sum() / denominator)


def evaluate(original, aligned):
    """ All three criteria as a MetricReport """
    return MetricReport(
        least_squares(original, aligned),
        pairwise_correlation(original, aligned),
        sobolev_least_squares(original, aligned),
        len(original))


def cross_sectional_summary(functions):
    """ Pointwise mean and standard deviation of functions on a common grid """
    if not functions:
        raise MetricDenominatorError('', 'Cross-sectional summary of an empty collection')
    efdasrvf.check_common_grid(functions)
    matrix = numpy.array([f.values for f in functions])
    return (functions[0].with_values(matrix.mean(axis=0)),
            functions[0].with_values(matrix.std(axis=0)))
