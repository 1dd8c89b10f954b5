"""
Discrete functions on a uniform grid, their square-root velocity functions (SRVFs) and the
warping action on both.

All computations run on the uniform grid of [0, 1]. A SampledFunction keeps its original
interval [t0, t1] for display; derivatives and integrals are taken on the rescaled domain.

Numerics:
* derivatives: central differences inside, second-order one-sided at both ends
* integrals, norms and inner products: trapezoidal rule
* compositions: linear interpolation

Code Example:
import numpy
from efda import efdasrvf
t = numpy.linspace(0, 1, 101)
f = efdasrvf.SampledFunction(numpy.sin(2 * numpy.pi * t))
q = efdasrvf.to_srvf(f)
f_back = efdasrvf.from_srvf(q, f.values[0])
"""
import numpy
from scipy import integrate

from efda import efdaconstants


class EfdaError(Exception):
    """ Base class for exceptions in the efda package """
    def __init__(self, expression='', message=''):
        Exception.__init__(self, message)
        self.expression = expression
        self.message = message

    def __str__(self):
        if self.expression == '' or self.expression is None:
            return str(self.message)
        return '%s %s' % (self.message, self.expression)


class GridMismatchError(EfdaError):
    """ Error raised when two objects are sampled on grids of different sizes """
    pass


class InvalidFunctionError(EfdaError):
    """ Error raised when a sampled function or SRVF violates its invariants """
    pass


class InvalidWarpingError(EfdaError):
    """ Error raised when a warping is not a boundary-preserving increasing map of [0, 1] """
    pass


class NumericalFailureError(EfdaError):
    """ Error raised when an iterative numerical procedure cannot produce a valid result """
    pass


def _as_readonly_array(values):
    array = numpy.array(values, dtype=float)
    if array.ndim != 1:
        raise InvalidFunctionError(array.shape, 'Expected a 1-D array of samples, got shape')
    array.setflags(write=False)
    return array


def _step(n_points):
    return 1.0 / (n_points - 1)


def derivative(values):
    """ Numerical derivative of samples on the uniform grid of [0, 1] """
    values = numpy.asarray(values, dtype=float)
    return numpy.gradient(values, _step(len(values)), edge_order=2)


def integrate_values(values):
    """ Trapezoidal integral over [0, 1] of samples on the uniform grid """
    values = numpy.asarray(values, dtype=float)
    return float(integrate.trapezoid(values, dx=_step(len(values))))


def cumulative_integral(values):
    """ Cumulative trapezoidal integral from 0, one value per grid point """
    values = numpy.asarray(values, dtype=float)
    return integrate.cumulative_trapezoid(values, dx=_step(len(values)), initial=0.0)


class SampledFunction(object):
    """ A real-valued function sampled at N uniform points of [t0, t1] """

    def __init__(self, values, t0=0.0, t1=1.0):
        """
        :param values: <array-like> N >= 3 finite samples at t0 + k * (t1 - t0) / (N - 1)
        :param t0: <float> start of the interval
        :param t1: <float> end of the interval, t1 > t0
        """
        self._values = _as_readonly_array(values)
        self.t0 = float(t0)
        self.t1 = float(t1)
        if len(self._values) < efdaconstants.EfdaConstants.MIN_GRID_N:
            raise InvalidFunctionError(
                len(self._values), 'A sampled function needs at least 3 samples, got')
        if not numpy.all(numpy.isfinite(self._values)):
            raise InvalidFunctionError('', 'Sampled function contains non-finite values')
        if not self.t1 > self.t0:
            raise InvalidFunctionError((self.t0, self.t1), 'Invalid interval')

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return len(self._values)

    @property
    def interval(self):
        return self.t0, self.t1

    def grid(self):
        """ Sample locations on the original interval """
        return numpy.linspace(self.t0, self.t1, self.n)

    def unit_grid(self):
        """ Sample locations on the rescaled domain [0, 1] """
        return efdaconstants.EfdaConstants.grid(self.n)

    def with_values(self, values):
        """ New function with the same interval and the given samples """
        return SampledFunction(values, t0=self.t0, t1=self.t1)

    def resample(self, n_points):
        """ Linearly resample onto n_points uniform samples of the same interval """
        if n_points == self.n:
            return self
        new_values = numpy.interp(
            efdaconstants.EfdaConstants.grid(n_points), self.unit_grid(), self._values)
        return self.with_values(new_values)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, SampledFunction):
            return False
        return (self.interval == other.interval and self.n == other.n and
                numpy.array_equal(self._values, other.values))

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'SampledFunction(n=%d, interval=[%g, %g])' % (self.n, self.t0, self.t1)


class Srvf(object):
    """ Square-root velocity function sampled at N uniform points of [0, 1] """

    def __init__(self, values):
        self._values = _as_readonly_array(values)
        if len(self._values) < efdaconstants.EfdaConstants.MIN_GRID_N:
            raise InvalidFunctionError(len(self._values), 'An SRVF needs at least 3 samples, got')
        if not numpy.all(numpy.isfinite(self._values)):
            raise InvalidFunctionError('', 'SRVF contains non-finite values')

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return len(self._values)

    def norm(self):
        """ L2 norm on [0, 1] """
        return l2_norm(self)

    def scale(self, factor):
        """ Pointwise multiple factor * q """
        return Srvf(factor * self._values)

    def resample(self, n_points):
        if n_points == self.n:
            return self
        return Srvf(numpy.interp(
            efdaconstants.EfdaConstants.grid(n_points),
            efdaconstants.EfdaConstants.grid(self.n), self._values))

    @staticmethod
    def mean(srvfs):
        """ Pointwise average of SRVFs sampled on a common grid """
        check_common_grid(srvfs)
        return Srvf(numpy.mean([q.values for q in srvfs], axis=0))

    def __len__(self):
        return self.n

    def __repr__(self):
        return 'Srvf(n=%d)' % self.n


class Warping(object):
    """
    Boundary-preserving, strictly increasing reparameterization of [0, 1] sampled at N uniform
    points: values[0] = 0, values[N - 1] = 1 and values[k + 1] > values[k].
    """

    ENDPOINT_TOL = 1e-9

    def __init__(self, values):
        array = numpy.array(values, dtype=float)
        if array.ndim != 1 or len(array) < efdaconstants.EfdaConstants.MIN_GRID_N:
            raise InvalidWarpingError(array.shape, 'A warping needs at least 3 samples, got shape')
        if not numpy.all(numpy.isfinite(array)):
            raise InvalidWarpingError('', 'Warping contains non-finite values')
        if abs(array[0]) > self.ENDPOINT_TOL or abs(array[-1] - 1.0) > self.ENDPOINT_TOL:
            raise InvalidWarpingError(
                (array[0], array[-1]), 'Warping must map 0 to 0 and 1 to 1, got endpoints')
        array[0] = 0.0
        array[-1] = 1.0
        if numpy.any(numpy.diff(array) <= 0):
            raise InvalidWarpingError(
                int(numpy.argmin(numpy.diff(array))), 'Warping is not strictly increasing at index')
        array.setflags(write=False)
        self._values = array

    @staticmethod
    def identity(n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
        return Warping(efdaconstants.EfdaConstants.grid(n_points))

    @staticmethod
    def from_values(values):
        """ Build a warping from increasing samples, mapping the endpoints affinely onto 0 and 1 """
        array = numpy.asarray(values, dtype=float)
        span = array[-1] - array[0]
        if not span > 0:
            raise InvalidWarpingError((array[0], array[-1]), 'Cannot normalise warping with endpoints')
        return Warping((array - array[0]) / span)

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return len(self._values)

    def derivative(self):
        """ Numerical derivative, clamped at zero """
        return numpy.maximum(derivative(self._values), 0.0)

    def resample(self, n_points):
        """ Linear resampling onto n_points; monotonicity is preserved """
        if n_points == self.n:
            return self
        return Warping.from_values(numpy.interp(
            efdaconstants.EfdaConstants.grid(n_points),
            efdaconstants.EfdaConstants.grid(self.n), self._values))

    def sup_distance(self, other):
        """ Sup-norm distance to another warping on a common grid """
        other = other.resample(self.n)
        return float(numpy.max(numpy.abs(self._values - other.values)))

    def is_identity(self, tol=1e-12):
        return self.sup_distance(Warping.identity(self.n)) <= tol

    def __len__(self):
        return self.n

    def __repr__(self):
        return 'Warping(n=%d)' % self.n


def check_common_grid(objects):
    if not objects:
        raise GridMismatchError('', 'Expected at least one sampled object')
    sizes = set(obj.n for obj in objects)
    if len(sizes) != 1:
        raise GridMismatchError(sorted(sizes), 'Objects are sampled on different grids:')


def q_map(x):
    """
    Q(x) = x / sqrt(|x|) with Q(0) = 0, i.e. sign(x) * sqrt(|x|). Accepts scalars or arrays.
    """
    if numpy.ndim(x) == 0:
        x = float(x)
        if x == 0.0:
            return 0.0
        return x / numpy.sqrt(abs(x))
    x = numpy.asarray(x, dtype=float)
    return numpy.sign(x) * numpy.sqrt(numpy.abs(x))


def differentiate(f):
    """ Derivative of f with respect to its original time variable, as a SampledFunction """
    return f.with_values(derivative(f.values) / (f.t1 - f.t0))


def to_srvf(f):
    """ SRVF q = Q(df/dt) with the derivative taken on the rescaled domain [0, 1] """
    return Srvf(q_map(derivative(f.values)))


def from_srvf(q, f0=0.0, t0=0.0, t1=1.0):
    """ Reconstruct f(t) = f0 + integral_0^t q(s) |q(s)| ds, displayed on [t0, t1] """
    values = q.values
    return SampledFunction(f0 + cumulative_integral(values * numpy.abs(values)), t0=t0, t1=t1)


def warp_function(f, g):
    """ Composition f o g: f interpolated at g(t_k) """
    g = g.resample(f.n)
    return f.with_values(numpy.interp(g.values, f.unit_grid(), f.values))


def warp_srvf(q, g):
    """ Group action (q, g) = (q o g) * sqrt(dg/dt) """
    g = g.resample(q.n)
    grid = efdaconstants.EfdaConstants.grid(q.n)
    return Srvf(numpy.interp(g.values, grid, q.values) * numpy.sqrt(g.derivative()))


def inner_product(q1, q2):
    """ L2 inner product on [0, 1] """
    if q1.n != q2.n:
        raise GridMismatchError((q1.n, q2.n), 'Cannot compare objects sampled on grids')
    return integrate_values(q1.values * q2.values)


def l2_norm(q):
    return float(numpy.sqrt(integrate_values(q.values ** 2)))


def l2_distance(q1, q2):
    """ Fisher-Rao distance between the underlying functions: ||q1 - q2|| in L2 """
    if q1.n != q2.n:
        raise GridMismatchError((q1.n, q2.n), 'Cannot compare objects sampled on grids')
    return float(numpy.sqrt(integrate_values((q1.values - q2.values) ** 2)))
