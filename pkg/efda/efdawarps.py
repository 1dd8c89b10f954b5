"""
Geometry of the warping group through the square-root-derivative representation
psi = sqrt(d gamma / dt). Every psi has unit L2 norm, so warpings live on the positive part of
the unit Hilbert sphere, where the Fisher-Rao distance is the great-circle arc length.

Code Example:
from efda import efdawarps
warps = efdawarps.random_warps_identity_mean(20, 0.3, 3, seed=1)
result = efdawarps.karcher_mean_warps(warps)
print(result.converged, efdawarps.fr_warp_distance(result.mean, efdawarps.identity_warp()))
"""
import math

import numpy

from efda import efdaconstants
from efda import efdasrvf


class SphereGeometryError(efdasrvf.EfdaError):
    """ Error raised when a sphere operation has no valid result """
    pass


def _norm(values):
    return math.sqrt(max(efdasrvf.integrate_values(numpy.asarray(values) ** 2), 0.0))


def _inner(values_1, values_2):
    return efdasrvf.integrate_values(numpy.asarray(values_1) * numpy.asarray(values_2))


class SpherePoint(object):
    """
    Unit-norm, strictly positive function psi on the uniform grid of [0, 1]. Values below
    PSI_FLOOR are raised to it and the result is renormalised.
    """

    NEGATIVE_TOL = 1e-12

    def __init__(self, values):
        array = numpy.array(values, dtype=float)
        if array.ndim != 1 or len(array) < efdaconstants.EfdaConstants.MIN_GRID_N:
            raise SphereGeometryError(array.shape, 'Sphere point needs at least 3 samples, got shape')
        if not numpy.all(numpy.isfinite(array)):
            raise SphereGeometryError('', 'Sphere point contains non-finite values')
        if numpy.min(array) < -self.NEGATIVE_TOL:
            raise SphereGeometryError(
                float(numpy.min(array)), 'Sphere point must be positive, minimum value is')
        array = numpy.maximum(array, efdaconstants.EfdaConstants.PSI_FLOOR)
        array = array / _norm(array)
        array.setflags(write=False)
        self._values = array

    @staticmethod
    def identity(n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
        """ psi of the identity warping, the constant function 1 """
        return SpherePoint(numpy.ones(n_points))

    @property
    def values(self):
        return self._values

    @property
    def n(self):
        return len(self._values)

    def norm(self):
        return _norm(self._values)

    def inner(self, other):
        return _inner(self._values, other.values)

    def __repr__(self):
        return 'SpherePoint(n=%d)' % self.n


class TangentVector(object):
    """ Vector in the tangent space of the unit sphere at base; projected on construction """

    def __init__(self, values, base):
        array = numpy.array(values, dtype=float)
        if array.shape != base.values.shape:
            raise efdasrvf.GridMismatchError(
                (len(array), base.n), 'Tangent vector and base point sampled on grids')
        array = array - _inner(array, base.values) * base.values
        array.setflags(write=False)
        self._values = array
        self.base = base

    @property
    def values(self):
        return self._values

    def norm(self):
        return _norm(self._values)

    def scale(self, factor):
        return TangentVector(factor * self._values, self.base)


class WarpMeanResult(object):
    """ Output of the Karcher mean of warpings """

    def __init__(self, mean, converged, iterations, cost_trace, mean_psi):
        self.mean = mean
        self.converged = converged
        self.iterations = iterations
        self.cost_trace = list(cost_trace)
        self.mean_psi = mean_psi

    def __repr__(self):
        return 'WarpMeanResult(converged=%s, iterations=%d, cost=%s)' % (
            self.converged, self.iterations, self.cost_trace[-1] if self.cost_trace else None)


def identity_warp(n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    return efdasrvf.Warping.identity(n_points)


def exponential_warp(a, n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """ gamma(t) = (exp(a t) - 1) / (exp(a) - 1), the identity when a == 0 """
    grid = efdaconstants.EfdaConstants.grid(n_points)
    return efdasrvf.Warping(exponential_warp_values(a, grid))


def exponential_warp_values(a, t):
    """ Exponential warp family evaluated at points t of [0, 1] """
    t = numpy.asarray(t, dtype=float)
    if a == 0:
        return t.copy()
    return numpy.expm1(a * t) / numpy.expm1(a)


def warp_to_sphere(g):
    """ psi = sqrt(d gamma / dt), derivative clamped below at GAMMA_DOT_FLOOR """
    if not isinstance(g, efdasrvf.Warping):
        g = efdasrvf.Warping(g)
    gamma_dot = efdasrvf.derivative(g.values)
    return SpherePoint(numpy.sqrt(numpy.maximum(gamma_dot, efdaconstants.EfdaConstants.GAMMA_DOT_FLOOR)))


def sphere_to_warp(p):
    """ gamma(t) = integral_0^t psi(s)^2 ds, rescaled so that gamma(1) = 1 exactly """
    cumulative = efdasrvf.cumulative_integral(p.values ** 2)
    return efdasrvf.Warping(cumulative / cumulative[-1])


def fr_warp_distance(g1, g2):
    """ Fisher-Rao distance arccos(<psi_1, psi_2>), in [0, pi] """
    g2 = g2.resample(g1.n)
    inner = warp_to_sphere(g1).inner(warp_to_sphere(g2))
    return float(math.acos(min(max(inner, -1.0), 1.0)))


def exp_map(base, v):
    """ Great-circle exponential map on the unit sphere """
    length = v.norm()
    if length < efdaconstants.EfdaConstants.THETA_EPS:
        return base
    if length >= math.pi:
        raise SphereGeometryError(length, 'Exponential map needs a tangent vector shorter than pi, got')
    values = math.cos(length) * base.values + math.sin(length) * v.values / length
    if numpy.min(values) <= 0:
        raise SphereGeometryError(
            float(numpy.min(values)), 'Exponential map leaves the positive orthant, minimum value')
    return SpherePoint(values)


def log_map(base, p):
    """ Shooting vector at base towards p: (theta / sin theta) (p - cos(theta) base) """
    inner = min(max(base.inner(p), -1.0), 1.0)
    theta = math.acos(inner)
    if theta < efdaconstants.EfdaConstants.THETA_EPS:
        return TangentVector(numpy.zeros(base.n), base)
    if math.pi - theta < efdaconstants.EfdaConstants.THETA_EPS:
        raise SphereGeometryError(theta, 'Logarithm map is undefined for antipodal points, angle')
    return TangentVector(theta / math.sin(theta) * (p.values - math.cos(theta) * base.values), base)


def _shooting_vectors(mu, psis):
    vectors = []
    cost = 0.0
    for psi in psis:
        theta = math.acos(min(max(mu.inner(psi), -1.0), 1.0))
        cost += theta ** 2
        if theta < efdaconstants.EfdaConstants.THETA_EPS:
            vectors.append(numpy.zeros(mu.n))
        else:
            vectors.append(theta / math.sin(theta) * (psi.values - math.cos(theta) * mu.values))
    return numpy.array(vectors), cost


def karcher_cost(g, warps):
    """ Sum of squared Fisher-Rao distances from g to each warping """
    return sum(fr_warp_distance(g, other) ** 2 for other in warps)


def karcher_mean_warps(warps, step=efdaconstants.EfdaConstants.WARP_MEAN_STEP,
                       tol=efdaconstants.EfdaConstants.WARP_MEAN_TOL,
                       max_iter=efdaconstants.EfdaConstants.WARP_MEAN_MAX_ITER):
    """
    Karcher mean of warpings under the Fisher-Rao distance by gradient descent on the sphere.
    Starts at the normalised pointwise mean of the psi_i and moves along the average shooting
    vector. A step that would raise the cost is halved until it does not; the cost trace is
    therefore non-increasing.
    :param warps: <list> of Warping, resampled to the grid of the first
    :param step: <float> initial step size
    :param tol: <float> stop when the average shooting vector is shorter than tol
    :param max_iter: <int> iteration limit; the best iterate is returned with converged=False
    :return: WarpMeanResult
    """
    if not warps:
        raise SphereGeometryError('', 'Karcher mean of an empty list of warpings')
    n_points = warps[0].n
    psis = [warp_to_sphere(g.resample(n_points)) for g in warps]
    mu = SpherePoint(numpy.mean([psi.values for psi in psis], axis=0))
    vectors, cost = _shooting_vectors(mu, psis)
    cost_trace = []
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        cost_trace.append(cost)
        v_bar = TangentVector(numpy.mean(vectors, axis=0), mu)
        if v_bar.norm() < tol:
            converged = True
            break
        accepted = False
        while step >= efdaconstants.EfdaConstants.WARP_MEAN_MIN_STEP:
            try:
                candidate = exp_map(mu, v_bar.scale(step))
            except SphereGeometryError:
                step /= 2.0
                continue
            candidate_vectors, candidate_cost = _shooting_vectors(candidate, psis)
            if candidate_cost <= cost:
                mu, vectors, cost = candidate, candidate_vectors, candidate_cost
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
    return WarpMeanResult(sphere_to_warp(mu), converged, iterations, cost_trace, mu)


def invert_warp(g):
    """ Numerical inverse: swap (t, gamma(t)) and re-interpolate on the uniform grid """
    grid = efdaconstants.EfdaConstants.grid(g.n)
    return efdasrvf.Warping.from_values(numpy.interp(grid, g.values, grid))


def compose_warps(g1, g2):
    """ Composition g1 o g2 on the grid of g2 """
    grid = efdaconstants.EfdaConstants.grid(g1.n)
    return efdasrvf.Warping.from_values(numpy.interp(g2.values, grid, g1.values))


def random_warps_identity_mean(n, amplitude, n_basis=3, seed=None,
                               n_points=efdaconstants.EfdaConstants.DEFAULT_GRID_N):
    """
    Random warpings gamma_i whose inverses have sample Karcher mean gamma_id.

    Tangent vectors at psi_id are drawn as sum_j b_j sqrt(2) sin(j pi t), b_j ~ N(0, (amp/j)^2),
    projected onto the tangent space and centred on their sample mean, so the average shooting
    vector from psi_id is zero. They are mapped to the sphere and to warpings, and the inverses
    of those warpings are returned. A draw in which some vector is longer than pi/2 or leaves
    the positive orthant is discarded and the whole batch is redrawn.
    :param n: <int> number of warpings, n >= 2
    :param amplitude: <float> scale of the sine coefficients
    :param n_basis: <int> number of sine terms
    :param seed: <int or list> seed for numpy.random.default_rng
    :param n_points: <int> samples per warping
    """
    if n < 2:
        raise SphereGeometryError(n, 'Need at least 2 random warpings, got')
    rng = numpy.random.default_rng(seed)
    grid = efdaconstants.EfdaConstants.grid(n_points)
    orders = numpy.arange(1, n_basis + 1)
    basis = math.sqrt(2.0) * numpy.sin(numpy.pi * numpy.outer(orders, grid))
    identity = SpherePoint.identity(n_points)
    for _ in range(efdaconstants.EfdaConstants.RANDOM_WARP_MAX_ATTEMPTS):
        coefficients = rng.normal(0.0, 1.0, size=(n, n_basis)) * amplitude / orders
        vectors = coefficients.dot(basis)
        vectors = numpy.array([TangentVector(v, identity).values for v in vectors])
        vectors = vectors - numpy.mean(vectors, axis=0)
        if any(_norm(v) >= math.pi / 2 for v in vectors):
            continue
        try:
            psis = [exp_map(identity, TangentVector(v, identity)) for v in vectors]
        except SphereGeometryError:
            continue
        return [invert_warp(sphere_to_warp(psi)) for psi in psis]
    raise SphereGeometryError(amplitude, 'Could not draw valid random warpings with amplitude')
