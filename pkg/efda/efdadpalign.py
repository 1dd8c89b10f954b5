"""
Elastic alignment of two SRVFs by dynamic programming.

optimal_warp(q1, q2) searches the piecewise-linear warpings whose breakpoints lie on a
grid_n x grid_n lattice of [0, 1] x [0, 1] and whose segments use one of the admissible steps
(a, b), i.e. a segment that advances a lattice cells in t and b lattice cells in gamma(t).
Without an explicit grid_n the lattice refines the input grid: refine - 1 nodes are inserted
between neighbouring samples and q1, q2 are interpolated linearly onto them.
The energy of a path is the sum over its segments of

    integral (q1(t) - q2(gamma(t)) * sqrt(b / a))^2 dt

where each segment integral is a trapezoidal sum over the lattice nodes it crosses. The
minimizing gamma satisfies (q2, gamma) ~ q1.

Code Example:
from efda import efdadpalign, efdasrvf
cfg = efdadpalign.DpConfig()
gamma, energy = efdadpalign.optimal_warp(q1, q2, cfg)
distance = efdadpalign.elastic_distance(q1, q2, cfg)
"""
import math

import numpy

from efda import efdaconstants
from efda import efdasrvf
from efda import efdawarps


class DpConfigError(efdasrvf.EfdaError):
    """ Error raised for an invalid dynamic programming configuration """
    pass


class DpConfig(object):
    """ Settings for the dynamic programming warp search """

    def __init__(self, grid_n=None, slope_set=None,
                 slope_max=efdaconstants.EfdaConstants.DEFAULT_SLOPE_MAX,
                 refine=efdaconstants.EfdaConstants.DEFAULT_LATTICE_REFINE):
        """
        :param grid_n: <int> lattice size; None refines the grid of the inputs
        :param slope_set: <list> coprime (a, b) steps; must contain (1, 1). Defaults to every
            coprime pair with a, b <= slope_max
        :param slope_max: <int> largest a or b when slope_set is not given
        :param refine: <int> lattice nodes per input sample interval when grid_n is None
        """
        if grid_n is not None and grid_n < efdaconstants.EfdaConstants.MIN_DP_GRID_N:
            raise DpConfigError(grid_n, 'DP lattice size must be at least 8, got')
        if int(refine) != refine or refine < 1:
            raise DpConfigError(refine, 'DP lattice refinement must be a positive integer, got')
        if slope_set is None:
            try:
                slope_set = efdaconstants.EfdaConstants.slope_set(slope_max)
            except ValueError as err:
                raise DpConfigError(slope_max, str(err))
        steps = []
        for step in slope_set:
            a, b = int(step[0]), int(step[1])
            if a < 1 or b < 1:
                raise DpConfigError(step, 'DP steps need a, b >= 1, got')
            if math.gcd(a, b) != 1:
                raise DpConfigError(step, 'DP steps must be coprime pairs, got')
            if (a, b) not in steps:
                steps.append((a, b))
        if (1, 1) not in steps:
            raise DpConfigError(slope_set, 'DP slope set must contain (1, 1):')
        self.grid_n = grid_n
        self.refine = int(refine)
        self.slope_set = sorted(steps, key=efdaconstants.EfdaConstants.slope_sort_key)

    def lattice_size(self, n_points):
        """ Lattice size used for inputs sampled at n_points """
        if self.grid_n:
            return self.grid_n
        return self.refine * (n_points - 1) + 1

    def __repr__(self):
        return 'DpConfig(grid_n=%s, refine=%d, slope_set=%s)' % (self.grid_n, self.refine, self.slope_set)


def segment_costs(q1_values, q2_values, steps):
    """
    Energy of every lattice segment, one array per step. For step (a, b) the entry [k, l] is
    the energy of the segment from lattice point (k, l) to (k + a, l + b).
    """
    q1_values = numpy.asarray(q1_values, dtype=float)
    q2_values = numpy.asarray(q2_values, dtype=float)
    size = len(q1_values)
    spacing = 1.0 / (size - 1)
    costs = []
    for a, b in steps:
        n_rows = size - a
        n_cols = size - b
        if n_rows <= 0 or n_cols <= 0:
            costs.append(numpy.full((max(n_rows, 0), max(n_cols, 0)), numpy.inf))
            continue
        slope_factor = math.sqrt(float(b) / a)
        energy = numpy.zeros((n_rows, n_cols))
        for s in range(a + 1):
            position = float(s * b) / a
            base = int(math.floor(position))
            frac = position - base
            q2_at = q2_values[base:base + n_cols]
            if frac > 0:
                q2_at = (1.0 - frac) * q2_at + frac * q2_values[base + 1:base + 1 + n_cols]
            residual = q1_values[s:s + n_rows][:, None] - slope_factor * q2_at[None, :]
            weight = 0.5 if s in (0, a) else 1.0
            energy += weight * residual ** 2
        costs.append(energy * spacing)
    return costs


def path_energy(path, costs, steps):
    """ Energy of a lattice path, accumulated from its first segment in order """
    total = 0.0
    for (i0, j0), (i1, j1) in zip(path[:-1], path[1:]):
        step_index = steps.index((i1 - i0, j1 - j0))
        total = total + costs[step_index][i0, j0]
    return total


def optimal_path(q1_values, q2_values, steps):
    """
    Minimum-energy lattice path from (0, 0) to (M - 1, M - 1).
    Returns (list of lattice points, energy).
    """
    size = len(q1_values)
    if len(q2_values) != size:
        raise efdasrvf.GridMismatchError((size, len(q2_values)), 'Cannot align SRVFs sampled on grids')
    costs = segment_costs(q1_values, q2_values, steps)
    accumulated = numpy.full((size, size), numpy.inf)
    choice = numpy.full((size, size), -1, dtype=int)
    accumulated[0, 0] = 0.0
    for i in range(1, size):
        best = numpy.full(size, numpy.inf)
        best_step = numpy.full(size, -1, dtype=int)
        for step_index, (a, b) in enumerate(steps):
            if a > i or b >= size:
                continue
            prev_row = i - a
            candidate = accumulated[prev_row, :size - b] + costs[step_index][prev_row, :]
            current = best[b:]
            better = candidate < current
            current[better] = candidate[better]
            best_step[b:][better] = step_index
        accumulated[i] = best
        choice[i] = best_step

    i, j = size - 1, size - 1
    if not numpy.isfinite(accumulated[i, j]):
        raise efdasrvf.NumericalFailureError(steps, 'No admissible lattice path for steps')
    path = [(i, j)]
    while (i, j) != (0, 0):
        step_index = choice[i, j]
        if step_index < 0:
            raise efdasrvf.NumericalFailureError((i, j), 'Broken DP traceback at lattice point')
        a, b = steps[step_index]
        i, j = i - a, j - b
        path.append((i, j))
    path.reverse()
    return path, float(accumulated[size - 1, size - 1])


def path_to_warp(path, lattice_size, n_points):
    """ Piecewise-linear warping through the lattice path, sampled at n_points """
    points = numpy.array(path, dtype=float) / (lattice_size - 1)
    return efdasrvf.Warping.from_values(
        numpy.interp(efdaconstants.EfdaConstants.grid(n_points), points[:, 0], points[:, 1]))


def optimal_warp(q1, q2, cfg=None):
    """
    Warping gamma minimizing ||q1 - (q2, gamma)||^2 over lattice paths.
    Returns (Warping sampled like q1, achieved energy).
    """
    cfg = cfg or DpConfig()
    if q1.n != q2.n:
        raise efdasrvf.GridMismatchError((q1.n, q2.n), 'Cannot align SRVFs sampled on grids')
    size = cfg.lattice_size(q1.n)
    path, energy = optimal_path(
        q1.resample(size).values, q2.resample(size).values, cfg.slope_set)
    return path_to_warp(path, size, q1.n), energy


def elastic_match(q1, q2, cfg=None):
    """
    Elastic distance plus the warping that aligns q2 to q1. Both matching directions are
    solved and the smaller energy wins; when the q1 -> q2 direction wins its warping is
    inverted so the reported gamma always satisfies (q2, gamma) ~ q1.
    Returns (distance, Warping, swapped).
    """
    cfg = cfg or DpConfig()
    gamma_12, energy_12 = optimal_warp(q1, q2, cfg)
    gamma_21, energy_21 = optimal_warp(q2, q1, cfg)
    if energy_21 < energy_12:
        return math.sqrt(max(energy_21, 0.0)), efdawarps.invert_warp(gamma_21), True
    return math.sqrt(max(energy_12, 0.0)), gamma_12, False


def elastic_distance(q1, q2, cfg=None):
    """ Elastic distance on the quotient space, symmetrized over both matching directions """
    cfg = cfg or DpConfig()
    _, energy_12 = optimal_warp(q1, q2, cfg)
    _, energy_21 = optimal_warp(q2, q1, cfg)
    return math.sqrt(max(min(energy_12, energy_21), 0.0))


def distance_matrix(srvfs, cfg=None):
    """ Symmetric matrix of pairwise elastic distances """
    cfg = cfg or DpConfig()
    count = len(srvfs)
    distances = numpy.zeros((count, count))
    for i in range(count):
        for j in range(i + 1, count):
            distances[i, j] = distances[j, i] = elastic_distance(srvfs[i], srvfs[j], cfg)
    return distances
