"""
Karcher mean of SRVF orbits, the center of an orbit and the complete alignment of a collection
of functions.

Code Example:
from efda import efdamean, efdadatasets
collection = efdadatasets.sim4_wave(seed=7)
aligner = efdamean.EfdaAligner(verbosity=1)
result = aligner.align_all(collection.functions)
print(result.get_summary())
"""
import sys
from concurrent import futures
from datetime import datetime

import numpy

from efda import efdaconstants
from efda import efdadpalign
from efda import efdasrvf
from efda import efdawarps


class EmptyCollectionError(efdasrvf.EfdaError):
    """ Error raised when a mean or an alignment is requested for no functions """
    pass


class OrbitMeanResult(object):
    """ Output of the Karcher mean of orbits """

    def __init__(self, template, cost_trace, converged, iterations, warps, aligned_srvfs):
        self.template = template
        self.cost_trace = list(cost_trace)
        self.converged = converged
        self.iterations = iterations
        self.warps = list(warps)
        self.aligned_srvfs = list(aligned_srvfs)

    def __repr__(self):
        return 'OrbitMeanResult(converged=%s, iterations=%d, cost=%s)' % (
            self.converged, self.iterations, self.cost_trace[-1] if self.cost_trace else None)


class AlignmentResult(object):
    """ Template, warpings and aligned functions produced by the complete alignment """

    def __init__(self, template, template_function, warps, aligned, aligned_srvfs,
                 cost_trace, converged=True, iterations=0, mean_warp_distance=0.0):
        if not (len(warps) == len(aligned) == len(aligned_srvfs)):
            raise efdasrvf.NumericalFailureError(
                (len(warps), len(aligned), len(aligned_srvfs)),
                'Alignment result needs one warping, function and SRVF per input, got')
        self.template = template
        self.template_function = template_function
        self.warps = list(warps)
        self.aligned = list(aligned)
        self.aligned_srvfs = list(aligned_srvfs)
        self.cost_trace = list(cost_trace)
        self.converged = converged
        self.iterations = iterations
        self.mean_warp_distance = mean_warp_distance

    @property
    def n(self):
        return len(self.warps)

    def grid(self):
        """ Sample locations on the original interval """
        return self.template_function.grid()

    def final_cost(self):
        """ Karcher cost sum_i ||mu - q~_i||^2 of the returned template and aligned SRVFs """
        return float(sum(efdasrvf.l2_distance(self.template, q) ** 2 for q in self.aligned_srvfs))

    def amplitude_variance(self):
        """ Final Karcher cost divided by n """
        return self.final_cost() / self.n

    def phase_variance(self):
        """ Mean squared Fisher-Rao distance from the warpings to the identity """
        identity = efdawarps.identity_warp(self.warps[0].n)
        return float(numpy.mean([
            efdawarps.fr_warp_distance(g, identity) ** 2 for g in self.warps]))

    def get_summary(self):
        """ One-line text summary of the alignment """
        return 'Aligned %d functions: converged=%s, iterations=%d, orbit mean cost=%s, ' \
               'final cost=%.6g, amplitude variance=%.6g, phase variance=%.6g' % (
                   self.n, self.converged, self.iterations,
                   '%.6g' % self.cost_trace[-1] if self.cost_trace else None,
                   self.final_cost(), self.amplitude_variance(), self.phase_variance())

    def to_dict(self, metrics=None):
        """
        JSON-ready payload of the result
        :param metrics: <MetricReport> optional quality metrics to embed
        """
        payload = {
            'grid': self.grid().tolist(),
            'template': self.template_function.values.tolist(),
            'template_srvf': self.template.values.tolist(),
            'warps': [g.values.tolist() for g in self.warps],
            'aligned': [f.values.tolist() for f in self.aligned],
            'cost_trace': [float(cost) for cost in self.cost_trace],
            'converged': bool(self.converged),
            'iterations': int(self.iterations),
            'amplitude_variance': self.amplitude_variance(),
            'phase_variance': self.phase_variance(),
        }
        if metrics is not None:
            payload['metrics'] = metrics.to_dict()
        return payload

    def __repr__(self):
        return 'AlignmentResult(n=%d, converged=%s)' % (self.n, self.converged)


class EfdaAligner(object):
    """ Runs the orbit mean, orbit centering and full alignment with shared settings """

    def __init__(self, cfg=None, max_iter=efdaconstants.EfdaConstants.ORBIT_MEAN_MAX_ITER,
                 tol=efdaconstants.EfdaConstants.ORBIT_MEAN_TOL, verbosity=0, workers=1):
        """
        :param cfg: <DpConfig> dynamic programming settings
        :param max_iter: <int> iteration limit of the orbit mean
        :param tol: <float> relative increment below which the orbit mean stops
        :param verbosity: <int> 0 silent, 1 phases, 2 iterations, 3 per-function energies
        :param workers: <int> threads used for the per-function DP alignments
        """
        self.cfg = cfg or efdadpalign.DpConfig()
        self.max_iter = max_iter
        self.tol = tol
        self.verbosity = verbosity
        self.workers = max(int(workers), 1)

    def log(self, *args):
        """ Output log information """
        sys.stderr.write('[' + str(datetime.now()) + '] ')
        for arg in args:
            sys.stderr.write(str(arg))
            sys.stderr.write(' ')
        sys.stderr.write('\n')
        sys.stderr.flush()

    def log_settings(self):
        """ Output log of the object settings """
        self.log("**** EFDA ALIGNMENT SETTINGS ****",
                 "Slope set:", self.cfg.slope_set,
                 ", Lattice size:", self.cfg.grid_n or ('input grid x %d' % self.cfg.refine),
                 ", Max iterations:", self.max_iter,
                 ", Tolerance:", self.tol,
                 ", Workers:", self.workers,
                 ", Verbosity:", self.verbosity)

    def _align_to(self, mu, qs):
        """ Optimal warping of every q_i towards mu, with its energy """
        def align_one(q):
            return efdadpalign.optimal_warp(mu, q, self.cfg)
        if self.workers > 1 and len(qs) > 1:
            with futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
                matches = list(executor.map(align_one, qs))
        else:
            matches = [align_one(q) for q in qs]
        if self.verbosity >= 3:
            for index, (_, energy) in enumerate(matches):
                self.log('  DP energy of function', index, ':', '%.6g' % energy)
        return [gamma for gamma, _ in matches]

    @staticmethod
    def _check_srvfs(qs):
        if not qs:
            raise EmptyCollectionError('', 'Cannot compute the mean of an empty list of SRVFs')
        for q in qs:
            if not isinstance(q, efdasrvf.Srvf):
                raise TypeError('Expected Srvf, got "%s"' % str(type(q)))
        efdasrvf.check_common_grid(qs)

    def karcher_mean_orbits(self, qs):
        """
        Karcher mean of the orbits [q_i]. Starts at the q_j closest to the pointwise mean
        (smallest index on ties), then alternates DP alignment of every q_i to the current mean
        with a pointwise average of the aligned SRVFs. Stops when the update is shorter than
        tol * max(||mu||, 1). If an update raises the cost, the previous iterate is kept and
        the result is flagged as not converged.
        :param qs: <list> of Srvf on a common grid
        :return: OrbitMeanResult
        """
        self._check_srvfs(qs)
        n_points = qs[0].n
        if len(qs) == 1:
            return OrbitMeanResult(qs[0], [0.0], True, 0, [efdawarps.identity_warp(n_points)], [qs[0]])

        pointwise_mean = efdasrvf.Srvf.mean(qs)
        start = int(numpy.argmin([efdasrvf.l2_distance(q, pointwise_mean) for q in qs]))
        mu = qs[start]
        if self.verbosity >= 1:
            self.log('Orbit mean of %d SRVFs, starting at function %d' % (len(qs), start))

        best = None
        cost_trace = []
        converged = False
        iterations = 0
        for iterations in range(1, self.max_iter + 1):
            warps = self._align_to(mu, qs)
            aligned = [efdasrvf.warp_srvf(q, g) for q, g in zip(qs, warps)]
            cost = float(sum(efdasrvf.l2_distance(mu, q) ** 2 for q in aligned))
            if best is not None and cost > best[1]:
                if self.verbosity >= 1:
                    self.log('Orbit mean cost rose from %.6g to %.6g, keeping iteration %d' % (
                        best[1], cost, iterations - 1))
                break
            best = (mu, cost, warps, aligned)
            cost_trace.append(cost)
            new_mu = efdasrvf.Srvf.mean(aligned)
            increment = efdasrvf.l2_distance(new_mu, mu)
            if self.verbosity >= 2:
                self.log('  Iteration %d: cost=%.6g, increment=%.6g' % (iterations, cost, increment))
            if increment < self.tol * max(mu.norm(), 1.0):
                converged = True
                break
            mu = new_mu

        mu, _, warps, aligned = best
        return OrbitMeanResult(mu, cost_trace, converged, iterations, warps, aligned)

    def center_of_orbit(self, mu, qs):
        """
        Element of the orbit of mu whose optimal warpings to the q_i have Karcher mean gamma_id:
        (mu, inverse of the Karcher mean of the warpings aligning each q_i to mu)
        """
        self._check_srvfs(qs)
        warps = self._align_to(mu, qs)
        warp_mean = efdawarps.karcher_mean_warps(warps)
        if self.verbosity >= 1:
            self.log('Centering template: distance of mean warping to identity %.6g' % (
                efdawarps.fr_warp_distance(warp_mean.mean, efdawarps.identity_warp(mu.n))))
        return efdasrvf.warp_srvf(mu, efdawarps.invert_warp(warp_mean.mean))

    def align_all(self, fs):
        """
        Complete alignment of a collection of sampled functions
        :param fs: <list> of SampledFunction on a common grid and interval
        :return: AlignmentResult
        """
        if not fs:
            raise EmptyCollectionError('', 'Cannot align an empty list of functions')
        for f in fs:
            if not isinstance(f, efdasrvf.SampledFunction):
                raise TypeError('Expected SampledFunction, got "%s"' % str(type(f)))
        efdasrvf.check_common_grid(fs)
        intervals = set(f.interval for f in fs)
        if len(intervals) != 1:
            raise efdasrvf.GridMismatchError(sorted(intervals), 'Functions are defined on different intervals:')
        t0, t1 = fs[0].interval
        f0 = float(numpy.mean([f.values[0] for f in fs]))
        qs = [efdasrvf.to_srvf(f) for f in fs]

        if self.verbosity:
            self.log_settings()
        if len(fs) == 1:
            return AlignmentResult(
                qs[0], efdasrvf.from_srvf(qs[0], f0, t0, t1), [efdawarps.identity_warp(fs[0].n)],
                [fs[0]], [qs[0]], [0.0], converged=True, iterations=0)

        orbit = self.karcher_mean_orbits(qs)
        mu = self.center_of_orbit(orbit.template, qs)

        if self.verbosity >= 1:
            self.log('Final alignment of %d functions to the centred template' % len(qs))
        warps = self._align_to(mu, qs)
        identity = efdawarps.identity_warp(mu.n)
        mean_distance = 0.0
        for centering_pass in range(1, efdaconstants.EfdaConstants.CENTERING_MAX_PASSES + 1):
            warp_mean = efdawarps.karcher_mean_warps(warps).mean
            mean_distance = efdawarps.fr_warp_distance(warp_mean, identity)
            if self.verbosity >= 2:
                self.log('  Centering pass %d: mean warping distance %.6g' % (centering_pass, mean_distance))
            if mean_distance <= efdaconstants.EfdaConstants.CENTERING_TOL:
                break
            inverse = efdawarps.invert_warp(warp_mean)
            warps = [efdawarps.compose_warps(g, inverse) for g in warps]
            mu = efdasrvf.warp_srvf(mu, inverse)

        aligned_srvfs = [efdasrvf.warp_srvf(q, g) for q, g in zip(qs, warps)]
        aligned = [efdasrvf.warp_function(f, g) for f, g in zip(fs, warps)]
        result = AlignmentResult(
            mu, efdasrvf.from_srvf(mu, f0, t0, t1), warps, aligned, aligned_srvfs,
            orbit.cost_trace, converged=orbit.converged, iterations=orbit.iterations,
            mean_warp_distance=mean_distance)
        if self.verbosity >= 1:
            self.log(result.get_summary())
        return result


def karcher_mean_orbits(qs, cfg=None, **kwargs):
    """ Karcher mean of SRVF orbits; see EfdaAligner.karcher_mean_orbits """
    return EfdaAligner(cfg, **kwargs).karcher_mean_orbits(qs)


def center_of_orbit(mu, qs, cfg=None, **kwargs):
    return EfdaAligner(cfg, **kwargs).center_of_orbit(mu, qs)


def align_all(fs, cfg=None, **kwargs):
    """ Complete alignment of sampled functions; see EfdaAligner.align_all """
    return EfdaAligner(cfg, **kwargs).align_all(fs)
