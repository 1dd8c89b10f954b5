"""
Command-line interface of the efda package.

Commands:
  align      align every function of a CSV and write the alignment artifacts
  distance   elastic distance between two functions of a CSV
  simulate   write a simulated dataset as CSV
  estimate   estimate a signal from observations or run the consistency experiment
  metrics    alignment criteria for an original/aligned CSV pair

Exit codes: 0 success, 2 usage or input error, 3 numerical failure.

Code Example:
efda simulate sim4 --seed 7 --out data
efda align data/sim4.csv --out sim4-aligned -v
"""
import argparse
import os
import sys

from efda import efdacollection
from efda import efdaconstants
from efda import efdadatasets
from efda import efdadpalign
from efda import efdaestimation
from efda import efdaexport
from efda import efdamean
from efda import efdametrics
from efda import efdasrvf
from efda import efdavalidator
from efda import efdawarps


USAGE_ERRORS = (
    efdacollection.CsvParseError,
    efdadpalign.DpConfigError,
    efdaestimation.ObservationModelError,
    efdadatasets.UnknownDatasetError,
    efdavalidator.ArtifactValidationError,
    efdamean.EmptyCollectionError,
    efdasrvf.GridMismatchError,
    efdasrvf.InvalidFunctionError,
    efdasrvf.InvalidWarpingError,
)
NUMERICAL_ERRORS = (
    efdasrvf.NumericalFailureError,
    efdawarps.SphereGeometryError,
    efdametrics.MetricDenominatorError,
)


class CliUsageError(efdasrvf.EfdaError):
    """ Error raised for invalid command arguments that argparse cannot detect """
    pass


class CliConfig(object):
    """ Settings shared by the commands, validated against a JSON schema """

    def __init__(self, grid_n=None, dp_slope_max=efdaconstants.EfdaConstants.DEFAULT_SLOPE_MAX,
                 dp_refine=efdaconstants.EfdaConstants.DEFAULT_LATTICE_REFINE,
                 max_iter=efdaconstants.EfdaConstants.ORBIT_MEAN_MAX_ITER,
                 tol=efdaconstants.EfdaConstants.ORBIT_MEAN_TOL, seed=0, output_dir='.',
                 verbosity=0, workers=1):
        self.grid_n = grid_n
        self.dp_slope_max = dp_slope_max
        self.dp_refine = dp_refine
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed
        self.output_dir = output_dir
        self.verbosity = verbosity
        self.workers = workers
        efdavalidator.EfdaValidator.validate_cli_config(self.to_dict())

    @staticmethod
    def from_args(args):
        return CliConfig(
            grid_n=args.grid_n, dp_slope_max=args.slope_max, dp_refine=args.refine,
            max_iter=args.max_iter, tol=args.tol,
            seed=args.seed, output_dir=args.out, verbosity=args.verbosity, workers=args.workers)

    def to_dict(self):
        return {
            'grid_n': self.grid_n,
            'dp_slope_max': self.dp_slope_max,
            'dp_refine': self.dp_refine,
            'max_iter': self.max_iter,
            'tol': self.tol,
            'seed': self.seed,
            'output_dir': self.output_dir,
            'verbosity': self.verbosity,
        }

    def dp_config(self):
        return efdadpalign.DpConfig(grid_n=self.grid_n, slope_max=self.dp_slope_max, refine=self.dp_refine)

    def aligner(self):
        return efdamean.EfdaAligner(
            self.dp_config(), max_iter=self.max_iter, tol=self.tol,
            verbosity=self.verbosity, workers=self.workers)

    def output_path(self, file_name):
        os.makedirs(self.output_dir, exist_ok=True)
        return os.path.join(self.output_dir, file_name)


def format_metrics(metrics):
    if metrics is None:
        return 'ls=nan pc=nan sls=nan'
    return str(metrics)


def cmd_align(args, config):
    collection = efdacollection.read_csv(args.input)
    if args.derivative:
        collection = collection.with_functions(
            [efdasrvf.differentiate(f) for f in collection.functions])
    aligner = config.aligner()
    result = aligner.align_all(collection.functions)
    metrics = None
    if len(collection) > 1:
        try:
            metrics = efdametrics.evaluate(collection.functions, result.aligned)
        except efdametrics.MetricDenominatorError as err:
            sys.stderr.write('WARNING: %s\n' % err)
    efdaexport.AlignmentExporter(
        result, original=collection, metrics=metrics, output_dir=config.output_dir).process()
    print(format_metrics(metrics))
    print('converged=%s' % str(result.converged).lower())
    return efdaconstants.EfdaConstants.EXIT_OK


def _function_index(collection, index):
    if not 0 <= index < len(collection):
        raise CliUsageError(index, 'Function index out of range 0..%d:' % (len(collection) - 1))
    return collection[index]


def cmd_distance(args, config):
    collection = efdacollection.read_csv(args.input)
    f_i = _function_index(collection, args.i)
    f_j = _function_index(collection, args.j)
    distance, warp, _ = efdadpalign.elastic_match(
        efdasrvf.to_srvf(f_i), efdasrvf.to_srvf(f_j), config.dp_config())
    efdaexport.write_warp_csv(config.output_path(efdaconstants.EfdaConstants.FILE_DISTANCE_WARP), warp)
    print('%.10g' % distance)
    return efdaconstants.EfdaConstants.EXIT_OK


def cmd_simulate(args, config):
    collection = efdadatasets.generate(args.name, seed=config.seed, n_points=args.n_points, n=args.n)
    path = config.output_path('%s.csv' % args.name)
    efdacollection.write_csv(collection, path)
    print(path)
    return efdaconstants.EfdaConstants.EXIT_OK


def _parse_sizes(text):
    try:
        sizes = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise CliUsageError(text, 'Sample sizes must be comma-separated integers, got')
    if not sizes:
        raise CliUsageError(text, 'No sample sizes in')
    return sizes


def _build_model(args, config):
    g = efdaestimation.consistency_signal(args.n_points)
    if args.zero_corruption:
        return efdaestimation.ObservationModel.zero_corruption(g, seed=config.seed)
    return efdaestimation.ObservationModel(
        g, c_mean=args.c_mean, e_mean=args.e_mean,
        scale_law=efdaestimation.exponential_law(args.c_mean),
        noise_law=efdaestimation.normal_law(args.e_mean, args.noise_sd),
        warp_amplitude=args.warp_amplitude, seed=config.seed)


def cmd_estimate(args, config):
    if args.c_mean == 0:
        raise efdaestimation.ObservationModelError(args.c_mean, 'Mean scale must be non-zero, got')
    if args.sizes:
        model = _build_model(args, config)
        curve = efdaestimation.consistency_experiment(
            model, _parse_sizes(args.sizes), config.dp_config(), repeats=args.repeats,
            verbosity=config.verbosity, workers=config.workers)
        efdaexport.write_error_curve_csv(
            config.output_path(efdaconstants.EfdaConstants.FILE_ERROR_CURVE), curve)
        for n, error in curve:
            print('n=%d error=%.6g' % (n, error))
        if len(curve) > 1:
            print('spearman=%.6g' % efdaestimation.error_trend(curve))
        return efdaconstants.EfdaConstants.EXIT_OK

    g = None
    if args.input:
        functions = efdacollection.read_csv(args.input).functions
    elif args.model:
        model = _build_model(args, config)
        functions = efdaestimation.simulate_observations(model, args.n)
        g = model.g
    else:
        raise CliUsageError('', 'estimate needs an input CSV, --model or --sizes')
    report = efdaestimation.estimate_signal(
        functions, args.c_mean, args.e_mean, g=g, aligner=config.aligner())
    efdaexport.write_estimate_csv(
        config.output_path(efdaconstants.EfdaConstants.FILE_ESTIMATE), report.estimate, g)
    print('n=%d error=%s' % (report.n, 'nan' if report.error is None else '%.6g' % report.error))
    return efdaconstants.EfdaConstants.EXIT_OK


def cmd_metrics(args, config):
    original = efdacollection.read_csv(args.original)
    aligned = efdacollection.read_csv(args.aligned)
    print(format_metrics(efdametrics.evaluate(original.functions, aligned.functions)))
    return efdaconstants.EfdaConstants.EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--grid-n', type=int, default=None,
        help='DP lattice size (default: the input grid refined --refine times)')
    common.add_argument(
        '--slope-max', type=int, default=efdaconstants.EfdaConstants.DEFAULT_SLOPE_MAX,
        help='Largest DP step in either direction (default: %(default)s)')
    common.add_argument(
        '--refine', type=int, default=efdaconstants.EfdaConstants.DEFAULT_LATTICE_REFINE,
        help='DP lattice nodes per sample interval when --grid-n is not given (default: %(default)s)')
    common.add_argument(
        '--max-iter', type=int, default=efdaconstants.EfdaConstants.ORBIT_MEAN_MAX_ITER,
        help='Iteration limit of the orbit mean (default: %(default)s)')
    common.add_argument(
        '--tol', type=float, default=efdaconstants.EfdaConstants.ORBIT_MEAN_TOL,
        help='Relative stopping tolerance of the orbit mean (default: %(default)s)')
    common.add_argument('--seed', type=int, default=0, help='Random seed (default: %(default)s)')
    common.add_argument('--out', type=str, default='.', help='Output directory (default: %(default)s)')
    common.add_argument('--workers', type=int, default=1, help='Threads for DP alignments (default: 1)')
    common.add_argument('-v', '--verbosity', action='count', default=0, help='Raise log verbosity')

    parser = argparse.ArgumentParser(
        prog='efda', description='Elastic alignment of functional data with square-root velocity functions.')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    align = subparsers.add_parser('align', parents=[common], help='Align every function of a CSV')
    align.add_argument('input', help='CSV with a time column and one column per function')
    align.add_argument('--derivative', action='store_true', help='Align the first derivatives')
    align.set_defaults(handler=cmd_align)

    distance = subparsers.add_parser('distance', parents=[common], help='Elastic distance of two functions')
    distance.add_argument('input', help='CSV with a time column and one column per function')
    distance.add_argument('i', type=int, help='0-based index of the first function column')
    distance.add_argument('j', type=int, help='0-based index of the second function column')
    distance.set_defaults(handler=cmd_distance)

    simulate = subparsers.add_parser('simulate', parents=[common], help='Write a simulated dataset')
    simulate.add_argument('name', choices=efdaconstants.EfdaConstants.DATASETS)
    simulate.add_argument('--n', type=int, default=None, help='Number of functions (consistency only)')
    simulate.add_argument(
        '--n-points', type=int, default=efdaconstants.EfdaConstants.DEFAULT_GRID_N,
        help='Samples per function (default: %(default)s)')
    simulate.set_defaults(handler=cmd_simulate)

    estimate = subparsers.add_parser('estimate', parents=[common], help='Estimate a signal')
    estimate.add_argument('input', nargs='?', default=None, help='CSV of observations')
    estimate.add_argument('--c-mean', type=float, required=True, help='Population mean of the scales')
    estimate.add_argument('--e-mean', type=float, required=True, help='Population mean of the translations')
    estimate.add_argument('--model', action='store_true', help='Simulate observations of sin(5 pi t)')
    estimate.add_argument('--sizes', type=str, default=None, help='Comma-separated sample sizes')
    estimate.add_argument('--repeats', type=int, default=1, help='Trials per sample size (default: 1)')
    estimate.add_argument(
        '--n', type=int, default=efdaconstants.EfdaConstants.CONSISTENCY_N,
        help='Sample size with --model (default: %(default)s)')
    estimate.add_argument(
        '--n-points', type=int, default=efdaconstants.EfdaConstants.DEFAULT_GRID_N,
        help='Samples of the simulated signal (default: %(default)s)')
    estimate.add_argument('--noise-sd', type=float, default=1.0, help='Translation standard deviation')
    estimate.add_argument(
        '--warp-amplitude', type=float, default=efdaconstants.EfdaConstants.CONSISTENCY_WARP_AMPLITUDE,
        help='Amplitude of the random warpings (default: %(default)s)')
    estimate.add_argument(
        '--zero-corruption', action='store_true', help='No scaling, translation or warping')
    estimate.set_defaults(handler=cmd_estimate)

    metrics = subparsers.add_parser('metrics', parents=[common], help='Alignment criteria')
    metrics.add_argument('original', help='CSV of the original functions')
    metrics.add_argument('aligned', help='CSV of the aligned functions')
    metrics.set_defaults(handler=cmd_metrics)
    return parser


def main(argv=None):
    """ Run one command; returns the process exit code """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else efdaconstants.EfdaConstants.EXIT_USAGE

    try:
        config = CliConfig.from_args(args)
        return args.handler(args, config)
    except USAGE_ERRORS + (CliUsageError, OSError, ValueError) as err:
        sys.stderr.write('ERROR: %s\n' % err)
        return efdaconstants.EfdaConstants.EXIT_USAGE
    except NUMERICAL_ERRORS as err:
        sys.stderr.write('ERROR: %s\n' % err)
        return efdaconstants.EfdaConstants.EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
