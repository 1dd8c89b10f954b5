"""
Writers for the plot-ready artifacts of the efda commands. Every file is written atomically
(temporary file in the target directory, then renamed).

Alignment artifacts:
* aligned.csv: t, then one column per aligned function
* warps.csv: t on [0, 1], then one column per warping
* template.csv: t, template function, template SRVF
* summary.csv: t, pointwise mean and standard deviation before and after alignment
* result.json: the alignment result, validated against alignment_result.schema.json
"""
import csv
import io
import json
import os

from efda import efdacollection
from efda import efdaconstants
from efda import efdametrics
from efda import efdavalidator


def _format_table(header, columns):
    output_stream = io.StringIO()
    writer = csv.writer(output_stream, lineterminator='\n')
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([efdacollection.format_float(value) for value in row])
    return output_stream.getvalue()


def write_text(path, content):
    """ Replace path with content, atomically """
    with efdacollection.atomic_open(path) as output_stream:
        output_stream.write(content)


def write_table(path, header, columns):
    """ Write equal-length numeric columns as CSV """
    write_text(path, _format_table(header, columns))


def write_warp_csv(path, warp):
    """ t on [0, 1] and the warping values """
    write_table(path, ['t', 'gamma'], [efdaconstants.EfdaConstants.grid(warp.n), warp.values])


def write_estimate_csv(path, estimate, g=None):
    """ t, the estimated signal and, when known, the true signal """
    header = ['t', 'estimate']
    columns = [estimate.grid(), estimate.values]
    if g is not None:
        header.append('true')
        columns.append(g.values)
    write_table(path, header, columns)


def write_error_curve_csv(path, curve):
    """ n, mean error rows of a consistency experiment """
    write_table(path, ['n', 'error'], list(zip(*curve)) if curve else [[], []])


class AlignmentExporter(object):
    """ Writes the artifacts of one alignment run into an output directory """

    def __init__(self, result, original=None, metrics=None, output_dir='.', return_output=False):
        """
        :param result: <AlignmentResult>
        :param original: <FunctionCollection> the input functions; labels the columns and
            provides the before-alignment summary
        :param metrics: <MetricReport> embedded in result.json; None when not computed
        :param output_dir: <str> target directory, created when missing
        :param return_output: <bool> collect file contents in self.output instead of writing
        """
        self.result = result
        self.original = original
        self.metrics = metrics
        self.output_dir = output_dir
        self.return_output = return_output
        self.output = {}
        self.payload = None
        self.validate()

    def validate(self):
        if self.result is None:
            raise ValueError('No alignment result to export.')
        if self.original is not None and len(self.original) != self.result.n:
            raise ValueError('Got %d input functions for %d aligned functions.' % (
                len(self.original), self.result.n))
        if not self.output_dir:
            raise ValueError("'output_dir' cannot be null or blank.")
        self.payload = self.result.to_dict(metrics=self.metrics)
        self.payload.setdefault('metrics', None)
        efdavalidator.EfdaValidator.validate_alignment_result(self.payload)

    def labels(self):
        if self.original is not None:
            return self.original.labels
        return ['f%d' % (index + 1) for index in range(self.result.n)]

    def write(self, file_name, content):
        if self.return_output:
            self.output[file_name] = content
            return
        os.makedirs(self.output_dir, exist_ok=True)
        write_text(os.path.join(self.output_dir, file_name), content)

    def get_aligned_table(self):
        return _format_table(
            ['t'] + self.labels(),
            [self.result.grid()] + [f.values for f in self.result.aligned])

    def get_warps_table(self):
        return _format_table(
            ['t'] + self.labels(),
            [efdaconstants.EfdaConstants.grid(self.result.warps[0].n)] + [g.values for g in self.result.warps])

    def get_template_table(self):
        return _format_table(
            ['t', 'template', 'template_srvf'],
            [self.result.grid(), self.result.template_function.values, self.result.template.values])

    def get_summary_table(self):
        after_mean, after_std = efdametrics.cross_sectional_summary(self.result.aligned)
        header = ['t', 'aligned_mean', 'aligned_std']
        columns = [self.result.grid(), after_mean.values, after_std.values]
        if self.original is not None:
            before_mean, before_std = efdametrics.cross_sectional_summary(self.original.functions)
            header += ['original_mean', 'original_std']
            columns += [before_mean.values, before_std.values]
        return _format_table(header, columns)

    def process(self):
        """ Write every artifact; returns the collected contents when return_output is set """
        self.write(efdaconstants.EfdaConstants.FILE_ALIGNED, self.get_aligned_table())
        self.write(efdaconstants.EfdaConstants.FILE_WARPS, self.get_warps_table())
        self.write(efdaconstants.EfdaConstants.FILE_TEMPLATE, self.get_template_table())
        self.write(efdaconstants.EfdaConstants.FILE_SUMMARY, self.get_summary_table())
        self.write(efdaconstants.EfdaConstants.FILE_RESULT, json.dumps(self.payload, indent=2) + '\n')
        return self.output if self.return_output else None
