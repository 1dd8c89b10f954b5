"""
Classes to manage a collection of sampled functions and its CSV form.

CSV layout: a header row ``t,f1,f2,...``, then one row per time sample. The first column holds
strictly increasing, uniformly spaced times; every other column holds one function.

Code Example:
from efda import efdacollection
collection = efdacollection.read_csv('sim4.csv')
print(len(collection), collection.interval)
efdacollection.write_csv(collection, 'copy.csv')
"""
import contextlib
import csv
import math
import os
import sys
import tempfile

import numpy

from efda import efdaconstants
from efda import efdasrvf


class CsvParseError(efdasrvf.EfdaError):
    """ Error raised when a CSV file cannot be read as a function collection """

    def __init__(self, line_number, message, path=''):
        efdasrvf.EfdaError.__init__(self, expression=line_number, message=message)
        self.line_number = line_number
        self.path = path

    def __str__(self):
        location = '%s, line %s' % (self.path, self.line_number) if self.path else 'line %s' % self.line_number
        return '%s: %s' % (location, self.message)


class FunctionCollection(object):
    """ Labelled functions sharing one grid and one interval """

    TIME_COLUMN = 't'

    def __init__(self, functions=None, labels=None):
        """
        :param functions: <SampledFunction> or <list> of them
        :param labels: <list> of column labels; defaults to f1, f2, ...
        """
        self._functions = []
        self._labels = []
        if functions:
            self.append(functions, labels=labels)

    def __iter__(self):
        return iter(self._functions)

    def __len__(self):
        return len(self._functions)

    def __getitem__(self, index):
        return self._functions[index]

    def __add__(self, other):
        return FunctionCollection(self._functions + list(other.functions), self._labels + list(other.labels))

    def __eq__(self, other):
        if not isinstance(other, FunctionCollection) or len(self) != len(other):
            return False
        return self._labels == other.labels and all(
            f == g for f, g in zip(self._functions, other.functions))

    def __ne__(self, other):
        return not self.__eq__(other)

    def append(self, functions, labels=None):
        """
        Add one function or a list of functions to this collection
        :param functions: <SampledFunction>, <list> or <FunctionCollection>
        :param labels: <str> or <list> of labels matching functions
        """
        if isinstance(functions, efdasrvf.SampledFunction):
            functions = [functions]
            labels = [labels] if labels is not None else None
        if isinstance(functions, FunctionCollection):
            labels = labels or functions.labels
            functions = functions.functions
        if not isinstance(functions, (list, tuple)):
            raise TypeError("Cannot append functions of type '%s'" % type(functions))
        if labels is not None and len(labels) != len(functions):
            raise ValueError('Got %d labels for %d functions' % (len(labels), len(functions)))
        for index, function in enumerate(functions):
            if not isinstance(function, efdasrvf.SampledFunction):
                raise TypeError("Cannot append function of type '%s'" % type(function))
            if self._functions:
                reference = self._functions[0]
                if function.n != reference.n:
                    raise efdasrvf.GridMismatchError(
                        (reference.n, function.n), 'Collection functions must share one grid, got sizes')
                if function.interval != reference.interval:
                    raise efdasrvf.GridMismatchError(
                        (reference.interval, function.interval), 'Collection functions must share one interval, got')
            self._functions.append(function)
            self._labels.append(labels[index] if labels is not None else 'f%d' % len(self._functions))

    @property
    def functions(self):
        return list(self._functions)

    @property
    def labels(self):
        return list(self._labels)

    @property
    def interval(self):
        if not self._functions:
            return None
        return self._functions[0].interval

    @property
    def n_points(self):
        if not self._functions:
            return 0
        return self._functions[0].n

    def grid(self):
        """ Sample times on the collection interval """
        return self._functions[0].grid()

    def to_matrix(self):
        """ Function values as an (n functions) x (n points) array """
        return numpy.array([f.values for f in self._functions])

    def srvfs(self):
        return [efdasrvf.to_srvf(f) for f in self._functions]

    def with_functions(self, functions):
        """ New collection with the same labels and the given functions """
        return FunctionCollection(list(functions), self._labels)

    def display_as_csv(self):
        """ Display the collection as CSV """
        _write_rows(sys.stdout, self)

    @staticmethod
    def load_from_file(path):
        return read_csv(path)

    def __repr__(self):
        return 'FunctionCollection(n=%d, n_points=%d, interval=%s)' % (
            len(self), self.n_points, self.interval)


@contextlib.contextmanager
def atomic_open(path):
    """ Text file handle whose content replaces path only when the block completes """
    directory = os.path.dirname(os.path.abspath(path))
    handle = tempfile.NamedTemporaryFile(
        mode='w', dir=directory, prefix='.efda-', suffix='.tmp', delete=False,
        newline='', encoding='utf-8')
    try:
        with handle:
            yield handle
        os.replace(handle.name, path)
    except BaseException:
        if os.path.exists(handle.name):
            os.remove(handle.name)
        raise


def format_float(value):
    return efdaconstants.EfdaConstants.CSV_FLOAT_FORMAT % value


def _write_rows(output_stream, collection):
    writer = csv.writer(output_stream, lineterminator='\n')
    writer.writerow([FunctionCollection.TIME_COLUMN] + collection.labels)
    matrix = collection.to_matrix()
    for index, time in enumerate(collection.grid()):
        writer.writerow([format_float(time)] + [format_float(value) for value in matrix[:, index]])


def write_csv(collection, path):
    """ Write a collection as CSV, atomically """
    if not len(collection):
        raise ValueError('Cannot write an empty function collection to "%s"' % path)
    with atomic_open(path) as output_stream:
        _write_rows(output_stream, collection)


def _parse_float(cell, line_number, path):
    try:
        value = float(cell)
    except ValueError:
        raise CsvParseError(line_number, 'Non-numeric cell "%s"' % cell, path)
    if not math.isfinite(value):
        raise CsvParseError(line_number, 'Non-finite cell "%s"' % cell, path)
    return value


def read_csv(path):
    """
    Read a function collection from CSV
    :param path: <str> file path
    :return: FunctionCollection
    """
    times = []
    columns = None
    line_numbers = []
    with open(path, newline='', encoding='utf-8') as input_file:
        reader = csv.reader(input_file)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvParseError(1, 'Empty file', path)
        header = [cell.strip() for cell in header]
        if len(header) < 2:
            raise CsvParseError(1, 'Header needs a time column and at least one function column', path)
        columns = [[] for _ in header[1:]]
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise CsvParseError(
                    reader.line_num, 'Ragged row with %d cells, expected %d' % (len(row), len(header)), path)
            times.append(_parse_float(row[0], reader.line_num, path))
            for column, cell in zip(columns, row[1:]):
                column.append(_parse_float(cell, reader.line_num, path))
            line_numbers.append(reader.line_num)

    if not times:
        raise CsvParseError(1, 'File has no data rows', path)
    if len(times) < efdaconstants.EfdaConstants.MIN_GRID_N:
        raise CsvParseError(
            line_numbers[-1], 'Need at least %d data rows, got %d' % (
                efdaconstants.EfdaConstants.MIN_GRID_N, len(times)), path)
    steps = numpy.diff(times)
    for index, step in enumerate(steps):
        if step <= 0:
            raise CsvParseError(line_numbers[index + 1], 'Time column is not strictly increasing', path)
    spacing = (times[-1] - times[0]) / (len(times) - 1)
    for index, step in enumerate(steps):
        if abs(step - spacing) > efdaconstants.EfdaConstants.UNIFORM_SPACING_TOL * max(spacing, 1.0):
            raise CsvParseError(
                line_numbers[index + 1], 'Time column is not uniformly spaced (step %s, expected %s)' % (
                    format_float(step), format_float(spacing)), path)

    labels = [label or 'f%d' % (index + 1) for index, label in enumerate(header[1:])]
    functions = [efdasrvf.SampledFunction(column, t0=times[0], t1=times[-1]) for column in columns]
    return FunctionCollection(functions, labels)
