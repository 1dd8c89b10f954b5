import os
import tempfile
import unittest

import numpy

from efda import efdacollection
from efda import efdasrvf


def write_text(path, text):
    with open(path, 'w', encoding='utf-8') as output_file:
        output_file.write(text)


class FunctionCollectionTest(unittest.TestCase):
    def test_append_and_iterate(self):
        collection = efdacollection.FunctionCollection()
        collection.append(efdasrvf.SampledFunction([0.0, 1.0, 0.0]))
        collection.append([efdasrvf.SampledFunction([1.0, 2.0, 1.0])], labels=['second'])
        self.assertEqual(len(collection), 2)
        self.assertEqual(collection.labels, ['f1', 'second'])
        self.assertEqual(len([f for f in collection]), 2)

    def test_append_wrong_type(self):
        collection = efdacollection.FunctionCollection()
        with self.assertRaises(TypeError):
            collection.append({'values': [1, 2, 3]})
        with self.assertRaises(TypeError):
            collection.append([[1.0, 2.0, 3.0]])

    def test_append_other_grid(self):
        collection = efdacollection.FunctionCollection(efdasrvf.SampledFunction([0.0, 1.0, 0.0]))
        with self.assertRaises(efdasrvf.GridMismatchError):
            collection.append(efdasrvf.SampledFunction([0.0, 1.0, 0.0, 1.0]))
        with self.assertRaises(efdasrvf.GridMismatchError):
            collection.append(efdasrvf.SampledFunction([0.0, 1.0, 0.0], t0=0.0, t1=2.0))

    def test_add(self):
        first = efdacollection.FunctionCollection(efdasrvf.SampledFunction([0.0, 1.0, 0.0]))
        second = efdacollection.FunctionCollection(efdasrvf.SampledFunction([1.0, 1.0, 0.0]))
        self.assertEqual(len(first + second), 2)


class CsvTest(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_load_sample_file(self):
        filename = os.path.join(os.path.dirname(__file__), './sample.csv')
        collection = efdacollection.FunctionCollection.load_from_file(filename)
        self.assertEqual(len(collection), 2)
        self.assertEqual(collection.labels, ['bump', 'shifted'])
        self.assertEqual(collection.interval, (0.0, 1.0))
        self.assertEqual(collection.n_points, 9)

    def test_round_trip(self):
        t = numpy.linspace(-3, 3, 61)
        functions = [efdasrvf.SampledFunction(numpy.sin(t) / 3.0, -3.0, 3.0),
                     efdasrvf.SampledFunction(numpy.exp(-t ** 2) * numpy.pi, -3.0, 3.0)]
        collection = efdacollection.FunctionCollection(functions, labels=['sine', 'bump'])
        efdacollection.write_csv(collection, self.path('round.csv'))
        loaded = efdacollection.read_csv(self.path('round.csv'))
        self.assertEqual(loaded.labels, ['sine', 'bump'])
        self.assertEqual(loaded.interval, (-3.0, 3.0))
        numpy.testing.assert_allclose(loaded.to_matrix(), collection.to_matrix(), rtol=1e-12, atol=1e-15)
        self.assertEqual(sorted(os.listdir(self.directory.name)), ['round.csv'])

    def test_header_only(self):
        write_text(self.path('empty.csv'), 't,f1\n')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('empty.csv'))
        self.assertIn('no data rows', str(context.exception))

    def test_three_columns(self):
        write_text(self.path('three.csv'), 't,a,b\n0,1,2\n0.5,3,4\n1,5,6\n')
        collection = efdacollection.read_csv(self.path('three.csv'))
        self.assertEqual(len(collection), 2)
        numpy.testing.assert_array_equal(collection[1].values, [2.0, 4.0, 6.0])

    def test_ragged_row(self):
        write_text(self.path('ragged.csv'), 't,a,b\n0,1,2\n0.5,3\n1,5,6\n')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('ragged.csv'))
        self.assertEqual(context.exception.line_number, 3)
        self.assertIn('line 3', str(context.exception))

    def test_non_numeric_cell(self):
        write_text(self.path('text.csv'), 't,a\n0,1\n0.5,abc\n1,5\n')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('text.csv'))
        self.assertEqual(context.exception.line_number, 3)

    def test_non_monotone_time(self):
        write_text(self.path('time.csv'), 't,a\n0,1\n0.5,2\n0.4,3\n1,4\n')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('time.csv'))
        self.assertEqual(context.exception.line_number, 4)

    def test_non_uniform_time(self):
        write_text(self.path('uneven.csv'), 't,a\n0,1\n0.2,2\n1,3\n')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('uneven.csv'))
        self.assertEqual(context.exception.line_number, 3)

    def test_too_few_rows(self):
        write_text(self.path('short.csv'), 't,a\n0,1\n1,2\n')
        with self.assertRaises(efdacollection.CsvParseError):
            efdacollection.read_csv(self.path('short.csv'))

    def test_empty_file(self):
        write_text(self.path('blank.csv'), '')
        with self.assertRaises(efdacollection.CsvParseError) as context:
            efdacollection.read_csv(self.path('blank.csv'))
        self.assertEqual(context.exception.line_number, 1)
