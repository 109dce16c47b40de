import os
import shutil
import tempfile
import unittest

from strata.extraction import QuiverLoader, FIXTURES_DIR
from strata.exceptions import QuiverSyntaxError


class TestQuiverLoader(unittest.TestCase):

    def setUp(self):
        self.loader = QuiverLoader()

    def test_default_path(self):
        self.assertEqual(FIXTURES_DIR, self.loader.path)

    def test_fixtures(self):
        self.assertEqual(
            ['DUAL0.qar', 'HER2.qar', 'MP4.qar', 'O2.qar', 'O2R.qar'],
            self.loader.presentation_files
        )

    def test_resolve_by_name(self):
        self.assertEqual(os.path.join(FIXTURES_DIR, 'MP4.qar'),
                         self.loader.resolve('MP4'))

    def test_resolve_missing(self):
        self.assertRaises(FileNotFoundError, self.loader.resolve, 'NOPE')

    def test_bad_path(self):
        self.assertRaises(FileNotFoundError, QuiverLoader, '/no/such/dir')

    def test_algebra(self):
        algebra = self.loader.algebra('MP4')
        self.assertEqual(10, algebra.dim)
        self.assertEqual(['1', '2'], algebra.vertex_labels)

    def test_algebra_reordered(self):
        algebra = self.loader.algebra('MP4', order=[2, 1])
        self.assertEqual(['2', '1'], algebra.vertex_labels)
        self.assertEqual(10, algebra.dim)

    def test_fixture_dimensions(self):
        dims = {name: self.loader.algebra(name).dim
                for name, _ in self.loader.extract()}
        self.assertEqual(
            {'DUAL0.qar': 2, 'HER2.qar': 3, 'MP4.qar': 10, 'O2.qar': 5,
             'O2R.qar': 5},
            dims
        )

    def test_presentation_order(self):
        self.assertEqual(['2', '1'], self.loader.presentation('O2R').order)


class TestOtherDirectory(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        with open(os.path.join(self.directory, 'bad.qar'), 'w') as file:
            file.write('vertices 1\nnonsense\n')
        self.loader = QuiverLoader(self.directory)

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_syntax_error(self):
        self.assertRaises(QuiverSyntaxError, self.loader.algebra, 'bad')

    def test_min_prime(self):
        with open(os.path.join(self.directory, 'small.qar'), 'w') as file:
            file.write('field 5\nvertices 1\n')
        self.assertRaises(QuiverSyntaxError, self.loader.algebra, 'small')
        loader = QuiverLoader(self.directory, min_prime=2)
        self.assertEqual(1, loader.algebra('small').dim)


if __name__ == '__main__':
    unittest.main()
