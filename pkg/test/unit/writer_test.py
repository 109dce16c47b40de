import json
import os
import shutil
import tempfile
import unittest

import openpyxl as oxl

from strata import writer as wr


REPORT = {
    'strata_version': '0.1.0',
    'input': 'MP4.qar',
    'seed': 0,
    'parameters': {'cap': 20, 'order': None},
    'sections': {
        'fdim': {'fdim': {'exact': 1}, 'chain': {'display': '0 < 1 < 2'}},
        'basis': {'dim': 10, 'labels': ['e1', 'e2'], 'duality': True},
        'extra': {'modules': [{'label': 'L(1)', 'dim': 1}], 'empty': {}},
    },
}


class TestRegistry(unittest.TestCase):

    def test_formats(self):
        self.assertIs(wr.JsonWriter, wr.Writer.writers['json'])
        self.assertIs(wr.TxtWriter, wr.Writer.writers['txt'])
        self.assertIs(wr.XlsxWriter, wr.Writer.writers['xlsx'])

    def test_missing_format(self):
        with self.assertRaises(TypeError):
            class Nameless(wr.Writer):
                def write(self, dest, report):
                    pass

    def test_missing_write(self):
        with self.assertRaises(AttributeError):
            class Silent(wr.Writer, fmt='silent'):
                pass
        self.assertNotIn('silent', wr.Writer.writers)

    def test_section_order(self):
        self.assertEqual(['basis', 'fdim', 'extra'],
                         wr.Writer.ordered_sections(REPORT))

    def test_scalar(self):
        self.assertEqual('-', wr.Writer.scalar(None))
        self.assertEqual('yes', wr.Writer.scalar(True))
        self.assertEqual('3', wr.Writer.scalar(3))


class TestJsonWriter(unittest.TestCase):

    def test_render(self):
        text = wr.JsonWriter().render(REPORT)
        self.assertTrue(text.endswith('}\n'))
        self.assertEqual(REPORT, json.loads(text))

    def test_canonical(self):
        shuffled = dict(reversed(list(REPORT.items())))
        self.assertEqual(wr.JsonWriter().render(REPORT),
                         wr.JsonWriter().render(shuffled))


class TestTxtWriter(unittest.TestCase):

    def setUp(self):
        self.lines = wr.TxtWriter().render(REPORT).splitlines()

    def test_header(self):
        self.assertEqual('strata 0.1.0 report for MP4.qar (seed 0)',
                         self.lines[0])
        self.assertEqual('parameters: cap=20, order=-', self.lines[1])

    def test_sections(self):
        self.assertIn('Algebra basis', self.lines)
        self.assertIn('Finitistic dimension', self.lines)
        self.assertIn('extra', self.lines)
        self.assertLess(self.lines.index('Algebra basis'),
                        self.lines.index('Finitistic dimension'))

    def test_values(self):
        self.assertIn('dim: 10', self.lines)
        self.assertIn('duality: yes', self.lines)
        self.assertIn('labels: [e1, e2]', self.lines)
        self.assertIn('  display: 0 < 1 < 2', self.lines)
        self.assertIn('empty: {}', self.lines)

    def test_nested_list(self):
        index = self.lines.index('modules:')
        self.assertEqual('  -', self.lines[index + 1])
        self.assertEqual('    dim: 1', self.lines[index + 2])


class TestFiles(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_json_file(self):
        dest = os.path.join(self.directory, 'report.json')
        wr.JsonWriter().write(dest, REPORT)
        with open(dest, encoding='utf-8') as file:
            self.assertEqual(REPORT, json.load(file))

    def test_txt_file(self):
        dest = os.path.join(self.directory, 'report.txt')
        wr.TxtWriter().write(dest, REPORT)
        with open(dest, encoding='utf-8') as file:
            self.assertEqual(wr.TxtWriter().render(REPORT), file.read())

    def test_xlsx_file(self):
        dest = os.path.join(self.directory, 'report.xlsx')
        wr.XlsxWriter().write(dest, REPORT)
        wb = oxl.load_workbook(dest)
        self.assertEqual(['Overview', 'basis', 'fdim', 'extra'],
                         wb.sheetnames)
        rows = list(wb['basis'].iter_rows(values_only=True))
        self.assertEqual(('Key', 'Value'), rows[0])
        self.assertIn(('dim', 10), rows)
        self.assertIn(('labels', 'e1, e2'), rows)
        self.assertIn(('duality', 'yes'), rows)
        extra = list(wb['extra'].iter_rows(values_only=True))
        self.assertIn(('modules[0].label', 'L(1)'), extra)
        self.assertIn(('empty', '{}'), extra)


if __name__ == '__main__':
    unittest.main()
