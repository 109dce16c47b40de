import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr

from strata import cli


class TestSplitArguments(unittest.TestCase):

    def test_command_and_file(self):
        self.assertEqual((['fdim'], [], 'MP4'),
                         cli.split_arguments(['fdim', 'MP4']))

    def test_module_specs(self):
        self.assertEqual(
            (['resolve'], ['L(1)', 'Delta(2)', 'A'], 'O2.qar'),
            cli.split_arguments(['resolve', 'L(1)', 'Delta(2)', 'A',
                                 'O2.qar'])
        )

    def test_several_commands(self):
        commands, _, _ = cli.split_arguments(['basis', 'stratify', 'O2'])
        self.assertEqual(['basis', 'stratify'], commands)

    def test_verify_default_file(self):
        self.assertEqual(([cli.VERIFY], [], 'MP4'),
                         cli.split_arguments([cli.VERIFY]))

    def test_errors(self):
        self.assertRaises(ValueError, cli.split_arguments, ['MP4'])
        self.assertRaises(ValueError, cli.split_arguments, ['fdim'])
        self.assertRaises(ValueError, cli.split_arguments,
                          ['fdim', 'MP4', 'O2'])


class TestExitCode(unittest.TestCase):

    def test_codes(self):
        self.assertEqual(cli.EXIT_OK, cli.exit_code({'sections': {}}))
        self.assertEqual(cli.EXIT_INCONCLUSIVE, cli.exit_code(
            {'sections': {'fdim': {'status': 'inconclusive'}}}
        ))
        self.assertEqual(cli.EXIT_ERROR, cli.exit_code(
            {'sections': {cli.VERIFY: {'passed': False}}}
        ))
        self.assertEqual(cli.EXIT_OK, cli.exit_code(
            {'sections': {cli.VERIFY: {'passed': True}}}
        ))


class TestMain(unittest.TestCase):

    def setUp(self):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()

    def run_main(self, argv):
        with redirect_stderr(self.stderr):
            return cli.main(argv, stdout=self.stdout)

    def test_json(self):
        self.assertEqual(0, self.run_main(['basis', 'O2']))
        report = json.loads(self.stdout.getvalue())
        self.assertEqual(5, report['sections']['basis']['dim'])

    def test_text(self):
        self.assertEqual(0, self.run_main(['basis', 'O2', '--text']))
        self.assertTrue(self.stdout.getvalue().startswith('strata '))
        self.assertIn('Algebra basis', self.stdout.getvalue())

    def test_options(self):
        code = self.run_main(['resolve', 'L(2)', 'O2', '--module', 'L(1)',
                              '--seed', '3', '--cap', '5'])
        self.assertEqual(0, code)
        report = json.loads(self.stdout.getvalue())
        self.assertEqual({'L(1)', 'L(2)'}, set(report['sections']['resolve']))
        self.assertEqual(3, report['seed'])
        self.assertEqual(5, report['parameters']['cap'])

    def test_order(self):
        self.assertEqual(0, self.run_main(['stratify', 'O2',
                                           '--order', '2,1']))
        report = json.loads(self.stdout.getvalue())
        self.assertFalse(report['sections']['stratify']['sss'])

    def test_missing_file(self):
        self.assertEqual(cli.EXIT_ERROR, self.run_main(['basis', 'NOPE']))
        self.assertIn('strata: error', self.stderr.getvalue())

    def test_xlsx_needs_output(self):
        with self.assertRaises(SystemExit):
            self.run_main(['basis', 'O2', '--format', 'xlsx'])

    def test_no_command(self):
        with self.assertRaises(SystemExit):
            self.run_main(['O2'])

    def test_verify(self):
        self.assertEqual(0, self.run_main([cli.VERIFY]))
        report = json.loads(self.stdout.getvalue())
        self.assertTrue(report['sections'][cli.VERIFY]['passed'])

    def test_verify_fails_on_other_algebra(self):
        self.assertEqual(cli.EXIT_ERROR, self.run_main([cli.VERIFY, 'O2']))


class TestOutputFile(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_json_file(self):
        dest = os.path.join(self.directory, 'report.json')
        stdout = io.StringIO()
        self.assertEqual(0, cli.main(['basis', 'O2', '-o', dest],
                                     stdout=stdout))
        self.assertEqual('', stdout.getvalue())
        with open(dest, encoding='utf-8') as file:
            self.assertEqual(5, json.load(file)['sections']['basis']['dim'])

    def test_xlsx_file(self):
        dest = os.path.join(self.directory, 'report.xlsx')
        self.assertEqual(0, cli.main(['basis', 'O2', '--format', 'xlsx',
                                      '--output', dest]))
        self.assertTrue(os.path.isfile(dest))

    def test_cache(self):
        cache = os.path.join(self.directory, 'cache')
        for expected in ('miss', 'hit'):
            stdout = io.StringIO()
            cli.main(['basis', 'O2', '--cache', cache], stdout=stdout)
            self.assertEqual(expected, json.loads(stdout.getvalue())['cache'])


if __name__ == '__main__':
    unittest.main()
