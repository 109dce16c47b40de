import json
import os
import shutil
import tempfile
import unittest

from strata import cache as ch


class TestReportCache(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.path = os.path.join(self.directory, 'nested', 'cache')
        self.cache = ch.ReportCache(self.path, version='0.1.0')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_directory_created(self):
        self.assertTrue(os.path.isdir(self.path))

    def test_key(self):
        key = self.cache.key('vertices 1', {'cap': 20}, 'basis')
        self.assertEqual(64, len(key))
        self.assertEqual(key, self.cache.key('vertices 1', {'cap': 20},
                                             'basis'))
        self.assertNotEqual(key, self.cache.key('vertices 1', {'cap': 21},
                                                'basis'))
        self.assertNotEqual(key, self.cache.key('vertices 1', {'cap': 20},
                                                'fdim'))
        other = ch.ReportCache(self.path, version='0.2.0')
        self.assertNotEqual(key, other.key('vertices 1', {'cap': 20},
                                           'basis'))

    def test_parameters_order_irrelevant(self):
        self.assertEqual(
            self.cache.key('x', {'cap': 1, 'seed': 2}, 'fdim'),
            self.cache.key('x', {'seed': 2, 'cap': 1}, 'fdim')
        )

    def test_unused(self):
        self.assertEqual('unused', self.cache.note)

    def test_miss_then_hit(self):
        key = self.cache.key('x', {}, 'basis')
        self.assertIsNone(self.cache.load(key))
        self.assertEqual('miss', self.cache.note)
        self.cache.store(key, {'dim': 10})
        self.assertEqual({'dim': 10}, self.cache.load(key))
        self.assertEqual('partial', self.cache.note)

    def test_hit(self):
        key = self.cache.key('x', {}, 'basis')
        self.cache.store(key, [1, 2])
        self.assertEqual([1, 2], self.cache.load(key))
        self.assertEqual('hit', self.cache.note)
        self.assertEqual(1, self.cache.hits)

    def test_corrupted(self):
        key = self.cache.key('x', {}, 'basis')
        with open(self.cache.file(key), 'w') as file:
            file.write('{not json')
        with self.assertLogs('strata.cache', level='WARNING'):
            self.assertIsNone(self.cache.load(key))
        self.assertEqual(1, self.cache.misses)

    def test_wrong_key(self):
        key = self.cache.key('x', {}, 'basis')
        with open(self.cache.file(key), 'w') as file:
            json.dump({'key': 'other', 'payload': 1}, file)
        with self.assertLogs('strata.cache', level='WARNING'):
            self.assertIsNone(self.cache.load(key))

    def test_overwrite(self):
        key = self.cache.key('x', {}, 'basis')
        self.cache.store(key, 1)
        self.cache.store(key, 2)
        self.assertEqual(2, self.cache.load(key))


if __name__ == '__main__':
    unittest.main()
