import os
import shutil
import tempfile
import unittest

import numpy as np

from strata import duality as du
from strata import homology as hm
from strata import stratification as st
from strata import tilting as tl
from strata.extraction import QuiverLoader
from strata.structures import modules as md
from strata.structures import decomposition as dc
from strata.exceptions import NotAntiInvolution, NotApplicable


class TestVerifyDuality(unittest.TestCase):

    def setUp(self):
        self.loader = QuiverLoader()

    def test_mp4(self):
        duality = du.verify_duality(self.loader.algebra('MP4'))
        self.assertEqual(
            {'alpha': 'beta', 'beta': 'alpha', 'x': 'x', 'y': 'y'},
            duality.mapping
        )
        self.assertTrue(duality.to_dict()['verified'])

    def test_o2(self):
        duality = du.verify_duality(self.loader.algebra('O2'))
        self.assertEqual({'u': 'v', 'v': 'u'}, duality.mapping)

    def test_identity_on_commutative(self):
        algebra = self.loader.algebra('DUAL0')
        duality = du.verify_duality(algebra, {'x': 'x'})
        self.assertEqual(algebra.field.eye(2).tolist(),
                         duality.matrix.tolist())

    def test_missing(self):
        self.assertRaises(NotApplicable, du.verify_duality,
                          self.loader.algebra('HER2'))

    def test_idempotents_not_fixed(self):
        algebra = self.loader.algebra('MP4')
        mapping = {'alpha': 'beta', 'beta': 'alpha', 'x': 'y', 'y': 'x'}
        self.assertRaises(NotAntiInvolution, du.verify_duality, algebra,
                          mapping)

    def test_not_reversing(self):
        algebra = self.loader.algebra('O2')
        self.assertRaises(NotAntiInvolution, du.verify_duality, algebra,
                          {'u': 'u', 'v': 'v'})

    def test_arrow_without_image(self):
        algebra = self.loader.algebra('O2')
        self.assertRaises(NotAntiInvolution, du.verify_duality, algebra,
                          {'u': 'v'})


class TestRelationNotPreserved(unittest.TestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        with open(os.path.join(self.directory, 'loops.qar'), 'w') as file:
            file.write(
                'vertices 1\n'
                'arrow x 1 1\n'
                'arrow y 1 1\n'
                'relation x*x\n'
                'relation x*y\n'
                'relation y*x\n'
                'relation y*y*y\n'
            )
        self.algebra = QuiverLoader(self.directory).algebra('loops')

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_swap(self):
        self.assertEqual(4, self.algebra.dim)
        with self.assertRaises(NotAntiInvolution) as context:
            du.verify_duality(self.algebra, {'x': 'y', 'y': 'x'})
        self.assertIn('x*x', str(context.exception))

    def test_identity(self):
        du.verify_duality(self.algebra, {'x': 'x', 'y': 'y'})


class TestStar(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('O2')
        self.duality = du.verify_duality(self.algebra)

    def test_simples_preserved(self):
        for lam in range(2):
            simple = md.canonical_module(self.algebra, 'simple', lam)
            self.assertTrue(self.duality.is_self_dual(simple))

    def test_projective_to_injective(self):
        for lam in range(2):
            proj = md.canonical_module(self.algebra, 'projective', lam)
            star = self.duality.star(proj)
            self.assertEqual([], star.validate())
            injective = md.canonical_module(self.algebra, 'injective', lam)
            self.assertTrue(dc.is_isomorphic(star, injective)[0])

    def test_cached(self):
        proj = md.canonical_module(self.algebra, 'projective', 0)
        self.assertIs(self.duality.star(proj), self.duality.star(proj))
        self.assertEqual('P(1)*', self.duality.star(proj).label)

    def test_star_map(self):
        cover = md.projective_cover_map(
            md.canonical_module(self.algebra, 'simple', 0)
        )
        star = self.duality.star_map(cover)
        self.assertTrue(star.validate())
        self.assertTrue(star.is_injective())

    def test_other_algebra(self):
        other = QuiverLoader().algebra('MP4')
        simple = md.canonical_module(other, 'simple', 0)
        self.assertRaises(ValueError, self.duality.star, simple)


class TestStarDimensions(unittest.TestCase):
    """pd(M) = id(M*) for every module M of finite projective dimension."""

    def sample(self, algebra):
        out = [md.canonical_module(algebra, kind, lam)
               for kind in ('simple', 'projective', 'injective')
               for lam in range(algebra.vertex_count)]
        out += [md.random_module(algebra, np.random.default_rng(seed),
                                 max_dim=8)
                for seed in range(20)]
        return out

    def test_pd_is_id_of_star(self):
        for name in ('MP4', 'O2', 'DUAL0'):
            algebra = QuiverLoader().algebra(name)
            duality = du.verify_duality(algebra)
            exact = 0
            for module in self.sample(algebra):
                projective = hm.pd(module, cap=6)
                if not projective.is_exact:
                    continue
                exact += 1
                self.assertEqual(projective,
                                 hm.id(duality.star(module), cap=6),
                                 msg=f"{name}: {module.label}")
            self.assertGreaterEqual(exact, algebra.vertex_count)


class TestCompareTilting(unittest.TestCase):

    def compare(self, name):
        algebra = QuiverLoader().algebra(name)
        duality = du.verify_duality(algebra)
        tilting = tl.characteristic_tilting(st.Stratification(algebra))
        return duality.compare_tilting(tilting)

    def test_o2(self):
        result = self.compare('O2')
        self.assertTrue(result['self_dual'])
        self.assertEqual({'T(1)', 'T(2)'}, set(result['summands']))

    def test_mp4(self):
        result = self.compare('MP4')
        self.assertFalse(result['self_dual'])
        self.assertTrue(result['summands']['T(1)'])


if __name__ == '__main__':
    unittest.main()
