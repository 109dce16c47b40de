import json
import unittest

from strata import homology as hm
from strata import stratification as st
from strata.extraction import QuiverLoader
from strata.structures import modules as md
from strata.exceptions import NotApplicable


class TestStratVerdict(unittest.TestCase):

    def test_inconsistent(self):
        self.assertRaises(ValueError, st.StratVerdict, False, True, False)
        self.assertRaises(ValueError, st.StratVerdict, True, False, True)

    def test_to_dict(self):
        verdict = st.StratVerdict(True, True, False, {'sss': []})
        self.assertEqual(
            {'sss': True, 'properly_stratified': True,
             'quasi_hereditary': False, 'certificates': {'sss': []}},
            verdict.to_dict()
        )


class TestModulesMP4(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('MP4')
        self.strat = st.Stratification(self.algebra)

    def test_dimensions(self):
        self.assertEqual([2, 4], [m.dim for m in self.strat.standard])
        self.assertEqual([1, 2], [m.dim for m in self.strat.proper_standard])
        self.assertEqual([2, 4], [m.dim for m in self.strat.costandard])
        self.assertEqual([1, 2],
                         [m.dim for m in self.strat.proper_costandard])

    def test_labels(self):
        self.assertEqual('Delta(1)', self.strat.module('standard', 0).label)
        self.assertEqual('Nablabar(2)',
                         self.strat.module('proper_costandard', 1).label)

    def test_aliases(self):
        self.assertIs(self.strat.module('standard', 0),
                      self.strat.module('delta', 0))
        self.assertIs(self.strat.module('proper_costandard', 1),
                      self.strat.module('nablabar', 1))

    def test_unknown_kind(self):
        self.assertRaises(ValueError, self.strat.module, 'tilting', 0)

    def test_biggest_standard_is_projective(self):
        delta = self.strat.module('standard', 1)
        proj = md.canonical_module(self.algebra, 'projective', 1)
        self.assertEqual(proj.dim, delta.dim)
        self.assertTrue(md.is_projective(delta))

    def test_valid(self):
        for kind in st.KINDS:
            for module in self.strat.family(kind):
                self.assertEqual([], module.validate(), module.label)

    def test_layers(self):
        layers = self.strat.layers()
        self.assertEqual(8, len(layers))
        self.assertEqual([[1, 0], [1, 0]], layers['Delta(1)'])
        self.assertEqual([[0, 1], [1, 0]], layers['Deltabar(2)'])

    def test_tops_and_socles(self):
        for lam in range(2):
            for kind in ('standard', 'proper_standard'):
                top = md.radical_layers(self.strat.module(kind, lam))[0]
                expected = [0, 0]
                expected[lam] = 1
                self.assertEqual(tuple(expected), tuple(top))
            for kind in ('costandard', 'proper_costandard'):
                soc = md.socle_layers(self.strat.module(kind, lam))[0]
                expected = [0, 0]
                expected[lam] = 1
                self.assertEqual(tuple(expected), tuple(soc))


class TestClassification(unittest.TestCase):

    def verdict(self, name):
        return st.Stratification(QuiverLoader().algebra(name)).verdict()

    def test_mp4(self):
        verdict = self.verdict('MP4')
        self.assertTrue(verdict.sss)
        self.assertTrue(verdict.properly_stratified)
        self.assertFalse(verdict.quasi_hereditary)
        self.assertEqual(
            {'dim_standard': 2, 'dim_proper_standard': 1},
            verdict.certificates['quasi_hereditary']['1']
        )

    def test_mp4_projective_chains(self):
        certificates = self.verdict('MP4').certificates
        for name in ('1', '2'):
            chain = certificates['properly_stratified'][name]
            self.assertEqual('found', chain['projective_chain']['status'])

    def test_mp4_dimension_count(self):
        certificate = self.verdict('MP4').certificates['properly_stratified']
        self.assertEqual(4, certificate['2']['dim_standard'])
        self.assertEqual(2, certificate['2']['local_dim'])
        self.assertEqual(2, certificate['2']['dim_proper_standard'])
        self.assertTrue(all(c['holds'] for c in certificate.values()))

    def test_mp4_trace_witnesses(self):
        verdict = self.verdict('MP4')
        layer = verdict.certificates['sss'][0]
        self.assertEqual('2', layer['layer'])
        trace = layer['traces']['1']
        self.assertEqual(4, trace['trace_dim'])
        self.assertEqual(2, trace['hom_dim'])
        self.assertEqual(2, len(trace['generators']))
        self.assertEqual(4, len(trace['trace_basis']))
        self.assertTrue(json.dumps(verdict.to_dict()))

    def test_o2_reversed_trace_witnesses(self):
        layer = self.verdict('O2R').certificates['sss'][0]
        trace = layer['traces']['2']
        self.assertEqual(1, trace['hom_dim'])
        self.assertEqual(1, len(trace['trace_basis']))
        self.assertFalse(trace['holds'])

    def test_o2(self):
        verdict = self.verdict('O2')
        self.assertTrue(verdict.sss)
        self.assertTrue(verdict.quasi_hereditary)

    def test_o2_reversed(self):
        verdict = self.verdict('O2R')
        self.assertFalse(verdict.sss)
        self.assertFalse(verdict.properly_stratified)
        self.assertFalse(verdict.quasi_hereditary)
        layer = verdict.certificates['sss'][0]
        self.assertEqual('1', layer['layer'])
        self.assertEqual(1, layer['traces']['2']['trace_dim'])

    def test_dual_numbers(self):
        verdict = self.verdict('DUAL0')
        self.assertTrue(verdict.properly_stratified)
        self.assertFalse(verdict.quasi_hereditary)

    def test_hereditary(self):
        self.assertTrue(self.verdict('HER2').quasi_hereditary)

    def test_sss_cached(self):
        strat = st.Stratification(QuiverLoader().algebra('MP4'))
        self.assertIs(strat.is_sss(), strat.is_sss())

    def test_alternative_check(self):
        for name in ('MP4', 'O2'):
            strat = st.Stratification(QuiverLoader().algebra(name))
            self.assertTrue(strat.sss_alternative_check(), name)

    def test_module_functions(self):
        algebra = QuiverLoader().algebra('O2')
        self.assertIs(st.stratification(algebra), st.stratification(algebra))
        self.assertTrue(st.is_quasi_hereditary(algebra)[0])
        self.assertEqual(1, st.strat_module(algebra, 'standard', 0).dim)


class TestFiltrations(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('MP4')
        self.strat = st.Stratification(self.algebra)

    def test_projective_by_standard(self):
        proj = md.canonical_module(self.algebra, 'projective', 0)
        found, chain = self.strat.has_filtration(proj, self.strat.standard)
        self.assertTrue(found)
        self.assertEqual(['Delta(2)', 'Delta(1)'], chain.labels)
        self.assertEqual([1, 1],
                         self.strat.delta_multiplicities(proj).tolist())

    def test_standard_by_proper_standard(self):
        delta = self.strat.module('standard', 1)
        found, chain = self.strat.has_filtration(
            delta, [self.strat.module('proper_standard', 1)]
        )
        self.assertTrue(found)
        self.assertEqual([0, 0], chain.members)

    def test_standard_multiplicities(self):
        for lam in range(2):
            counts = self.strat.delta_multiplicities(
                self.strat.module('standard', lam)
            )
            expected = [0, 0]
            expected[lam] = 1
            self.assertEqual(expected, counts.tolist())

    def test_zero_module(self):
        zero = md.DirectSum([], algebra=self.algebra)
        found, chain = self.strat.has_filtration(zero, self.strat.standard)
        self.assertTrue(found)
        self.assertEqual([], chain.members)

    def test_delta_dim(self):
        for delta in self.strat.standard:
            self.assertEqual(0, self.strat.delta_dim(delta))

    def test_nablabar_codim_of_regular(self):
        self.assertEqual(hm.DimensionValue.exact(1), self.strat.standard_pd())
        self.assertEqual(
            1, self.strat.nablabar_codim(self.algebra.regular_module())
        )

    def test_delta_dim_infinite(self):
        simple = md.canonical_module(self.algebra, 'simple', 0)
        self.assertEqual(hm.DimensionValue.infinite(),
                         self.strat.delta_dim(simple))


class TestFiltrationsO2(unittest.TestCase):

    def setUp(self):
        self.algebra = QuiverLoader().algebra('O2')
        self.strat = st.Stratification(self.algebra)
        self.l2 = md.canonical_module(self.algebra, 'simple', 1)

    def test_standard_modules(self):
        self.assertEqual([1, 2], [m.dim for m in self.strat.standard])
        self.assertEqual([1, 2], [m.dim for m in self.strat.proper_standard])

    def test_simple_not_filtered(self):
        self.assertEqual((False, None),
                         self.strat.has_filtration(self.l2,
                                                   self.strat.standard))

    def test_ext_orthogonality(self):
        total = sum(hm.ext(self.l2, nb, 1)
                    for nb in self.strat.proper_costandard)
        self.assertNotEqual(0, total)

    def test_regular_multiplicities(self):
        counts = self.strat.delta_multiplicities(
            self.algebra.regular_module()
        )
        self.assertEqual([1, 2], counts.tolist())

    def test_delta_dim(self):
        self.assertEqual(1, self.strat.delta_dim(self.l2))
        self.assertEqual(0, self.strat.delta_dim(
            self.strat.module('standard', 0)
        ))

    def test_not_sss(self):
        strat = st.Stratification(QuiverLoader().algebra('O2R'))
        self.assertRaises(NotApplicable, strat.delta_dim,
                          strat.module('standard', 0))

    def test_not_filtered_multiplicities(self):
        self.assertRaises(ValueError, self.strat.delta_multiplicities,
                          self.l2)


if __name__ == '__main__':
    unittest.main()
