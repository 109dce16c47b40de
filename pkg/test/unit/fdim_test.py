import unittest

import numpy as np

from strata import duality as du
from strata import fdim as fd
from strata import homology as hm
from strata import ringel as rg
from strata import stratification as st
from strata import tilting as tl
from strata.extraction import QuiverLoader
from strata.structures import modules as md
from strata.exceptions import NotApplicable


def checks_by_claim(report):
    return {c['claim']: c for c in report.theorem_checks}


class TestChain(unittest.TestCase):

    def test_counterexample_chain(self):
        chain = fd._chain(0, 1, 1)
        self.assertEqual('0 < 1 < 2', chain['display'])
        self.assertEqual('0 < 1 = 1 < 2', chain['full'])
        self.assertEqual(['<', '=', '<'], chain['relations'])
        self.assertTrue(chain['holds'])

    def test_unknown_terms(self):
        chain = fd._chain(None, 1, 1)
        self.assertIsNone(chain['holds'])
        self.assertEqual('? ? 1 < 2', chain['display'])

    def test_violated(self):
        self.assertFalse(fd._chain(1, 1, 1)['holds'])


class TestChecks(unittest.TestCase):

    def test_equal(self):
        self.assertEqual('pass', fd._check_equal(1, 1, 1))
        self.assertEqual('fail', fd._check_equal(2, 1, 1))
        self.assertEqual('fail', fd._check_equal(3, 0, 2))
        self.assertEqual('undetermined', fd._check_equal(1, 0, 2))
        self.assertEqual('undetermined', fd._check_equal(None, 1, 1))

    def test_at_most(self):
        self.assertEqual('pass', fd._check_at_most(2, 0, 2))
        self.assertEqual('fail', fd._check_at_most(1, 2, 3))
        self.assertEqual('undetermined', fd._check_at_most(1, 0, None))

    def test_at_least(self):
        self.assertEqual('pass', fd._check_at_least(1, 1, 3))
        self.assertEqual('fail', fd._check_at_least(3, 0, 2))
        self.assertEqual('undetermined', fd._check_at_least(1, 0, None))


class TestReportObjects(unittest.TestCase):

    def test_bounds(self):
        report = fd.FdimReport(
            None, None, fd.DeltaEstimate(),
            [fd.Bound(1, 'pd(X)')], [fd.Bound(2, 'a'), fd.Bound(1, 'b')],
            [], {}, {}
        )
        self.assertEqual((1, 1), report.interval)
        self.assertEqual(hm.DimensionValue.exact(1), report.fdim)
        self.assertEqual({'exact': 1}, {
            k: v for k, v in report.to_dict()['fdim'].items()
            if k == 'exact'
        })

    def test_interval(self):
        report = fd.FdimReport(None, None, fd.DeltaEstimate(), [], [],
                               [], {}, {})
        self.assertEqual((0, None), report.interval)
        self.assertIsNone(report.fdim)
        self.assertEqual([0, None], report.to_dict()['fdim']['interval'])

    def test_delta_estimate(self):
        exact = fd.DeltaEstimate(hm.DimensionValue.exact(0), (0, 0),
                                 {'route': 'injection'})
        self.assertTrue(exact.is_exact)
        self.assertEqual({'kind': 'exact', 'value': 0,
                          'certificate': {'route': 'injection'}},
                         exact.to_dict())
        unknown = fd.DeltaEstimate(None, (0, 1))
        self.assertFalse(unknown.is_exact)
        self.assertEqual([0, 1], unknown.to_dict()['bounds'])


class TestCounterexample(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        algebra = QuiverLoader().algebra('MP4')
        cls.strat = st.Stratification(algebra)
        cls.duality = du.verify_duality(algebra)
        cls.report = fd.fdim_report(cls.strat, cls.duality)

    def test_fdim(self):
        self.assertEqual(hm.DimensionValue.exact(1), self.report.fdim)
        self.assertEqual(1, self.report.pd_T)
        self.assertEqual(1, self.report.id_C)

    def test_fdim_delta(self):
        delta = self.report.fdim_delta
        self.assertTrue(delta.is_exact)
        self.assertEqual(0, delta.value)
        self.assertEqual('injection', delta.certificate['route'])

    def test_chain(self):
        self.assertEqual('0 < 1 < 2', self.report.chain['display'])
        self.assertTrue(self.report.chain['holds'])

    def test_claims(self):
        self.assertEqual([], self.report.failures)
        checks = checks_by_claim(self.report)
        self.assertEqual('inapplicable',
                         checks['fdim-twice-pd-tilting']['verdict'])
        self.assertEqual('inapplicable',
                         checks['ifdim-at-most-fdim']['verdict'])
        self.assertEqual('pass',
                         checks['fdim-upper-delta-plus-tilting']['verdict'])
        self.assertEqual('pass', checks['bound-chain']['verdict'])
        self.assertEqual(set(fd.CLAIMS), set(checks))

    def test_conjecture(self):
        conjecture = self.report.conjecture_check
        self.assertEqual('conjecture', conjecture['label'])
        self.assertEqual(1, conjecture['expected'])
        self.assertEqual('holds', conjecture['status'])

    def test_to_dict(self):
        out = self.report.to_dict()
        self.assertEqual(1, out['fdim']['exact'])
        self.assertEqual({'kind': 'exact', 'value': 1}, out['pd_T'])
        self.assertNotIn('ifdim', out)

    def test_injection_certificate(self):
        holds, dims = fd.injection_certificate(
            tl.characteristic_tilting(self.strat)
        )
        self.assertTrue(holds)
        self.assertEqual({'T(1)', 'T(2)'}, set(dims))

    def test_ifdim_refused(self):
        self.assertRaises(NotApplicable, fd.ifdim_check, self.strat,
                          self.duality)

    def test_fcodim_nabla(self):
        estimate = fd.fcodim_nabla_estimate(self.strat)
        self.assertTrue(estimate.is_exact)
        self.assertEqual(0, estimate.value)


class TestQuasiHereditary(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        algebra = QuiverLoader().algebra('O2')
        cls.strat = st.Stratification(algebra)
        cls.duality = du.verify_duality(algebra)
        cls.report = fd.fdim_report(cls.strat, cls.duality)

    def test_fdim(self):
        self.assertEqual(hm.DimensionValue.exact(2), self.report.fdim)

    def test_fdim_delta(self):
        delta = self.report.fdim_delta
        self.assertEqual(1, delta.value)
        self.assertEqual('ringel_tilting', delta.certificate['route'])

    def test_claims(self):
        self.assertEqual([], self.report.failures)
        checks = checks_by_claim(self.report)
        self.assertEqual('pass', checks['fdim-twice-pd-tilting']['verdict'])
        self.assertEqual('pass', checks['gldim-twice-pd-tilting']['verdict'])
        self.assertEqual('pass', checks['fdim-equals-pd-two-step']['verdict'])

    def test_conjecture(self):
        self.assertEqual('holds', self.report.conjecture_check['status'])

    def test_injection_certificate_fails(self):
        holds, dims = fd.injection_certificate(
            tl.characteristic_tilting(self.strat)
        )
        self.assertFalse(holds)
        self.assertEqual(0, dims['T(1)'])

    def test_ifdim(self):
        fragment = self.report.ifdim
        self.assertEqual([], fragment['violations'])
        self.assertEqual({'kind': 'exact', 'value': 2}, fragment['pd_H'])
        self.assertLessEqual(fragment['ifdim_lower_bound'], 2)


class TestOtherAlgebras(unittest.TestCase):

    def test_dual_numbers(self):
        algebra = QuiverLoader().algebra('DUAL0')
        strat = st.Stratification(algebra)
        report = fd.fdim_report(strat, du.verify_duality(algebra))
        self.assertEqual(0, report.fdim)
        self.assertEqual([], report.failures)

    def test_without_duality(self):
        strat = st.Stratification(QuiverLoader().algebra('HER2'))
        report = fd.fdim_report(strat)
        self.assertEqual(1, report.fdim)
        checks = checks_by_claim(report)
        self.assertEqual('inapplicable',
                         checks['fdim-lower-twice-delta']['verdict'])

    def test_not_sss(self):
        strat = st.Stratification(QuiverLoader().algebra('O2R'))
        self.assertRaises(NotApplicable, fd.fdim_report, strat)
        self.assertRaises(NotApplicable, fd.fdim_delta_estimate, strat)


def sampled_modules(algebra, count=20):
    out = [md.canonical_module(algebra, kind, lam)
           for kind in ('simple', 'projective', 'injective')
           for lam in range(algebra.vertex_count)]
    out += [md.random_module(algebra, np.random.default_rng(seed), max_dim=8)
            for seed in range(count)]
    return out


class TestSampledBounds(unittest.TestCase):
    """Finite dimensions of sampled modules respect the reported bounds."""

    def test_pd_within_interval(self):
        for name in ('MP4', 'O2', 'DUAL0', 'HER2'):
            algebra = QuiverLoader().algebra(name)
            strat = st.Stratification(algebra)
            duality = None if name == 'HER2' else du.verify_duality(algebra)
            report = fd.fdim_report(strat, duality)
            bound = 2 * algebra.vertex_count - 2
            self.assertIsNot(False, report.chain['holds'])
            self.assertLessEqual(report.interval[1], bound)
            for module in sampled_modules(algebra):
                value = hm.pd(module, cap=6)
                if not value.is_exact:
                    continue
                self.assertLessEqual(value.value, report.interval[1],
                                     msg=f"{name}: {module.label}")
                self.assertLessEqual(value.value, bound)

    def test_id_within_two_step_pd(self):
        for name in ('O2', 'DUAL0'):
            algebra = QuiverLoader().algebra(name)
            two_step = rg.two_step_tilting(st.Stratification(algebra))
            self.assertTrue(two_step.pd.is_exact)
            for module in sampled_modules(algebra):
                value = hm.id(module, cap=6)
                if not value.is_exact:
                    continue
                self.assertLessEqual(value.value, two_step.pd.value,
                                     msg=f"{name}: {module.label}")


if __name__ == '__main__':
    unittest.main()
