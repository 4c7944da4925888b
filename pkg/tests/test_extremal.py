"""
Unit tests for the extremal distributions and the rearrangements.
"""

# License: MIT

import itertools
import math
import unittest

import numpy as np
import sklearn.utils

from hypothesis import given, settings
from hypothesis import strategies as st

from coboson import (make_distribution, random_distribution, chi_series_esp,
                     random_distribution_constrained,
                     minimizing_distribution, maximizing_distribution, peaked_from_P,
                     uniform_from_P, peaked_from_lambda1, uniform_from_lambda1,
                     make_extremal, gamma_uniform, gamma_peak, chi_min_exact,
                     chi_max_exact)
from coboson.exceptions import (DegeneratePeakedError, IndexOutOfRangeError,
                                InfeasiblePairError, OutOfRangeError,
                                STooSmallError, TouchesLambda1Error)


def _moments(dist):
    return math.fsum(dist.coefficients), math.fsum(dist.coefficients**2)


def _converge(dist, operation, sweeps, random_state):
    """Applies random rearrangements until the distribution settles."""

    rng = sklearn.utils.check_random_state(random_state)
    for _ in range(sweeps):
        j1, j2, j3 = sorted(rng.choice(np.arange(2, dist.n_modes + 1), size=3,
                                       replace=False).tolist())
        dist = operation(dist, j1, j2, j3)
    return dist


class TestMinimizingDistribution(unittest.TestCase):

    def test_worked_pair(self):
        spec = minimizing_distribution(P=0.2, lambda1=0.3)
        self.assertEqual(spec.S, 6)
        self.assertEqual(round(spec.lambda2, 6), 0.164495)
        self.assertEqual(round(spec.lambdaS, 6), 0.042021)
        dist = spec.expand()
        total, purity = _moments(dist)
        self.assertAlmostEqual(total, 1.0, places=12)
        self.assertAlmostEqual(purity, 0.2, places=12)

    def test_uniform_at_lambda1_min(self):
        spec = minimizing_distribution(P=0.2, lambda1=0.2)
        self.assertEqual(spec.S, 5)
        np.testing.assert_allclose(spec.expand().coefficients, np.full(5, 0.2), atol=1e-9)

    def test_two_halves(self):
        dist = minimizing_distribution(P=0.5, lambda1=0.5).expand()
        np.testing.assert_allclose(dist.coefficients, [0.5, 0.5], atol=1e-12)

    def test_degenerate_peaked(self):
        with self.assertRaises(DegeneratePeakedError):
            minimizing_distribution(P=0.25, lambda1=0.5)

    def test_product_state(self):
        spec = minimizing_distribution(P=1.0, lambda1=1.0)
        self.assertEqual(spec.S, 1)

    def test_infeasible(self):
        with self.assertRaises(InfeasiblePairError):
            minimizing_distribution(P=0.2, lambda1=0.5)

    def test_saturates_lower_bound(self):
        dist = minimizing_distribution(P=0.2, lambda1=0.3).expand()
        series = chi_series_esp(dist, 8)
        for N in range(9):
            self.assertLessEqual(abs(series.chi[N] - chi_min_exact(0.2, 0.3, N)),
                                 1e-10)


class TestMaximizingDistribution(unittest.TestCase):

    def test_worked_pair(self):
        spec = maximizing_distribution(P=0.2, lambda1=0.3)
        self.assertEqual(spec.L, 3)
        self.assertEqual(round(spec.lambdaL, 6), 0.141421)
        self.assertEqual(round(spec.lambdaSigma, 6), 0.258579)
        self.assertTrue(spec.is_infinite)
        self.assertAlmostEqual(spec.purity, 0.2, places=12)

    def test_uniform_at_lambda1_min(self):
        spec = maximizing_distribution(P=0.2, lambda1=0.2)
        self.assertEqual(spec.L, 5)
        self.assertAlmostEqual(spec.lambdaL, 0.2, places=12)
        self.assertAlmostEqual(spec.lambdaSigma, 0.0, places=12)

    def test_unit_fraction_has_no_tail(self):
        for k in range(2, 12):
            spec = maximizing_distribution(P=1.0/k, lambda1=1.0/k)
            self.assertEqual(spec.L, k)
            self.assertEqual(spec.lambdaSigma, 0.0)
            self.assertAlmostEqual(spec.lambdaL, 1.0/k, places=15)
            self.assertEqual(spec.chi_series(k + 1).chi[k + 1], 0.0)

    def test_peaked_boundary(self):
        spec = maximizing_distribution(P=0.25, lambda1=0.5)
        self.assertEqual(spec.L, 1)
        self.assertAlmostEqual(spec.lambdaL, 0.5, places=12)
        self.assertAlmostEqual(spec.lambdaSigma, 0.5, places=12)

    def test_finite_support(self):
        spec = maximizing_distribution(P=0.2, lambda1=0.3, S=40)
        dist = spec.expand()
        self.assertEqual(dist.n_modes, 40)
        total, purity = _moments(dist)
        self.assertAlmostEqual(total, 1.0, places=12)
        self.assertAlmostEqual(purity, 0.2, places=12)

    def test_finite_support_too_small(self):
        with self.assertRaises(STooSmallError):
            maximizing_distribution(P=0.2, lambda1=0.3, S=2)

    def test_tail_needs_cut_to_expand(self):
        spec = maximizing_distribution(P=0.2, lambda1=0.3)
        with self.assertRaises(ValueError):
            spec.expand()
        record = spec.expansion_record(s_cut=50)
        self.assertEqual(record['metadata']['s_cut'], 50)
        self.assertEqual(len(record['coefficients']), 53)

    def test_tail_series_matches_upper_bound(self):
        spec = maximizing_distribution(P=0.2, lambda1=0.3)
        series = spec.chi_series(10)
        for N in range(11):
            self.assertLessEqual(abs(series.chi[N] - chi_max_exact(0.2, 0.3, N)), 1e-10)

    def test_to_dict_marks_infinite_support(self):
        record = maximizing_distribution(P=0.2, lambda1=0.3).to_dict()
        self.assertEqual(record['S'], 'inf')
        self.assertEqual(record['kind'], 'max_pl1')


class TestOneParameterFamilies(unittest.TestCase):

    def test_uniform_from_P(self):
        np.testing.assert_allclose(uniform_from_P(0.25).expand().coefficients,
                                   np.full(4, 0.25), atol=1e-12)
        np.testing.assert_allclose(uniform_from_P(0.2).expand().coefficients,
                                   np.full(5, 0.2), atol=1e-9)

    def test_peaked_from_P(self):
        spec = peaked_from_P(0.25)
        self.assertAlmostEqual(spec.lambda1, 0.5, places=12)
        self.assertAlmostEqual(spec.lambdaSigma, 0.5, places=12)

    def test_peaked_from_P_finite(self):
        dist = peaked_from_P(0.2, S=10).expand()
        self.assertEqual(dist.n_modes, 10)
        self.assertAlmostEqual(dist.purity, 0.2, places=12)
        with self.assertRaises(STooSmallError):
            peaked_from_P(0.2, S=4)

    def test_uniform_from_lambda1(self):
        spec = uniform_from_lambda1(0.3)
        np.testing.assert_allclose(spec.expand().coefficients, [0.3, 0.3, 0.3, 0.1],
                                   atol=1e-12)
        self.assertAlmostEqual(spec.purity, 0.28, places=12)
        np.testing.assert_allclose(uniform_from_lambda1(0.25).expand().coefficients,
                                   np.full(4, 0.25), atol=1e-12)

    def test_uniform_from_lambda1_just_above_unit_fraction(self):
        for k in range(2, 11):
            for offset in [1e-13, 2.5e-13, 3e-12]:
                lambda1 = 1.0/k + offset
                dist = uniform_from_lambda1(lambda1).expand()
                self.assertAlmostEqual(math.fsum(dist.coefficients), 1.0, places=12)
                self.assertEqual(dist.lambda1, lambda1)
                self.assertEqual(dist.n_modes, k)

    def test_peaked_from_lambda1(self):
        self.assertEqual(list(peaked_from_lambda1(1.0).expand()), [1.0])
        spec = peaked_from_lambda1(0.3)
        self.assertAlmostEqual(spec.purity, 0.09, places=12)

    def test_make_extremal_aliases(self):
        self.assertEqual(make_extremal('min', P=0.2, lambda1=0.3).kind, 'min_pl1')
        self.assertEqual(make_extremal('max', P=0.2, lambda1=0.3).kind, 'max_pl1')
        self.assertEqual(make_extremal('uniform_p', P=0.2).kind, 'uniform_p')

    def test_make_extremal_missing_parameter(self):
        with self.assertRaises(ValueError):
            make_extremal('min', lambda1=0.3)
        with self.assertRaises(ValueError):
            make_extremal('peaked_l1', P=0.2)


class TestGammaUniform(unittest.TestCase):

    def test_worked_triple(self):
        out = gamma_uniform(make_distribution([0.4, 0.3, 0.2, 0.1]), 2, 3, 4)
        np.testing.assert_allclose(out.coefficients, [0.4, 0.257735, 0.257735, 0.084530],
                                   atol=1e-6)
        self.assertAlmostEqual(_moments(out)[1], 0.3, places=12)

    def test_clamp_branch(self):
        out = gamma_uniform(make_distribution([0.5, 0.48, 0.01, 0.01]), 2, 3, 4)
        np.testing.assert_allclose(out.coefficients, [0.5, 0.479783, 0.020217, 0.0],
                                   atol=1e-6)
        self.assertAlmostEqual(_moments(out)[1], 0.25 + 0.48**2 + 2e-4, places=12)

    def test_equal_triple_is_fixed(self):
        dist = make_distribution([0.4, 0.2, 0.2, 0.2])
        out = gamma_uniform(dist, 2, 3, 4)
        np.testing.assert_allclose(out.coefficients, dist.coefficients, atol=1e-15)

    def test_index_errors(self):
        dist = make_distribution([0.4, 0.3, 0.2, 0.1])
        with self.assertRaises(TouchesLambda1Error):
            gamma_uniform(dist, 1, 2, 3)
        with self.assertRaises(IndexOutOfRangeError):
            gamma_uniform(dist, 2, 3, 5)
        with self.assertRaises(IndexOutOfRangeError):
            gamma_uniform(dist, 3, 2, 4)


class TestGammaPeak(unittest.TestCase):

    def test_uncapped_branch(self):
        out = gamma_peak(make_distribution([0.4, 0.3, 0.2, 0.1]), 2, 3, 4, lambda1_cap=0.4)
        np.testing.assert_allclose(out.coefficients, [0.4, 0.315470, 0.142265, 0.142265],
                                   atol=1e-6)

    def test_capped_branch(self):
        out = gamma_peak(make_distribution([0.28, 0.27, 0.26, 0.19]), 2, 3, 4,
                         lambda1_cap=0.28)
        np.testing.assert_allclose(out.coefficients, [0.28, 0.28, 0.246458, 0.193542],
                                   atol=1e-6)
        total, purity = _moments(out)
        self.assertAlmostEqual(total, 1.0, places=12)
        self.assertAlmostEqual(purity, 0.28**2 + 0.27**2 + 0.26**2 + 0.19**2, places=12)

    def test_bad_cap(self):
        with self.assertRaises(OutOfRangeError):
            gamma_peak(make_distribution([0.4, 0.3, 0.2, 0.1]), 2, 3, 4, lambda1_cap=0.2)


class TestRearrangementProperties(unittest.TestCase):

    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=4, max_value=10))
    def test_monotonicity(self, seed, S):
        rng = sklearn.utils.check_random_state(seed)
        dist = random_distribution(S=S, random_state=rng)
        j1, j2, j3 = sorted(rng.choice(np.arange(2, S + 1), size=3, replace=False).tolist())
        before = chi_series_esp(dist, S)
        uniform = chi_series_esp(gamma_uniform(dist, j1, j2, j3), S)
        peaked = chi_series_esp(gamma_peak(dist, j1, j2, j3), S)
        self.assertTrue(np.all(uniform.chi <= before.chi + 1e-12))
        self.assertTrue(np.all(peaked.chi >= before.chi - 1e-12))
        for N in range(S):
            if not np.isnan(uniform.ratio[N]) and not np.isnan(before.ratio[N]):
                self.assertLessEqual(uniform.ratio[N], before.ratio[N] + 1e-12)
            if not np.isnan(peaked.ratio[N]) and not np.isnan(before.ratio[N]):
                self.assertGreaterEqual(peaked.ratio[N], before.ratio[N] - 1e-12)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=4, max_value=12))
    def test_moments_are_preserved(self, seed, S):
        rng = sklearn.utils.check_random_state(seed)
        dist = random_distribution(S=S, random_state=rng)
        j1, j2, j3 = sorted(rng.choice(np.arange(2, S + 1), size=3, replace=False).tolist())
        for out in [gamma_uniform(dist, j1, j2, j3), gamma_peak(dist, j1, j2, j3)]:
            self.assertLessEqual(abs(out.lambda1 - dist.lambda1), 1e-15)
            total, purity = _moments(out)
            self.assertAlmostEqual(total, 1.0, places=12)
            self.assertAlmostEqual(purity, dist.purity, places=12)

    def test_minimizing_distribution_is_fixed(self):
        dist = minimizing_distribution(P=0.2, lambda1=0.3).expand()
        for triple in itertools.combinations(range(2, dist.n_modes + 1), 3):
            out = gamma_uniform(dist, *triple)
            self.assertLess(np.max(np.abs(out.coefficients - dist.coefficients)), 1e-12)

    def test_maximizing_distribution_is_fixed(self):
        dist = maximizing_distribution(P=0.2, lambda1=0.3, S=12).expand()
        for triple in itertools.combinations(range(2, dist.n_modes + 1), 3):
            out = gamma_peak(dist, *triple)
            self.assertLess(np.max(np.abs(out.coefficients - dist.coefficients)), 1e-12)

    def test_repeated_rearrangements_approach_extremes(self):
        dist = random_distribution_constrained(P=0.2, lambda1=0.3, S=12, random_state=5)
        lower = _converge(dist, gamma_uniform, sweeps=3000, random_state=0)
        upper = _converge(dist, gamma_peak, sweeps=3000, random_state=1)
        P, lambda1 = dist.purity, dist.lambda1
        for N in [3, 4, 5]:
            chi_lower = chi_series_esp(lower, N).chi[N]
            chi_upper = chi_series_esp(upper, N).chi[N]
            chi = chi_series_esp(dist, N).chi[N]
            self.assertLessEqual(chi_lower, chi + 1e-12)
            self.assertGreaterEqual(chi_upper, chi - 1e-12)
            self.assertGreaterEqual(chi_lower, chi_min_exact(P, lambda1, N) - 1e-9)
            self.assertLessEqual(chi_upper, chi_max_exact(P, lambda1, N) + 1e-9)


if __name__ == '__main__':
    unittest.main()
