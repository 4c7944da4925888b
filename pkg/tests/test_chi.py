"""
Unit tests for the normalization factor engines.
"""

# License: MIT

import math
import unittest
import warnings
from unittest import mock

import numpy as np

from hypothesis import given, settings
from hypothesis import strategies as st

from coboson import (ChiSeries, MultiplicityBlocks, make_distribution,
                     random_distribution, chi_series_esp, chi_series_newton_girard,
                     chi_multiplicity, chi_bruteforce, chi_series, ratio_series,
                     commutator_expectation, epsilon_norm)
from coboson.exceptions import (CancellationFailureError, NotNormalizedError,
                                OutOfRangeError, TooLargeError, UndefinedError)


def _newton_girard(dist, n_max):
    power_sums = [dist.power_sum(k) for k in range(1, max(n_max, 1) + 1)]
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', UserWarning)
        try:
            return chi_series_newton_girard(power_sums, n_max)
        except CancellationFailureError:
            return None


class TestEspEngine(unittest.TestCase):

    def test_three_modes(self):
        series = chi_series_esp(make_distribution([0.5, 0.3, 0.2]), 2)
        self.assertAlmostEqual(series.chi[2], 0.62, places=12)

    def test_pauli_blocking(self):
        series = chi_series_esp(make_distribution([0.5, 0.5]), 3)
        self.assertAlmostEqual(series.chi[2], 0.5, places=12)
        self.assertEqual(series.chi[3], 0.0)
        self.assertTrue(series.is_zero[3])
        self.assertTrue(np.isneginf(series.log_chi[3]))

    def test_first_entries_are_exact(self):
        series = chi_series_esp(random_distribution(S=9, random_state=11), 9)
        self.assertEqual(series.chi[0], 1.0)
        self.assertEqual(series.chi[1], 1.0)

    def test_zero_coefficients_are_ignored(self):
        series = chi_series_esp(make_distribution([0.5, 0.5, 0.0, 0.0]), 4)
        self.assertEqual(series.chi[3], 0.0)
        self.assertEqual(series.chi[4], 0.0)

    def test_log_domain_does_not_underflow(self):
        dist = make_distribution(np.full(20000, 1/20000))
        series = chi_series_esp(dist, 5000)
        self.assertTrue(np.all(np.isfinite(series.log_chi)))
        self.assertTrue(np.all(np.diff(series.log_chi) <= 0.0))

    def test_frame(self):
        df = chi_series_esp(make_distribution([0.5, 0.3, 0.2]), 3).to_frame()
        self.assertEqual(list(df.columns), ['N', 'chi', 'ratio'])
        self.assertEqual(len(df), 4)
        self.assertTrue(math.isnan(df['ratio'].iloc[-1]))

    def test_series_is_immutable(self):
        series = chi_series_esp(make_distribution([0.5, 0.5]), 2)
        with self.assertRaises(AttributeError):
            series.source = 'bruteforce'


class TestNewtonGirardEngine(unittest.TestCase):

    def test_power_sums(self):
        series = chi_series_newton_girard([1.0, 0.38, 0.16], 3)
        self.assertAlmostEqual(series.chi[2], 0.62, places=12)
        self.assertAlmostEqual(series.chi[3], 0.18, places=12)
        self.assertFalse(series.cancellation_flag)

    def test_product_state(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', UserWarning)
            series = chi_series_newton_girard([1.0, 1.0, 1.0, 1.0], 2)
        self.assertEqual(series.chi[2], 0.0)

    def test_purity_only(self):
        series = chi_series_newton_girard([1.0, 0.25], 2)
        self.assertAlmostEqual(series.chi[2], 0.75, places=12)

    def test_missing_power_sums(self):
        with self.assertRaises(ValueError):
            chi_series_newton_girard([1.0, 0.25], 3)

    def test_unnormalized_power_sums(self):
        with self.assertRaises(NotNormalizedError):
            chi_series_newton_girard([0.9, 0.25], 2)

    def test_cancellation_is_flagged(self):
        dist = make_distribution(np.full(40, 1/40))
        series = _newton_girard(dist, 40)
        if series is not None:
            self.assertTrue(series.cancellation_flag)


class TestMultiplicityEngine(unittest.TestCase):

    def test_birthday(self):
        series = chi_multiplicity(MultiplicityBlocks([(1/365, 365)]), 23)
        self.assertAlmostEqual(series.chi[23], 0.492703, places=6)

    def test_uniform_block(self):
        series = chi_multiplicity(MultiplicityBlocks([(0.25, 4)]), 2)
        self.assertAlmostEqual(series.chi[2], 0.75, places=12)

    def test_infinitesimal_tail(self):
        blocks = MultiplicityBlocks([(0.3, 2), (math.sqrt(0.02), 1)],
                                    tail_mass=0.4 - math.sqrt(0.02))
        series = chi_multiplicity(blocks, 3)
        self.assertAlmostEqual(series.chi[3], 0.513657, places=6)

    def test_large_tail_cut_approaches_tail(self):
        tail_mass = 0.4 - math.sqrt(0.02)
        blocks = MultiplicityBlocks([(0.3, 2), (math.sqrt(0.02), 1)], tail_mass=tail_mass)
        limit = chi_multiplicity(blocks, 3).chi[3]
        dist = make_distribution(blocks.expand(tail_modes=100000))
        self.assertLess(abs(chi_series_esp(dist, 3).chi[3] - limit), 1e-5)

    def test_from_distribution_groups_ties(self):
        blocks = MultiplicityBlocks.from_distribution(make_distribution([0.3, 0.4, 0.3]))
        self.assertEqual(blocks.blocks, ((0.4, 1), (0.3, 2)))
        self.assertEqual(blocks.total_multiplicity, 3)

    def test_invalid_blocks(self):
        with self.assertRaises(OutOfRangeError):
            MultiplicityBlocks([(0.5, 0), (0.5, 2)])
        with self.assertRaises(ValueError):
            MultiplicityBlocks([(0.25, 2), (0.5, 1)])
        with self.assertRaises(NotNormalizedError):
            MultiplicityBlocks([(0.25, 3)])

    def test_tail_needs_modes_to_expand(self):
        blocks = MultiplicityBlocks([(0.5, 1)], tail_mass=0.5)
        with self.assertRaises(ValueError):
            blocks.expand()


class TestBruteForce(unittest.TestCase):

    def test_subsets(self):
        dist = make_distribution([0.5, 0.3, 0.2])
        self.assertAlmostEqual(chi_bruteforce(dist, 3), 0.18, places=12)
        self.assertAlmostEqual(chi_bruteforce(dist, 2), 0.62, places=12)
        self.assertEqual(chi_bruteforce(dist, 0), 1.0)
        self.assertEqual(chi_bruteforce(dist, 4), 0.0)

    def test_too_many_modes(self):
        with self.assertRaises(TooLargeError):
            chi_bruteforce(make_distribution(np.full(25, 1/25)), 2)

    def test_series_is_not_smoothed(self):
        # A non-monotone oracle must reach the caller unchanged.
        values = [1.0, 1.0 + 1e-14, 0.5, 0.6]
        with mock.patch('coboson.chi.chi_bruteforce', side_effect=lambda dist, N: values[N]):
            series = chi_series(make_distribution([0.4, 0.3, 0.2, 0.1]), 3,
                                engine='bruteforce')
        self.assertEqual(series.chi[1], 1.0)
        self.assertAlmostEqual(series.chi[2], 0.5, places=12)
        self.assertAlmostEqual(series.chi[3], 0.6, places=12)


class TestEngineAgreement(unittest.TestCase):

    def test_dispatcher(self):
        dist = make_distribution([0.4, 0.3, 0.2, 0.1])
        for engine in ['esp', 'newtongirard', 'multiplicity', 'bruteforce']:
            series = chi_series(dist, 4, engine=engine)
            self.assertEqual(series.source, engine)
            self.assertAlmostEqual(series.chi[4], 24*0.4*0.3*0.2*0.1, places=12)

    def test_autocorrected_engine(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            series = chi_series(make_distribution([0.5, 0.5]), 2, engine='espp')
        self.assertEqual(series.source, 'esp')
        self.assertTrue(any(issubclass(item.category, UserWarning) for item in caught))

    def test_product_state(self):
        dist = make_distribution([1.0])
        for engine in ['esp', 'newtongirard', 'multiplicity', 'bruteforce']:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', UserWarning)
                series = chi_series(dist, 3, engine=engine)
            self.assertEqual(series.chi.tolist(), [1.0, 1.0, 0.0, 0.0])

    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=1, max_value=12))
    def test_engines_match_subset_enumeration(self, seed, S):
        dist = random_distribution(S=S, random_state=seed)
        reference = [chi_bruteforce(dist, N) for N in range(S + 1)]
        esp = chi_series_esp(dist, S)
        multiplicity = chi_multiplicity(MultiplicityBlocks.from_distribution(dist), S)
        newton = _newton_girard(dist, S)
        for N in range(S + 1):
            self.assertLessEqual(abs(esp.chi[N] - reference[N]), 1e-9*reference[N])
            self.assertLessEqual(abs(multiplicity.chi[N] - reference[N]), 1e-9*reference[N])
            if newton is None:
                continue
            if newton.condition[N] > 1e5:
                self.assertLessEqual(abs(newton.chi[N] - reference[N]), 1e-6)
            else:
                self.assertLessEqual(abs(newton.chi[N] - reference[N]), 1e-9*reference[N])

    @settings(deadline=None, max_examples=60)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=3, max_value=60))
    def test_universal_identities(self, seed, S):
        dist = random_distribution(S=S, random_state=seed)
        series = chi_series_esp(dist, 3)
        self.assertEqual(series.chi[0], 1.0)
        self.assertEqual(series.chi[1], 1.0)
        self.assertLessEqual(abs(series.chi[2] - (1 - dist.purity)), 1e-11)
        identity = 1 - 3*dist.purity + 2*dist.power_sum(3)
        self.assertLessEqual(abs(series.chi[3] - identity), 1e-11)

    @settings(deadline=None, max_examples=40)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=1, max_value=30))
    def test_ratio_is_a_probability(self, seed, S):
        series = chi_series_esp(random_distribution(S=S, random_state=seed), S + 1)
        ratio = series.ratio[~np.isnan(series.ratio)]
        self.assertTrue(np.all(ratio >= 0.0))
        self.assertTrue(np.all(ratio <= 1.0))


class TestDerivedQuantities(unittest.TestCase):

    def test_ratio_series(self):
        ratio = ratio_series(chi_series_esp(make_distribution([0.5, 0.5]), 2))
        self.assertAlmostEqual(ratio[1], 0.5, places=12)
        ratio = ratio_series(chi_series_esp(make_distribution([0.5, 0.3, 0.2]), 3))
        self.assertAlmostEqual(ratio[2], 0.18/0.62, places=12)
        ratio = ratio_series(chi_series_esp(make_distribution([1.0]), 3))
        self.assertEqual(ratio[1], 0.0)
        self.assertTrue(np.isnan(ratio[2]))

    def test_commutator_expectation(self):
        self.assertEqual(commutator_expectation(1.0), 1.0)
        self.assertEqual(commutator_expectation(0.5), 0.0)
        self.assertAlmostEqual(commutator_expectation(0.290323), -0.419354, places=6)
        with self.assertRaises(OutOfRangeError):
            commutator_expectation(1.5)

    def test_epsilon_norm(self):
        series = chi_series_esp(make_distribution([0.5, 0.3, 0.2]), 3)
        self.assertEqual(epsilon_norm(series, 1), 0.0)
        self.assertAlmostEqual(epsilon_norm(series, 2), 1 - 2*0.62 + 0.18/0.62, places=12)

    def test_epsilon_norm_two_modes(self):
        series = chi_series_esp(make_distribution([0.5, 0.5]), 3)
        self.assertAlmostEqual(epsilon_norm(series, 2), 0.0, places=12)

    def test_epsilon_norm_undefined(self):
        series = chi_series_esp(make_distribution([0.5, 0.5]), 4)
        with self.assertRaises(UndefinedError):
            epsilon_norm(series, 3)

    def test_epsilon_norm_out_of_range(self):
        series = chi_series_esp(make_distribution([0.5, 0.5]), 3)
        with self.assertRaises(OutOfRangeError):
            epsilon_norm(series, 3)

    def test_series_validation(self):
        with self.assertRaises(AssertionError):
            ChiSeries(log_chi=[0.0, 0.5], source='esp')


if __name__ == '__main__':
    unittest.main()
