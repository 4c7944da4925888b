"""
Unit tests for Schmidt distributions, their summaries and samplers.
"""

# License: MIT

import math
import os
import tempfile
import unittest

import numpy as np

from hypothesis import given, settings
from hypothesis import strategies as st

from coboson import (SchmidtDistribution, make_distribution, summarize,
                     lambda1_min, lambda1_max, p_min, p_max, feasible,
                     minimal_support, random_distribution,
                     random_distribution_constrained, load_distribution,
                     dump_distribution)
from coboson.exceptions import (EmptyInputError, InfeasiblePairError,
                                NegativeCoefficientError, NotNormalizedError,
                                OutOfRangeError)


class TestMakeDistribution(unittest.TestCase):

    def test_sorts_coefficients(self):
        dist = make_distribution([0.3, 0.2, 0.5])
        self.assertEqual(list(dist), [0.5, 0.3, 0.2])

    def test_product_state(self):
        dist = make_distribution([1.0])
        self.assertEqual(list(dist), [1.0])
        self.assertEqual(dist.n_modes, 1)

    def test_renormalize(self):
        dist = make_distribution([2, 1, 1], renormalize=True)
        self.assertEqual(list(dist), [0.5, 0.25, 0.25])

    def test_empty_input(self):
        with self.assertRaises(EmptyInputError):
            make_distribution([])

    def test_negative_coefficient(self):
        with self.assertRaises(NegativeCoefficientError):
            make_distribution([0.6, 0.5, -0.1])

    def test_roundoff_negative_is_clamped(self):
        dist = make_distribution([0.5, 0.5, -1e-16])
        self.assertEqual(dist.coefficients[-1], 0.0)
        self.assertEqual(dist.n_positive, 2)

    def test_not_normalized(self):
        with self.assertRaises(NotNormalizedError):
            make_distribution([0.5, 0.3])

    def test_coefficients_are_read_only(self):
        dist = make_distribution([0.5, 0.5])
        with self.assertRaises(ValueError):
            dist.coefficients[0] = 0.7
        with self.assertRaises(AttributeError):
            dist.coefficients = np.array([1.0])

    def test_unsorted_direct_construction(self):
        with self.assertRaises(ValueError):
            SchmidtDistribution(coefficients=[0.2, 0.8])


class TestSummarize(unittest.TestCase):

    def test_power_sums(self):
        summary = summarize(make_distribution([0.5, 0.3, 0.2]), kmax=3)
        self.assertEqual(summary.lambda1, 0.5)
        self.assertAlmostEqual(summary.purity, 0.38, places=12)
        self.assertAlmostEqual(summary.power_sum(3), 0.16, places=12)

    def test_product_state(self):
        summary = summarize(make_distribution([1.0]))
        self.assertEqual(summary.lambda1, 1.0)
        self.assertEqual(summary.purity, 1.0)
        self.assertEqual(summary.schmidt_number, 1.0)
        self.assertEqual(summary.geometric_entanglement, 0.0)

    def test_uniform(self):
        summary = summarize(make_distribution([0.25]*4))
        self.assertAlmostEqual(summary.purity, 0.25, places=12)
        self.assertAlmostEqual(summary.schmidt_number, 4.0, places=12)
        self.assertTrue(summary.near_boundary)

    def test_interior_is_not_near_boundary(self):
        summary = summarize(make_distribution([0.5, 0.3, 0.2]))
        self.assertFalse(summary.near_boundary)

    def test_kmax_below_two(self):
        with self.assertRaises(OutOfRangeError):
            summarize(make_distribution([0.5, 0.5]), kmax=1)

    def test_frame_columns(self):
        df = summarize(make_distribution([0.5, 0.3, 0.2]), kmax=3).to_frame()
        self.assertEqual(len(df), 1)
        for column in ['lambda1', 'purity', 'M1', 'M2', 'M3']:
            self.assertIn(column, df.columns)


class TestFeasibleRegion(unittest.TestCase):

    def test_lambda1_min(self):
        self.assertAlmostEqual(lambda1_min(0.2), 0.2, places=12)
        self.assertAlmostEqual(lambda1_min(0.001), 0.001, places=12)
        self.assertEqual(round(lambda1_min(0.3), 5), 0.31455)
        self.assertEqual(lambda1_min(1.0), 1.0)

    def test_lambda1_max(self):
        self.assertEqual(lambda1_max(0.25), 0.5)
        self.assertEqual(round(lambda1_max(0.001), 7), 0.0316228)
        self.assertEqual(lambda1_max(1.0), 1.0)

    def test_p_min_p_max(self):
        self.assertAlmostEqual(p_min(0.3), 0.09, places=12)
        self.assertAlmostEqual(p_max(0.3), 0.28, places=12)
        self.assertAlmostEqual(p_max(0.5), 0.5, places=12)
        self.assertEqual(p_min(1.0), 1.0)
        self.assertEqual(p_max(1.0), 1.0)

    def test_unit_fraction_pairs_are_feasible(self):
        for k in range(2, 60):
            self.assertEqual(lambda1_min(1.0/k), 1.0/k)
            self.assertTrue(feasible(P=1.0/k, lambda1=1.0/k))

    def test_p_max_just_above_unit_fraction(self):
        for k in range(2, 11):
            for offset in [1e-13, 3e-12]:
                lambda1 = 1.0/k + offset
                self.assertLessEqual(abs(p_max(lambda1) - 1.0/k), 1e-10)
                self.assertLessEqual(p_max(lambda1), lambda1)

    def test_feasible(self):
        self.assertTrue(feasible(P=0.2, lambda1=0.3))
        self.assertFalse(feasible(P=0.2, lambda1=0.5))
        self.assertFalse(feasible(P=0.2, lambda1=0.1))
        self.assertFalse(feasible(P=1.5, lambda1=0.3))
        self.assertFalse(feasible(P=0.0, lambda1=0.3))

    def test_out_of_range_purity(self):
        with self.assertRaises(OutOfRangeError):
            lambda1_min(0.0)
        with self.assertRaises(OutOfRangeError):
            lambda1_max(1.2)

    def test_minimal_support(self):
        self.assertEqual(minimal_support(P=0.2, lambda1=0.3), 6)
        self.assertEqual(minimal_support(P=0.2, lambda1=0.2), 5)
        self.assertEqual(minimal_support(P=1.0, lambda1=1.0), 1)
        self.assertTrue(math.isinf(minimal_support(P=0.25, lambda1=0.5)))

    @given(st.floats(min_value=0.01, max_value=1.0))
    def test_interval_is_ordered(self, P):
        self.assertLessEqual(P, lambda1_min(P) + 1e-12)
        self.assertLessEqual(lambda1_min(P), lambda1_max(P) + 1e-12)


class TestSamplers(unittest.TestCase):

    def test_single_mode(self):
        self.assertEqual(list(random_distribution(S=1, random_state=7)), [1.0])

    def test_seeded_draws_repeat(self):
        first = random_distribution(S=8, random_state=3)
        second = random_distribution(S=8, random_state=3)
        self.assertEqual(first, second)

    def test_bad_number_of_modes(self):
        with self.assertRaises(OutOfRangeError):
            random_distribution(S=0)

    def test_constrained(self):
        for seed in range(5):
            dist = random_distribution_constrained(P=0.2, lambda1=0.3, S=6,
                                                   random_state=seed)
            self.assertLessEqual(abs(dist.purity - 0.2), 1e-9)
            self.assertLessEqual(abs(dist.lambda1 - 0.3), 1e-9)
            self.assertEqual(dist.n_modes, 6)

    def test_constrained_infeasible(self):
        with self.assertRaises(InfeasiblePairError):
            random_distribution_constrained(P=0.2, lambda1=0.5, S=6, random_state=0)

    def test_constrained_too_few_modes(self):
        with self.assertRaises(InfeasiblePairError):
            random_distribution_constrained(P=0.2, lambda1=0.3, S=4, random_state=0)

    @settings(deadline=None, max_examples=50)
    @given(st.integers(min_value=0, max_value=2**31 - 1),
           st.integers(min_value=1, max_value=40))
    def test_generated_distributions_are_feasible(self, seed, S):
        summary = summarize(random_distribution(S=S, random_state=seed))
        self.assertLessEqual(summary.lambda1**2, summary.purity + 1e-12)
        self.assertLessEqual(summary.purity, summary.lambda1 + 1e-12)
        self.assertLessEqual(lambda1_min(summary.purity), summary.lambda1 + 1e-12)
        self.assertLessEqual(summary.lambda1, math.sqrt(summary.purity) + 1e-12)


class TestDistributionFiles(unittest.TestCase):

    def test_json_file(self):
        dist = make_distribution([0.5, 0.3, 0.2])
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'dist.json')
            dump_distribution(dist, path)
            self.assertEqual(load_distribution(path), dist)

    def test_csv_file(self):
        dist = make_distribution([0.5, 0.25, 0.25])
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'dist.csv')
            dump_distribution(dist, path)
            self.assertEqual(load_distribution(path), dist)

    def test_json_object_with_coefficients(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'dist.json')
            with open(path, 'w') as outfile:
                outfile.write('{"coefficients": [0.2, 0.8]}')
            self.assertEqual(list(load_distribution(path)), [0.8, 0.2])

    def test_missing_file(self):
        with self.assertRaises(OSError):
            load_distribution('/nonexistent/dist.json')


if __name__ == '__main__':
    unittest.main()
