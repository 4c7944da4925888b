"""
Composite boson normalization package for Python.
=================================================
"""

# License: MIT

from __future__ import absolute_import


__version__ = '0.1.0'


from .exceptions import (CobosonError, EmptyInputError, NegativeCoefficientError,
                         NotNormalizedError, OutOfRangeError, InfeasiblePairError,
                         SamplingExhaustedError, CancellationFailureError,
                         TooLargeError, UndefinedError, DegeneratePeakedError,
                         STooSmallError, IndexOutOfRangeError, TouchesLambda1Error,
                         NotApplicableError, HierarchyViolation)
from .schmidt import (SchmidtDistribution, DistributionSummary, make_distribution,
                      summarize, lambda1_min, lambda1_max, p_min, p_max, feasible,
                      minimal_support, random_distribution,
                      random_distribution_constrained, load_distribution,
                      dump_distribution)
from .chi import (ChiSeries, MultiplicityBlocks, chi_series_esp,
                  chi_series_newton_girard, chi_multiplicity, chi_bruteforce,
                  chi_series, ratio_series, commutator_expectation, epsilon_norm)
from .extremal import (ExtremalSpec, minimizing_distribution, maximizing_distribution,
                       peaked_from_P, uniform_from_P, peaked_from_lambda1,
                       uniform_from_lambda1, make_extremal, gamma_uniform, gamma_peak)
from .bounds import (BoundsReport, chi_min_exact, chi_min_smooth, chi_max_exact,
                     chi_max_smooth, chi_max_tricomi, chi_upper_P, chi_lower_P,
                     chi_upper_lambda1, chi_lower_lambda1, bounds_report,
                     ratio_bounds, bounds_frame)
from .sweep import SweepConfig, run_sweep, run_verify, figure_params


__all__ = ['CobosonError', 'EmptyInputError', 'NegativeCoefficientError',
           'NotNormalizedError', 'OutOfRangeError', 'InfeasiblePairError',
           'SamplingExhaustedError', 'CancellationFailureError',
           'TooLargeError', 'UndefinedError', 'DegeneratePeakedError',
           'STooSmallError', 'IndexOutOfRangeError', 'TouchesLambda1Error',
           'NotApplicableError', 'HierarchyViolation',
           'SchmidtDistribution', 'DistributionSummary',
           'make_distribution', 'summarize',
           'lambda1_min', 'lambda1_max', 'p_min', 'p_max',
           'feasible', 'minimal_support', 'random_distribution',
           'random_distribution_constrained',
           'load_distribution', 'dump_distribution',
           'ChiSeries', 'MultiplicityBlocks',
           'chi_series_esp', 'chi_series_newton_girard',
           'chi_multiplicity', 'chi_bruteforce', 'chi_series',
           'ratio_series', 'commutator_expectation', 'epsilon_norm',
           'ExtremalSpec', 'minimizing_distribution',
           'maximizing_distribution', 'peaked_from_P', 'uniform_from_P',
           'peaked_from_lambda1', 'uniform_from_lambda1',
           'make_extremal', 'gamma_uniform', 'gamma_peak',
           'BoundsReport', 'chi_min_exact', 'chi_min_smooth',
           'chi_max_exact', 'chi_max_smooth', 'chi_max_tricomi',
           'chi_upper_P', 'chi_lower_P', 'chi_upper_lambda1',
           'chi_lower_lambda1', 'bounds_report', 'ratio_bounds',
           'bounds_frame', 'SweepConfig', 'run_sweep', 'run_verify',
           'figure_params']
