"""
The :mod:`coboson.utils._definition` module collects the
assortment of library definitions.
"""

# License: MIT


# Tolerances. See the docs for the meaning of each one.
_NORMALIZATION_TOL = 1e-12
_NEGATIVE_CLAMP_TOL = 1e-15
_TIE_TOL = 1e-15
_SNAP_TOL = 1e-9
_FEASIBILITY_TOL = 1e-12
_CANCELLATION_TOL = 1e-9
_SQRT_CLAMP_TOL = 1e-12
_DEGENERATE_TOL = 1e-12
_HIERARCHY_RTOL = 1e-10
_HIERARCHY_ATOL = 1e-12
_EPSILON_NORM_TOL = 1e-12


# Condition estimate of the alternating Newton-Girard sum above
# which the series is flagged as cancellation-prone.
_CANCELLATION_CONDITION = 1e5


_BRUTEFORCE_MAX_MODES = 24


_N_CAP = 10**6


# Largest L for which the terminating Tricomi series is evaluated.
_TRICOMI_MAX_L = 30


_ENGINE_CHOICE = ['esp', 'newtongirard', 'multiplicity', 'bruteforce']


_EXTREMAL_KIND = ['min_pl1', 'max_pl1', 'peaked_p', 'uniform_p',
                  'peaked_l1', 'uniform_l1']


# Order of the hierarchy chain, weakest lower bound first.
_CHAIN_LABELS = ['uniform_L1', 'uniform_P', 'min_PL1',
                 'max_PL1', 'peaked_P', 'peaked_L1']


_SWEEP_MODE = ['chi', 'bounds', 'extremal', 'sweep_lambda1', 'sweep_p',
               'sweep_n', 'verify', 'figure']


_FIGURE_CHOICE = ['fig1', 'fig2', 'fig3', 'fig4', 'fig5']


_FORMAT_CHOICE = ['csv', 'json']


_OUTPUT_DIR_ENV = 'COBOSON_OUTPUT_DIR'


_EXIT_OK = 0
_EXIT_BAD_ARGUMENTS = 1
_EXIT_INFEASIBLE = 2
_EXIT_IO_FAILURE = 3
_EXIT_INTERNAL = 4
