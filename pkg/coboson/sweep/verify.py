"""
The :mod:`coboson.sweep.verify` module cross-checks the chi engines,
the containment of random distributions within the bound hierarchy,
and the monotonicity and fixed points of the rearrangements on
random cases.
"""

# License: MIT

import itertools
import logging
import math
import warnings

import joblib
import numpy as np
import sklearn.utils

from coboson.bounds import bounds_report
from coboson.chi import (MultiplicityBlocks, chi_bruteforce, chi_multiplicity,
                         chi_series_esp, chi_series_newton_girard)
from coboson.exceptions import (CancellationFailureError, HierarchyViolation,
                                SamplingExhaustedError)
from coboson.extremal import (gamma_peak, gamma_uniform, maximizing_distribution,
                              minimizing_distribution)
from coboson.schmidt import (SchmidtDistribution, lambda1_min, minimal_support,
                             random_distribution, random_distribution_constrained)
from coboson.utils._definition import _EXIT_INTERNAL, _EXIT_OK

logger = logging.getLogger(__name__)

_ENGINE_RTOL = 1e-9
_FLAGGED_ATOL = 1e-6
_IDENTITY_TOL = 1e-11
_CONTAINMENT_TOL = 1e-9
_GAMMA_TOL = 1e-12
_FIXED_POINT_TOL = 1e-12
_MAX_TRIPLES = 50


def _relative_deviation(value: float, reference: float) -> float:
    if reference == 0.0:
        return 0.0 if value == 0.0 else math.inf
    return abs(value - reference)/reference


def _outcome(passed: bool, deviation: float, skipped=False) -> dict:
    return dict(passed=bool(passed), deviation=float(deviation), skipped=bool(skipped))


def _interior_pair(rng, P_low: float, P_high: float, weight_low: float,
                   weight_high: float):
    P = rng.uniform(P_low, P_high)
    weight = rng.uniform(weight_low, weight_high)
    lower = lambda1_min(P)
    return P, lower + weight*(math.sqrt(P) - lower)


def _engine_agreement_case(seed, dist=None) -> dict:
    """Compares every engine against the brute-force subset sum."""

    rng = sklearn.utils.check_random_state(seed)
    if dist is None:
        dist = random_distribution(S=int(rng.randint(1, 13)), random_state=rng)
    S = dist.n_modes

    reference = [chi_bruteforce(dist=dist, N=N) for N in range(S + 1)]
    esp = chi_series_esp(dist=dist, n_max=S)
    multiplicity = chi_multiplicity(blocks=MultiplicityBlocks.from_distribution(dist),
                                    n_max=S)
    if esp.n_max < S or multiplicity.n_max < S:
        return _outcome(passed=False, deviation=math.inf)
    worst = max(_relative_deviation(float(series.chi[N]), reference[N])
                for series in [esp, multiplicity] for N in range(S + 1))
    passed = worst <= _ENGINE_RTOL

    power_sums = [dist.power_sum(k) for k in range(1, S + 1)]
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', UserWarning)
        try:
            newton = chi_series_newton_girard(power_sums=power_sums, n_max=S)
        except CancellationFailureError:
            newton = None
    if newton is not None:
        for N in range(S + 1):
            if newton.condition[N] > 1e5:
                passed &= abs(float(newton.chi[N]) - reference[N]) <= _FLAGGED_ATOL
            else:
                deviation = _relative_deviation(float(newton.chi[N]), reference[N])
                passed &= deviation <= _ENGINE_RTOL
                worst = max(worst, deviation)

    if S >= 2:
        P = dist.purity
        passed &= abs(float(esp.chi[2]) - (1.0 - P)) <= 1e-12
    if S >= 3:
        identity = 1.0 - 3.0*dist.purity + 2.0*dist.power_sum(3)
        passed &= abs(float(esp.chi[3]) - identity) <= _IDENTITY_TOL
    return _outcome(passed=passed, deviation=worst)


def _hierarchy_case(seed) -> dict:
    """Checks that a random distribution sits within its bounds."""

    rng = sklearn.utils.check_random_state(seed)
    P, lambda1 = _interior_pair(rng, P_low=0.05, P_high=0.6, weight_low=0.05,
                                weight_high=0.95)
    S = minimal_support(P=P, lambda1=lambda1) + int(rng.randint(0, 4))
    try:
        dist = random_distribution_constrained(P=P, lambda1=lambda1, S=S, random_state=rng)
    except SamplingExhaustedError:
        return _outcome(passed=True, deviation=0.0, skipped=True)

    n_max = min(dist.n_modes, 12)
    series = chi_series_esp(dist=dist, n_max=n_max)
    worst = 0.0
    for N in range(2, n_max + 1):
        try:
            report = bounds_report(P=dist.purity, lambda1=dist.lambda1, N=N)
        except HierarchyViolation:
            return _outcome(passed=False, deviation=math.inf)
        chi = float(series.chi[N])
        lower, upper = report.chain[2], report.chain[3]
        worst = max(worst, lower - chi, chi - upper)
    return _outcome(passed=worst <= _CONTAINMENT_TOL, deviation=max(worst, 0.0))


def _random_triples(rng, S: int) -> list:
    triples = list(itertools.combinations(range(2, S + 1), 3))
    if len(triples) <= _MAX_TRIPLES:
        return triples
    picks = rng.choice(len(triples), size=_MAX_TRIPLES, replace=False)
    return [triples[pick] for pick in picks]


def _gamma_case(seed) -> dict:
    """Checks the monotonicity of both rearrangements on chi and ratio."""

    rng = sklearn.utils.check_random_state(seed)
    S = int(rng.randint(4, 11))
    dist = random_distribution(S=S, random_state=rng)
    j1, j2, j3 = sorted(rng.choice(np.arange(2, S + 1), size=3, replace=False).tolist())

    before = chi_series_esp(dist=dist, n_max=S)
    uniform = chi_series_esp(dist=gamma_uniform(dist, j1, j2, j3), n_max=S)
    peaked = chi_series_esp(dist=gamma_peak(dist, j1, j2, j3), n_max=S)

    worst = max(float(np.max(uniform.chi - before.chi)),
                float(np.max(before.chi - peaked.chi)), 0.0)
    with np.errstate(invalid='ignore'):
        uniform_ratio = np.nan_to_num(uniform.ratio - before.ratio, nan=0.0)
        peaked_ratio = np.nan_to_num(before.ratio - peaked.ratio, nan=0.0)
    worst = max(worst, float(np.max(uniform_ratio)), float(np.max(peaked_ratio)))
    return _outcome(passed=worst <= _GAMMA_TOL, deviation=worst)


def _fixed_point_case(seed) -> dict:
    """Checks that the extremal distributions are left unchanged."""

    rng = sklearn.utils.check_random_state(seed)
    P, lambda1 = _interior_pair(rng, P_low=0.05, P_high=0.6, weight_low=0.05,
                                weight_high=0.95)
    worst = 0.0

    lower = minimizing_distribution(P=P, lambda1=lambda1).expand()
    if lower.n_modes >= 4:
        for triple in _random_triples(rng, lower.n_modes):
            after = gamma_uniform(lower, *triple)
            worst = max(worst, float(np.max(np.abs(after.coefficients
                                                   - lower.coefficients))))

    L = maximizing_distribution(P=P, lambda1=lambda1).L
    remaining = P - (L - 1)*lambda1**2
    threshold = ((L - 1)*P + 1.0 - 2.0*(L - 1)*lambda1)/remaining
    n_modes = max(L + 1, int(math.ceil(threshold)) + 1) + int(rng.randint(0, 4))
    upper = maximizing_distribution(P=P, lambda1=lambda1, S=n_modes).expand()
    if upper.n_modes >= 4:
        for triple in _random_triples(rng, upper.n_modes):
            after = gamma_peak(upper, *triple)
            worst = max(worst, float(np.max(np.abs(after.coefficients
                                                   - upper.coefficients))))
    return _outcome(passed=worst <= _FIXED_POINT_TOL, deviation=worst)


_SUITES = dict(engine_agreement=_engine_agreement_case,
               hierarchy=_hierarchy_case,
               gamma_monotonicity=_gamma_case,
               fixed_points=_fixed_point_case)


def _summarize_suite(outcomes: list) -> dict:
    ran = [outcome for outcome in outcomes if not outcome['skipped']]
    deviations = [outcome['deviation'] for outcome in ran]
    return dict(cases=len(outcomes),
                passed=sum(outcome['passed'] for outcome in ran),
                failed=sum(not outcome['passed'] for outcome in ran),
                skipped=len(outcomes) - len(ran),
                worst_deviation=max(deviations) if deviations else 0.0)


def run_verify(seed=0, cases=100, jobs=1, verbose=0):
    """Runs the randomized verification suites.

    Parameters
    ----------
    seed : int, optional (default=0)
        The master seed, from which the seed of every case is drawn.

    cases : int, optional (default=100)
        The number of random cases per suite.

    jobs : int, optional (default=1)
        The number of jobs to run in parallel.

    verbose : int, optional (default=0)
        Determines the verbosity of joblib.

    Returns
    -------
    status : int
        0 when every case passes, and 4 otherwise.

    report : dict
        Per suite counts of passed, failed and skipped cases, with the
        worst deviation observed.
    """

    master = sklearn.utils.check_random_state(seed)
    seeds = master.randint(0, 2**31 - 1, size=(len(_SUITES), cases))
    parallel = joblib.Parallel(n_jobs=jobs, verbose=verbose, pre_dispatch='2*n_jobs')

    suites = {}
    for row, (name, case) in enumerate(_SUITES.items()):
        logger.info('Running %s cases of the %s suite.', cases, name)
        outcomes = parallel(joblib.delayed(case)(int(case_seed))
                            for case_seed in seeds[row])
        if name == 'engine_agreement':
            outcomes.append(_engine_agreement_case(
                seed=None, dist=SchmidtDistribution(coefficients=[1.0])))
        suites[name] = _summarize_suite(outcomes)
        if suites[name]['failed']:
            logger.error('The %s suite failed %s of %s cases.', name,
                         suites[name]['failed'], suites[name]['cases'])

    passed = all(suite['failed'] == 0 for suite in suites.values())
    report = dict(seed=seed, cases=cases, passed=passed, suites=suites)
    return (_EXIT_OK if passed else _EXIT_INTERNAL), report
