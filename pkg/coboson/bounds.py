"""
The :mod:`coboson.bounds` module evaluates the saturable upper and
lower bounds on the normalization factor chi_N and on the ratio
chi_{N+1} / chi_N, and assembles them into a self-checked hierarchy.

The bounds come in three families:

* combined bounds at fixed purity P and largest coefficient lambda1,
  which are attained by the minimizing and maximizing distributions,
* their smooth relaxations, in which a ceiling function is omitted,
* bounds that only know P or only know lambda1.
"""

# License: MIT

from __future__ import annotations

import logging
import math
import typing

import numpy as np
import pandas as pd

from coboson.base import AbstractRecord
from coboson.exceptions import HierarchyViolation, NotApplicableError
from coboson.extremal import (maximizing_distribution, minimizing_distribution,
                              uniform_from_lambda1, uniform_from_P)
from coboson.schmidt import _check_feasible
from coboson.utils._checks import _check_n, _check_n_array, _check_unit_interval
from coboson.utils._definition import (_CHAIN_LABELS, _DEGENERATE_TOL,
                                       _HIERARCHY_ATOL, _HIERARCHY_RTOL,
                                       _TRICOMI_MAX_L)
from coboson.utils._numerics import (_exp_or_zero, _log, _log_binomial,
                                     _log_factorial, _log_falling, _log_ratio,
                                     _logsumexp, _snap, _snapped_ceil, _xlog1py,
                                     _xlogy)

logger = logging.getLogger(__name__)


def _log_chi_peaked(s: float, n: np.ndarray) -> np.ndarray:
    """chi_N = (1 - s)**(N - 1) (1 + (N - 1) s) of one coefficient s
    followed by an infinitesimal tail."""

    with np.errstate(divide='ignore', invalid='ignore'):
        out = _xlog1py(n - 1, -s) + np.log1p((n - 1)*s)
    return np.where(n == 0, 0.0, out)


def _log_chi_two_blocks(value: float, multiplicity: int, last: float,
                        n: np.ndarray) -> np.ndarray:
    """chi_N of `multiplicity` copies of `value` plus one coefficient `last`."""

    lf = _log_falling(float(multiplicity), int(n.max()))
    out = _xlogy(n, value) + lf[n]
    shifted = np.maximum(n - 1, 0)
    second = np.full(n.shape, -np.inf)
    positive = n >= 1
    second[positive] = (_log(n[positive].astype(float)) + _log(last)
                        + _xlogy(shifted[positive], value) + lf[shifted[positive]])
    return np.logaddexp(out, second)


def _log_chi_min_exact(P: float, lambda1: float, n: np.ndarray) -> np.ndarray:
    if P - lambda1**2 <= _DEGENERATE_TOL:
        return _log_chi_peaked(s=math.sqrt(P), n=n)

    spec = minimizing_distribution(P=P, lambda1=lambda1)
    middle = spec.lambda2 or 0.0
    last = spec.lambdaS or 0.0
    lf = _log_falling(float(max(spec.S - 2, 0)), int(n.max()))
    log_n = _log(n.astype(float))
    log_n_minus_one = _log(np.maximum(n - 1, 0).astype(float))

    terms = []
    for a in [0, 1]:
        for b in [0, 1]:
            k = n - a - b
            valid = k >= 0
            term = np.full(n.shape, -np.inf)
            # N! / (N - a - b)! ways to seat lambda1 and lambdaS.
            arrangements = np.zeros(n.shape)
            if a + b >= 1:
                arrangements = arrangements + log_n
            if a + b == 2:
                arrangements = arrangements + log_n_minus_one
            with np.errstate(invalid='ignore'):
                values = (arrangements + _xlogy(a, lambda1) + _xlogy(b, last)
                          + _xlogy(np.maximum(k, 0), middle) + lf[np.maximum(k, 0)])
            term[valid] = values[valid]
            terms.append(term)
    return _logsumexp(np.vstack(terms), axis=0)


def _log_chi_max_exact(P: float, lambda1: float, n: np.ndarray) -> np.ndarray:
    spec = maximizing_distribution(P=P, lambda1=lambda1)
    copies = spec.L - 1
    lf = _log_falling(float(copies), int(min(n.max(), copies)))

    out = np.empty(n.shape)
    for index, N in enumerate(n.tolist()):
        terms = []
        for K in [0, 1]:
            if N - K < 0:
                continue
            M = np.arange(min(N - K, copies) + 1)
            rest = N - M - K
            terms.append(lf[M] + _xlogy(M, lambda1) + _xlogy(K, spec.lambdaL)
                         + _xlogy(rest, spec.lambdaSigma) + _log_factorial(N)
                         - _log_factorial(M) - _log_factorial(rest))
        out[index] = _logsumexp(np.concatenate(terms))
    return out


def _log_chi_min_smooth(P: float, lambda1: float,
                        n: np.ndarray) -> typing.Tuple[np.ndarray, np.ndarray]:
    """Returns the smooth lower bound and its applicability mask."""

    gap = P - lambda1**2
    if gap <= _DEGENERATE_TOL:
        return _log_chi_peaked(s=math.sqrt(P), n=n), np.ones(n.shape, dtype=bool)

    rest = 1.0 - lambda1
    ratio = rest**2 / gap
    applicable = n <= 1 + _snapped_ceil(ratio)

    k = np.maximum(n - 2, 0)
    lf = _log_falling(ratio - 1.0, int(k.max()))
    factor = 1.0 + k*lambda1 - P*(k + 1)
    with np.errstate(invalid='ignore'):
        out = lf[k] + _log(np.maximum(factor, 0.0)) + _xlogy(k, gap / rest)
    return np.where(n <= 1, 0.0, out), applicable


def _log_chi_max_smooth(P: float, lambda1: float, n: np.ndarray) -> np.ndarray:
    multiplicity = _snap(P / lambda1**2)
    tail = max(1.0 - P/lambda1, 0.0)
    top = int(math.floor(multiplicity)) + 1
    lf = _log_falling(multiplicity, int(min(n.max(), top)))

    out = np.empty(n.shape)
    for index, N in enumerate(n.tolist()):
        M = np.arange(min(N, top) + 1)
        out[index] = _logsumexp(lf[M] + _xlogy(M, lambda1) + _xlogy(N - M, tail)
                                + _log_binomial(N, M))
    return out


def _log_chi_upper_P(P: float, n: np.ndarray) -> np.ndarray:
    return _log_chi_peaked(s=math.sqrt(P), n=n)


def _log_chi_lower_P(P: float, n: np.ndarray) -> np.ndarray:
    spec = uniform_from_P(P)
    return _log_chi_two_blocks(value=spec.lambda1, multiplicity=spec.L - 1,
                               last=spec.lambdaS, n=n)


def _log_chi_upper_lambda1(lambda1: float, n: np.ndarray) -> np.ndarray:
    return _log_chi_peaked(s=lambda1, n=n)


def _log_chi_lower_lambda1(lambda1: float, n: np.ndarray) -> np.ndarray:
    spec = uniform_from_lambda1(lambda1)
    return _log_chi_two_blocks(value=spec.lambda1, multiplicity=spec.L,
                               last=spec.lambdaS or 0.0, n=n)


def _log_chain(P: float, lambda1: float, n: np.ndarray) -> np.ndarray:
    """Stacks the six bound families in hierarchy order."""

    return np.vstack([_log_chi_lower_lambda1(lambda1=lambda1, n=n),
                      _log_chi_lower_P(P=P, n=n),
                      _log_chi_min_exact(P=P, lambda1=lambda1, n=n),
                      _log_chi_max_exact(P=P, lambda1=lambda1, n=n),
                      _log_chi_upper_P(P=P, n=n),
                      _log_chi_upper_lambda1(lambda1=lambda1, n=n)])


def _scalar(log_values: np.ndarray) -> float:
    return float(_exp_or_zero(log_values[0]))


def chi_min_exact(P: float, lambda1: float, N: int) -> float:
    """Computes the lower bound on chi_N at fixed (P, lambda1).

    The bound is attained by the minimizing distribution, and it
    vanishes once N exceeds its support.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    N : int
        The coboson number.

    Returns
    -------
    chi : float

    Examples
    --------
    >>> from coboson import chi_min_exact
    >>> round(chi_min_exact(0.2, 0.3, 3), 6)
    0.489759
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    return _scalar(_log_chi_min_exact(P=P, lambda1=lambda1, n=np.array([N])))


def chi_min_smooth(P: float, lambda1: float, N: int) -> float:
    """Computes the smooth lower bound on chi_N at fixed (P, lambda1).

    The support of the minimizing distribution is relaxed from an
    integer to (1 - lambda1)**2 / (P - lambda1**2), which turns the
    bound into a ratio of Gamma functions. It is exact when that
    ratio is an integer.

    Raises
    ------
    NotApplicableError
        If N exceeds 1 + ceil((1 - lambda1)**2 / (P - lambda1**2)).
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    log_value, applicable = _log_chi_min_smooth(P=P, lambda1=lambda1, n=np.array([N]))
    if not applicable[0]:
        raise NotApplicableError('The smooth lower bound is not applicable at N=%s for '
                                 '(P, lambda1) = (%s, %s).' % (N, P, lambda1))
    return _scalar(log_value)


def chi_max_exact(P: float, lambda1: float, N: int) -> float:
    """Computes the upper bound on chi_N at fixed (P, lambda1).

    The bound is attained by the maximizing distribution on
    infinitely many modes, whose tail contributes lambdaSigma**k.

    Examples
    --------
    >>> from coboson import chi_max_exact
    >>> round(chi_max_exact(0.2, 0.3, 3), 6)
    0.513657
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    return _scalar(_log_chi_max_exact(P=P, lambda1=lambda1, n=np.array([N])))


def chi_max_smooth(P: float, lambda1: float, N: int) -> float:
    """Computes the smooth upper bound on chi_N at fixed (P, lambda1),
    in which the multiplicity of lambda1 is relaxed to P / lambda1**2."""

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    return _scalar(_log_chi_max_smooth(P=P, lambda1=lambda1, n=np.array([N])))


def _tricomi_terminating(n: int, b: float, z: float) -> float:
    """Tricomi's U(-n, b, z), which is a polynomial of degree n in z."""

    total = math.fsum(math.comb(n, k) * math.prod(b + k + i for i in range(n - k)) * (-z)**k
                      for k in range(n + 1))
    return (-1)**n * total


def chi_max_tricomi(P: float, lambda1: float, N: int) -> float:
    """Evaluates the upper bound on chi_N through Tricomi's confluent
    hypergeometric function.

    Since the first parameter 1 - L is a non-positive integer, the
    function reduces to a polynomial. The form serves as a
    cross-check of :func:`coboson.chi_max_exact`.

    Raises
    ------
    NotApplicableError
        If L exceeds 30 or the tail weight vanishes.
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    spec = maximizing_distribution(P=P, lambda1=lambda1)
    L, tail = spec.L, spec.lambdaSigma
    if L > _TRICOMI_MAX_L or tail <= 0.0:
        raise NotApplicableError('The polynomial form needs L <= %s and a positive tail '
                                 'weight, but L=%s and lambdaSigma=%s.'
                                 % (_TRICOMI_MAX_L, L, tail))

    z = -tail / lambda1
    bracket = (N*spec.lambdaL*_tricomi_terminating(n=L - 1, b=1 - L + N, z=z)
               + tail*_tricomi_terminating(n=L - 1, b=2 - L + N, z=z))
    return (-lambda1)**(L - 1) * tail**(N - L) * bracket


def chi_upper_P(P: float, N: int) -> float:
    """Computes the upper bound (1 - sqrt(P))**(N-1) (1 + (N-1) sqrt(P)),
    attained by the peaked distribution of purity P."""

    P = _check_unit_interval(value=P, name='purity')
    N = _check_n(N)
    return _scalar(_log_chi_upper_P(P=P, n=np.array([N])))


def chi_lower_P(P: float, N: int) -> float:
    """Computes the lower bound attained by the distribution with the
    largest multiplicity of equal coefficients at purity P."""

    P = _check_unit_interval(value=P, name='purity')
    N = _check_n(N)
    return _scalar(_log_chi_lower_P(P=P, n=np.array([N])))


def chi_upper_lambda1(lambda1: float, N: int) -> float:
    """Computes the upper bound (1 - lambda1)**(N-1) (1 + (N-1) lambda1)."""

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    N = _check_n(N)
    return _scalar(_log_chi_upper_lambda1(lambda1=lambda1, n=np.array([N])))


def chi_lower_lambda1(lambda1: float, N: int) -> float:
    """Computes the lower bound attained by floor(1/lambda1) copies of
    lambda1 and one remainder coefficient."""

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    N = _check_n(N)
    return _scalar(_log_chi_lower_lambda1(lambda1=lambda1, n=np.array([N])))


def _log_tolerance(*log_values) -> float:
    magnitude = max((abs(value) for value in log_values if np.isfinite(value)), default=0.0)
    return max(_HIERARCHY_RTOL, 64.0*np.finfo(float).eps*magnitude)


def _is_ordered(lower: float, upper: float) -> bool:
    """Compares logarithms, where -inf is an exact zero.

    Values that vanish up to roundoff are compared on an absolute
    scale of 1e-12, since their logarithms carry no relative precision.
    """

    if np.isneginf(lower):
        return True
    if np.isfinite(upper) and lower <= upper + _log_tolerance(lower, upper):
        return True
    return float(_exp_or_zero(lower)) <= float(_exp_or_zero(upper)) + _HIERARCHY_ATOL


class BoundsReport(AbstractRecord):
    """The hierarchy of bounds on chi_N and chi_{N+1} / chi_N at (P, lambda1, N).

    The chain lists, from the weakest lower bound to the weakest upper
    bound, the families uniform_L1, uniform_P, min_PL1, max_PL1,
    peaked_P and peaked_L1. Construction verifies the ordering of both
    chains and the position of the smooth bounds, and raises
    :class:`coboson.exceptions.HierarchyViolation` if any check fails.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    N : int
        The coboson number.

    log_chain : array-like of shape = [6]
        The logarithms of the six bounds at N.

    log_chain_next : array-like of shape = [6]
        The logarithms of the six bounds at N + 1.

    log_smooth_lower : float or None
        The logarithm of the smooth lower bound, or None if it is not
        applicable.

    log_smooth_upper : float
        The logarithm of the smooth upper bound.

    Attributes
    ----------
    chain : tuple of float
        The six bounds on chi_N.

    ratio_chain : tuple of float
        The six bounds on chi_{N+1} / chi_N, NaN where undefined.

    smooth_lower, smooth_upper : float
        The smooth bounds, with 0 recorded for an inapplicable
        smooth lower bound.

    validity : dict
        The applicability flags of the ratio bounds and the smooth bounds.

    validity_bits : int
        The flags packed into an integer, ratio flags first.
    """

    def __init__(self, P: float, lambda1: float, N: int, log_chain, log_chain_next,
                 log_smooth_lower, log_smooth_upper):
        self.P = float(P)
        self.lambda1 = float(lambda1)
        self.N = int(N)
        self.log_chain = tuple(float(value) for value in log_chain)
        self.log_ratio_chain = tuple(float(after - before) if np.isfinite(before) else np.nan
                                     for before, after in zip(log_chain, log_chain_next))
        self.chain = tuple(float(value) for value in _exp_or_zero(np.array(self.log_chain)))
        self.ratio_chain = tuple(float(value) for value in
                                 _log_ratio(np.array(log_chain_next), np.array(log_chain)))
        self.log_smooth_lower = log_smooth_lower
        self.log_smooth_upper = float(log_smooth_upper)
        self.smooth_lower = (0.0 if log_smooth_lower is None
                             else float(_exp_or_zero(log_smooth_lower)))
        self.smooth_upper = float(_exp_or_zero(log_smooth_upper))

        validity = {'ratio_%s' % (label): bool(np.isfinite(before))
                    for label, before in zip(_CHAIN_LABELS, self.log_chain)}
        validity['smooth_lower'] = log_smooth_lower is not None
        validity['smooth_upper'] = True
        self.validity = validity
        self.validity_bits = sum(int(flag) << bit for bit, flag in enumerate(validity.values()))
        self._check_hierarchy()
        self._freeze()

    def _check_hierarchy(self):
        for index in range(len(_CHAIN_LABELS) - 1):
            if not _is_ordered(self.log_chain[index], self.log_chain[index + 1]):
                raise HierarchyViolation('The bound %s = %r exceeds %s = %r at '
                                         '(P, lambda1, N) = (%r, %r, %s).'
                                         % (_CHAIN_LABELS[index], self.chain[index],
                                            _CHAIN_LABELS[index + 1], self.chain[index + 1],
                                            self.P, self.lambda1, self.N))

        defined = [(label, value) for label, value in zip(_CHAIN_LABELS, self.log_ratio_chain)
                   if not np.isnan(value)]
        for (label, lower), (next_label, upper) in zip(defined, defined[1:]):
            if not _is_ordered(lower, upper):
                raise HierarchyViolation('The ratio bound %s exceeds %s at '
                                         '(P, lambda1, N) = (%r, %r, %s).'
                                         % (label, next_label, self.P, self.lambda1, self.N))

        min_exact, max_exact = self.log_chain[2], self.log_chain[3]
        if (self.log_smooth_lower is not None
                and not _is_ordered(self.log_smooth_lower, min_exact)):
            raise HierarchyViolation('The smooth lower bound exceeds the exact lower bound '
                                     'at (P, lambda1, N) = (%r, %r, %s).'
                                     % (self.P, self.lambda1, self.N))
        if not _is_ordered(max_exact, self.log_smooth_upper):
            raise HierarchyViolation('The exact upper bound exceeds the smooth upper bound '
                                     'at (P, lambda1, N) = (%r, %r, %s).'
                                     % (self.P, self.lambda1, self.N))

    def to_dict(self) -> dict:
        return dict(P=self.P,
                    lambda1=self.lambda1,
                    N=self.N,
                    labels=list(_CHAIN_LABELS),
                    chain=list(self.chain),
                    log_chain=list(self.log_chain),
                    ratio_chain=list(self.ratio_chain),
                    smooth_lower=self.smooth_lower,
                    smooth_upper=self.smooth_upper,
                    validity=dict(self.validity),
                    validity_bits=self.validity_bits)

    def _row(self) -> dict:
        row = dict(P=self.P, lambda1=self.lambda1, N=self.N)
        row.update({'chi_%s' % (label): value
                    for label, value in zip(_CHAIN_LABELS, self.chain)})
        row.update({'ratio_%s' % (label): value
                    for label, value in zip(_CHAIN_LABELS, self.ratio_chain)})
        row.update(smooth_lower=self.smooth_lower,
                   smooth_upper=self.smooth_upper,
                   validity=self.validity_bits)
        return row

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([self._row()])


def _reports(P: float, lambda1: float, n_values: np.ndarray) -> list:
    """Builds one report per N, sharing the vectorized bound evaluations."""

    grid = np.union1d(n_values, n_values + 1)
    position = {N: index for index, N in enumerate(grid.tolist())}
    log_chain = _log_chain(P=P, lambda1=lambda1, n=grid)
    log_lower, applicable = _log_chi_min_smooth(P=P, lambda1=lambda1, n=grid)
    log_upper = _log_chi_max_smooth(P=P, lambda1=lambda1, n=grid)

    reports = []
    for N in n_values.tolist():
        here, after = position[N], position[N + 1]
        reports.append(BoundsReport(P=P, lambda1=lambda1, N=N,
                                    log_chain=log_chain[:, here],
                                    log_chain_next=log_chain[:, after],
                                    log_smooth_lower=(float(log_lower[here])
                                                      if applicable[here] else None),
                                    log_smooth_upper=log_upper[here]))
    return reports


def bounds_report(P: float, lambda1: float, N: int) -> BoundsReport:
    """Assembles the verified hierarchy of bounds at (P, lambda1, N).

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    N : int
        The coboson number.

    Returns
    -------
    report : BoundsReport

    Raises
    ------
    InfeasiblePairError
        If the pair is infeasible.

    HierarchyViolation
        If the bounds are not ordered, which signals a defect.

    Examples
    --------
    >>> from coboson import bounds_report
    >>> report = bounds_report(P=0.2, lambda1=0.3, N=3)
    >>> [round(value, 6) for value in report.chain]
    [0.324, 0.48, 0.489759, 0.513657, 0.578886, 0.784]
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    N = _check_n(N)
    return _reports(P=P, lambda1=lambda1, n_values=np.array([N]))[0]


def ratio_bounds(P: float, lambda1: float, N: int) -> dict:
    """Retrieves the six bounds on chi_{N+1} / chi_N, keyed by family."""

    report = bounds_report(P=P, lambda1=lambda1, N=N)
    return dict(zip(_CHAIN_LABELS, report.ratio_chain))


def bounds_frame(P: float, lambda1: float, n_values) -> pd.DataFrame:
    """Tabulates the bound hierarchy for many coboson numbers.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    n_values : array-like of int
        The coboson numbers.

    Returns
    -------
    df : pd.DataFrame
        One row per coboson number, in the given order.
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    n_values = _check_n_array(n_values)
    logger.debug('Evaluating %s bound reports at (P, lambda1) = (%s, %s).',
                 n_values.size, P, lambda1)
    reports = _reports(P=P, lambda1=lambda1, n_values=n_values)
    return pd.DataFrame([report._row() for report in reports])
