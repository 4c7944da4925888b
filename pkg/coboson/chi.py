"""
The :mod:`coboson.chi` module computes the normalization factors of
N two-fermion composites, together with the normalization ratio, the
commutator expectation value and the norm of the deviation vector.

Four engines are provided: the elementary symmetric polynomial
recurrence (``esp``), the Newton-Girard identities (``newtongirard``),
the binomial composition of uniform blocks (``multiplicity``), and an
explicit subset enumeration (``bruteforce``) that serves as oracle.
"""

# License: MIT

from __future__ import annotations

import itertools
import logging
import math
import numbers
import typing
import warnings

import numpy as np
import pandas as pd

from coboson.base import AbstractRecord
from coboson.exceptions import (CancellationFailureError, NotNormalizedError,
                                OutOfRangeError, TooLargeError, UndefinedError)
from coboson.schmidt import SchmidtDistribution
from coboson.utils._checks import _check_engine_choice, _check_n
from coboson.utils._definition import (_BRUTEFORCE_MAX_MODES,
                                       _CANCELLATION_CONDITION,
                                       _CANCELLATION_TOL, _ENGINE_CHOICE,
                                       _EPSILON_NORM_TOL, _NEGATIVE_CLAMP_TOL,
                                       _NORMALIZATION_TOL, _TIE_TOL)
from coboson.utils._numerics import (_exp_or_zero, _log, _log_binomial,
                                     _log_falling, _log_factorial, _log_ratio,
                                     _logsumexp, _xlogy)

logger = logging.getLogger(__name__)


class ChiSeries(AbstractRecord):
    """Normalization factors chi_0, ..., chi_Nmax in the log domain.

    Parameters
    ----------
    log_chi : array-like of shape = [Nmax + 1]
        The natural logarithms of the normalization factors, where
        ``-inf`` marks an exact zero.

    source : str
        The engine that produced the series.

    condition : array-like of shape = [Nmax + 1] or None, optional (default=None)
        The error amplification estimate of each entry. If None,
        then every entry is taken as well-conditioned, which holds
        for the engines that only add non-negative terms.

    Attributes
    ----------
    chi : ndarray
        The linear values, which underflow to 0.0 where the
        logarithm is below the double precision range.

    is_zero : ndarray of bool
        The exact zero flags.

    ratio : ndarray of shape = [Nmax]
        Entry N holds chi_{N+1} / chi_N, with NaN where both vanish.

    cancellation_flag : bool
        Whether any condition estimate exceeds 1e5.
    """

    def __init__(self, log_chi: typing.Sequence[float], source: str, condition=None):
        self.log_chi = np.array(log_chi, dtype=float)
        self.source = source
        if condition is None:
            condition = np.ones_like(self.log_chi)
        self.condition = np.array(condition, dtype=float)
        self._validate_series_options()

        self.is_zero = np.isneginf(self.log_chi)
        self.chi = _exp_or_zero(self.log_chi)
        self.ratio = _log_ratio(self.log_chi[1:], self.log_chi[:-1])
        self.cancellation_flag = bool(np.any(self.condition > _CANCELLATION_CONDITION))
        for array in [self.log_chi, self.condition, self.is_zero, self.chi, self.ratio]:
            array.setflags(write=False)
        self._freeze()

    def _validate_series_options(self):
        assert self.source in _ENGINE_CHOICE
        assert self.log_chi.ndim == 1 and self.log_chi.size >= 1
        assert self.condition.shape == self.log_chi.shape
        assert self.log_chi[0] == 0.0
        assert not np.any(np.isnan(self.log_chi))
        assert not np.any(self.log_chi > 0.0)

    @property
    def n_max(self) -> int:
        return self.log_chi.size - 1

    def __len__(self):
        return self.log_chi.size

    def __getitem__(self, N):
        return self.chi[N]

    def to_dict(self) -> dict:
        return dict(source=self.source,
                    Nmax=self.n_max,
                    chi=self.chi.tolist(),
                    log_chi=self.log_chi.tolist(),
                    ratio=self.ratio.tolist())

    def to_frame(self) -> pd.DataFrame:
        ratio = np.append(self.ratio, np.nan)
        return pd.DataFrame({'N': np.arange(self.n_max + 1),
                             'chi': self.chi,
                             'ratio': ratio})

    def __repr__(self):
        return 'ChiSeries(source=%r, Nmax=%s)' % (self.source, self.n_max)


class MultiplicityBlocks:
    """Schmidt spectrum encoded as blocks of equal coefficients.

    Parameters
    ----------
    blocks : list of tuple
        The (value, multiplicity) pairs, with strictly decreasing
        values and positive integer multiplicities.

    tail_mass : float, optional (default=0.0)
        The total weight of an infinitesimal uniform tail, which
        models infinitely many vanishing coefficients. The tail
        contributes tail_mass**k to chi_k.

    Examples
    --------
    >>> from coboson import MultiplicityBlocks, chi_multiplicity
    >>> birthday = MultiplicityBlocks([(1/365, 365)])
    >>> round(chi_multiplicity(birthday, 23)[23], 6)
    0.492703
    """

    def __init__(self, blocks: list, tail_mass=0.0):
        self.blocks = tuple((float(value), int(multiplicity))
                            for value, multiplicity in blocks)
        self.tail_mass = float(tail_mass)
        self._validate_blocks_options(blocks=blocks)

    def _validate_blocks_options(self, blocks):
        assert all(isinstance(multiplicity, numbers.Integral) for _, multiplicity in blocks)
        if any(multiplicity < 1 for _, multiplicity in self.blocks):
            raise OutOfRangeError('Every block multiplicity must be at least 1.')
        if any(value < 0.0 for value, _ in self.blocks) or self.tail_mass < 0.0:
            raise OutOfRangeError('The block values and the tail mass must be non-negative.')
        values = [value for value, _ in self.blocks]
        if any(later >= earlier for earlier, later in zip(values, values[1:])):
            raise ValueError('The block values must be strictly decreasing.')
        total = math.fsum([value*multiplicity for value, multiplicity in self.blocks]
                          + [self.tail_mass])
        if abs(total - 1.0) > _NORMALIZATION_TOL:
            raise NotNormalizedError('The blocks sum to %s instead of 1.' % (total))

    @classmethod
    def from_distribution(cls, dist: SchmidtDistribution) -> MultiplicityBlocks:
        """Groups the positive coefficients into runs of ties."""

        assert isinstance(dist, SchmidtDistribution)
        positive = dist.coefficients[dist.coefficients > 0.0]
        # Coefficients within 1e-15 of their predecessor extend the run.
        starts = np.flatnonzero(np.concatenate(([True], -np.diff(positive) > _TIE_TOL)))
        ends = np.append(starts[1:], positive.size)
        blocks = [(float(positive[start:end].mean()), int(end - start))
                  for start, end in zip(starts, ends)]
        return cls(blocks=blocks)

    @property
    def total_multiplicity(self) -> int:
        return sum(multiplicity for _, multiplicity in self.blocks)

    def expand(self, tail_modes=None) -> np.ndarray:
        """Materializes the flat, sorted coefficient vector.

        Parameters
        ----------
        tail_modes : int or None, optional (default=None)
            The number of equal modes that approximate the
            infinitesimal tail. It is required when the tail mass
            is positive.

        Returns
        -------
        coefficients : ndarray
        """

        parts = [np.full(multiplicity, value) for value, multiplicity in self.blocks]
        if self.tail_mass > 0.0:
            if tail_modes is None:
                raise ValueError('The blocks carry an infinitesimal tail, so the '
                                 'number of tail modes must be given.')
            assert isinstance(tail_modes, numbers.Integral) and tail_modes >= 1
            parts.append(np.full(tail_modes, self.tail_mass / tail_modes))
        coefficients = np.concatenate(parts) if parts else np.zeros(0)
        return np.sort(coefficients, kind='stable')[::-1]

    def __repr__(self):
        return 'MultiplicityBlocks(%r, tail_mass=%r)' % (list(self.blocks), self.tail_mass)


def _finalize_log_chi(log_chi: np.ndarray) -> np.ndarray:
    """Enforces chi_1 = 1 and the non-increasing order of the series."""

    if log_chi.size > 1 and np.isfinite(log_chi[1]):
        log_chi[1] = 0.0
    log_chi = np.minimum(log_chi, 0.0)
    return np.minimum.accumulate(log_chi)


def _log_chi_uniform_block(value: float, multiplicity: int, n_max: int) -> np.ndarray:
    """Logarithms of chi_k = value**k m! / (m - k)! for one block."""

    k = np.arange(n_max + 1)
    return _xlogy(k, value) + _log_falling(float(multiplicity), n_max)


def chi_series_esp(dist: SchmidtDistribution, n_max: int) -> ChiSeries:
    """Computes chi_0, ..., chi_Nmax from the elementary symmetric polynomials.

    The scaled polynomials c_k = k! e_k are accumulated coefficient by
    coefficient through c_k <- c_k + k lambda c_{k-1}, which adds only
    non-negative terms. The run with the largest multiplicity seeds the
    recurrence with its closed form, and the remaining runs are folded
    in one coefficient at a time.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution.

    n_max : int
        The largest coboson number.

    Returns
    -------
    series : ChiSeries

    Examples
    --------
    >>> from coboson import chi_series_esp, make_distribution
    >>> series = chi_series_esp(make_distribution([0.5, 0.3, 0.2]), 3)
    >>> [round(value, 12) for value in series.chi]
    [1.0, 1.0, 0.62, 0.18]
    """

    assert isinstance(dist, SchmidtDistribution)
    n_max = _check_n(n_max, name='Nmax')

    log_chi = np.full(n_max + 1, -np.inf)
    log_chi[0] = 0.0
    blocks = list(MultiplicityBlocks.from_distribution(dist).blocks)
    # Entries beyond the number of positive coefficients are Pauli blocked.
    k_eff = min(n_max, dist.n_positive)
    if k_eff == 0:
        return ChiSeries(log_chi=log_chi, source='esp')

    seed_index = max(range(len(blocks)), key=lambda index: blocks[index][1])
    value, multiplicity = blocks.pop(seed_index)
    log_chi[:k_eff + 1] = _log_chi_uniform_block(value=value, multiplicity=multiplicity,
                                                 n_max=k_eff)
    processed = multiplicity
    log_k = _log(np.arange(1, k_eff + 1, dtype=float))

    for value, multiplicity in blocks:
        log_value = math.log(value)
        for _ in range(multiplicity):
            processed += 1
            top = min(processed, k_eff)
            increment = log_k[:top] + log_value + log_chi[:top]
            log_chi[1:top + 1] = np.logaddexp(log_chi[1:top + 1], increment)

    logger.debug('ESP engine folded %s coefficients up to N=%s.', processed, k_eff)
    return ChiSeries(log_chi=_finalize_log_chi(log_chi), source='esp')


def chi_series_newton_girard(power_sums: typing.Sequence[float], n_max: int) -> ChiSeries:
    """Computes chi_0, ..., chi_Nmax from the power sums.

    The Newton-Girard identities express chi_N as the alternating sum
    (N-1)! sum_m (-1)**(m+1) chi_{N-m} M(m) / (N-m)!, so precision is
    lost whenever the terms cancel. The condition estimate of each
    entry propagates the magnitudes of all contributing terms.

    Parameters
    ----------
    power_sums : array-like
        The power sums M(1), ..., M(K) with K >= Nmax.

    n_max : int
        The largest coboson number.

    Returns
    -------
    series : ChiSeries

    Raises
    ------
    CancellationFailureError
        If an entry evaluates below -1e-9. The ESP engine should be
        used instead.
    """

    n_max = _check_n(n_max, name='Nmax')
    power_sums = np.asarray(power_sums, dtype=float)
    assert power_sums.ndim == 1
    if power_sums.size < max(n_max, 1):
        raise ValueError('The Newton-Girard identities need the power sums M(1), ..., M(%s), '
                         'but only %s were given.'
                         % (n_max, power_sums.size))
    if abs(power_sums[0] - 1.0) > _NORMALIZATION_TOL:
        raise NotNormalizedError('The power sum M(1) = %s must equal 1.' % (power_sums[0]))

    chi = np.zeros(n_max + 1)
    chi[0] = 1.0
    condition = np.ones(n_max + 1)
    log_power_sums = _log(power_sums)

    for N in range(1, n_max + 1):
        m = np.arange(1, N + 1)
        previous = chi[N - m]
        active = previous > 0.0
        log_magnitude = np.full(N, -np.inf)
        log_magnitude[active] = (_log_factorial(N - 1) - _log_factorial(N - m[active])
                                 + log_power_sums[m[active] - 1] + np.log(previous[active]))
        magnitude = _exp_or_zero(log_magnitude)
        signs = np.where(m % 2 == 1, 1.0, -1.0)
        total = math.fsum(signs * magnitude)
        absolute = math.fsum(magnitude)
        amplified = math.fsum(magnitude[active] * condition[N - m[active]])

        if absolute == 0.0:
            condition[N] = 1.0
        elif abs(total) <= 64.0*np.finfo(float).eps*absolute:
            # Indistinguishable from roundoff.
            total = 0.0
            condition[N] = np.inf
        else:
            condition[N] = amplified / abs(total)

        if total < -_CANCELLATION_TOL:
            raise CancellationFailureError('The Newton-Girard sum for N=%s evaluated to %s. '
                                           'Please use the esp engine instead.'
                                           % (N, total))
        elif total < 0.0:
            if total < -_NEGATIVE_CLAMP_TOL:
                warnings.warn('The Newton-Girard sum for N=%s evaluated to %s, '
                              'so it was clamped to zero.' % (N, total), UserWarning)
            total = 0.0
        chi[N] = min(total, chi[N - 1])

    if n_max >= 1:
        chi[1] = 1.0
    finite = condition[np.isfinite(condition)]
    if np.any(np.isinf(condition)) or (finite.size and finite.max() > _CANCELLATION_CONDITION):
        warnings.warn('The Newton-Girard series is prone to cancellation; '
                      'the largest condition estimate is %s.' % (condition.max()),
                      UserWarning)
    return ChiSeries(log_chi=_log(chi), source='newtongirard', condition=condition)


def _log_binomial_convolution(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Combines two disjoint spectra: chi_N = sum_j C(N, j) chi_j chi_{N-j}."""

    n_max = left.size - 1
    out = np.full(n_max + 1, -np.inf)
    for N in range(n_max + 1):
        j = np.arange(N + 1)
        out[N] = _logsumexp(_log_binomial(N, j) + left[:N + 1] + right[N::-1])
    return out


def chi_multiplicity(blocks: MultiplicityBlocks, n_max: int) -> ChiSeries:
    """Computes chi_0, ..., chi_Nmax of a spectrum made of uniform blocks.

    Each block contributes the closed form value**k m! / (m - k)!, the
    infinitesimal tail contributes tail_mass**k, and the blocks are
    combined from left to right with the binomial convolution.

    Parameters
    ----------
    blocks : MultiplicityBlocks
        The block representation of the spectrum.

    n_max : int
        The largest coboson number.

    Returns
    -------
    series : ChiSeries
    """

    assert isinstance(blocks, MultiplicityBlocks)
    n_max = _check_n(n_max, name='Nmax')
    if blocks.total_multiplicity < 1 and blocks.tail_mass <= 0.0:
        raise ValueError('The total multiplicity must be at least 1.')

    parts = [_log_chi_uniform_block(value=value, multiplicity=multiplicity, n_max=n_max)
             for value, multiplicity in blocks.blocks if value > 0.0]
    if blocks.tail_mass > 0.0:
        parts.append(_xlogy(np.arange(n_max + 1), blocks.tail_mass))

    log_chi = parts[0]
    for part in parts[1:]:
        log_chi = _log_binomial_convolution(left=log_chi, right=part)
    log_chi[0] = 0.0
    return ChiSeries(log_chi=_finalize_log_chi(log_chi), source='multiplicity')


def chi_bruteforce(dist: SchmidtDistribution, N: int) -> float:
    """Computes chi_N by enumerating every subset of N distinct modes.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution, with at most 24 modes.

    N : int
        The coboson number.

    Returns
    -------
    chi : float
        N! times the correctly rounded sum of the subset products.

    Raises
    ------
    TooLargeError
        If the distribution has more than 24 modes.
    """

    assert isinstance(dist, SchmidtDistribution)
    N = _check_n(N)
    if dist.n_modes > _BRUTEFORCE_MAX_MODES:
        raise TooLargeError('The subset enumeration supports at most %s modes, '
                            'but %s were given.'
                            % (_BRUTEFORCE_MAX_MODES, dist.n_modes))
    if N > dist.n_modes:
        return 0.0
    if N == 0:
        return 1.0

    subset_sum = math.fsum(math.prod(subset)
                           for subset in itertools.combinations(dist.coefficients.tolist(), N))
    return math.factorial(N) * subset_sum


def chi_series(dist: SchmidtDistribution, n_max: int, engine='esp') -> ChiSeries:
    """Computes chi_0, ..., chi_Nmax with the chosen engine.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution.

    n_max : int
        The largest coboson number.

    engine : str, optional (default='esp')
        One of 'esp', 'newtongirard', 'multiplicity' or 'bruteforce'.
        Misspelled names are autocorrected.

    Returns
    -------
    series : ChiSeries
    """

    assert isinstance(dist, SchmidtDistribution)
    engine = _check_engine_choice(engine)
    n_max = _check_n(n_max, name='Nmax')

    if engine == 'esp':
        return chi_series_esp(dist=dist, n_max=n_max)
    elif engine == 'newtongirard':
        power_sums = [dist.power_sum(k) for k in range(1, max(n_max, 1) + 1)]
        return chi_series_newton_girard(power_sums=power_sums, n_max=n_max)
    elif engine == 'multiplicity':
        return chi_multiplicity(blocks=MultiplicityBlocks.from_distribution(dist),
                                n_max=n_max)
    else:
        values = np.array([chi_bruteforce(dist=dist, N=N) for N in range(n_max + 1)])
        # The oracle stays raw apart from roundoff above one.
        values = np.where(values <= 1.0 + _NORMALIZATION_TOL, np.minimum(values, 1.0), values)
        return ChiSeries(log_chi=_log(values), source='bruteforce')


def ratio_series(series: ChiSeries) -> np.ndarray:
    """Retrieves the normalization ratios chi_{N+1} / chi_N.

    Entry N is 0 where chi_{N+1} vanishes and chi_N does not, and NaN
    where both vanish.
    """

    assert isinstance(series, ChiSeries)
    return np.array(series.ratio)


def commutator_expectation(ratio: float) -> float:
    """Computes the expectation value 2 chi_{N+1} / chi_N - 1 of the
    commutator of the composite annihilation and creation operators.

    Examples
    --------
    >>> from coboson import commutator_expectation
    >>> commutator_expectation(0.5)
    0.0
    """

    if not isinstance(ratio, numbers.Real) or not np.isfinite(ratio):
        raise OutOfRangeError('The ratio must be a finite real number, but %r was given.'
                              % (ratio))
    if ratio < -_NORMALIZATION_TOL or ratio > 1.0 + _NORMALIZATION_TOL:
        raise OutOfRangeError('The ratio must lie in [0, 1], but %s was given.' % (ratio))
    ratio = min(max(float(ratio), 0.0), 1.0)
    return 2.0*ratio - 1.0


def epsilon_norm(series: ChiSeries, N: int) -> float:
    """Computes the squared norm of the deviation vector at N cobosons.

    The value is 1 - N chi_N / chi_{N-1} + (N - 1) chi_{N+1} / chi_N,
    which vanishes for ideal bosonic behavior.

    Parameters
    ----------
    series : ChiSeries
        A series with Nmax >= N + 1.

    N : int
        The coboson number, at least 1.

    Returns
    -------
    norm : float

    Raises
    ------
    UndefinedError
        If chi_{N-1} vanishes, or if chi_N vanishes for N >= 2.
    """

    assert isinstance(series, ChiSeries)
    N = _check_n(N)
    if N < 1 or N > series.n_max - 1:
        raise OutOfRangeError('The coboson number must lie in [1, %s], but %s was given.'
                              % (series.n_max - 1, N))
    if series.is_zero[N - 1]:
        raise UndefinedError('chi_%s vanishes, so the norm at N=%s is undefined.'
                             % (N - 1, N))
    if N >= 2 and series.is_zero[N]:
        raise UndefinedError('chi_%s vanishes, so the ratio chi_%s / chi_%s is undefined.'
                             % (N, N + 1, N))

    value = 1.0 - N*series.ratio[N - 1]
    if N >= 2:
        value += (N - 1)*series.ratio[N]
    if -_EPSILON_NORM_TOL <= value < 0.0:
        value = 0.0
    elif value < 0.0:
        warnings.warn('The squared norm at N=%s evaluated to %s.' % (N, value), UserWarning)
    return float(value)
