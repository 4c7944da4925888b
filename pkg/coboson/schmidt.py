"""
The :mod:`coboson.schmidt` module represents Schmidt-coefficient
distributions of two-fermion composites, summarizes them, and delimits
the feasible region of purity and largest Schmidt coefficient. It
includes the :class:`coboson.SchmidtDistribution` and
:class:`coboson.DistributionSummary` classes.
"""

# License: MIT

from __future__ import annotations

import math
import numbers
import os
import typing

import numpy as np
import pandas as pd

import sklearn.utils

from coboson.base import AbstractRecord
from coboson.exceptions import (EmptyInputError, InfeasiblePairError,
                                NegativeCoefficientError, NotNormalizedError,
                                OutOfRangeError, SamplingExhaustedError)
from coboson.utils._checks import _check_unit_interval
from coboson.utils._definition import (_DEGENERATE_TOL, _FEASIBILITY_TOL,
                                       _NEGATIVE_CLAMP_TOL, _NORMALIZATION_TOL,
                                       _SNAP_TOL)
from coboson.utils._io import _csv_dump, _json_dump, _read_coefficients
from coboson.utils._numerics import (_roundoff_excess, _snapped_ceil,
                                     _snapped_multiplicity)

array_like = typing.Union[typing.Sequence[float], np.ndarray]


class SchmidtDistribution(AbstractRecord):
    """Sorted probability vector of Schmidt coefficients.

    The coefficients are non-negative, sum to one within 1e-12, and
    are stored in non-increasing order in a read-only array. Use
    :func:`coboson.make_distribution` to build a distribution from
    unsorted or unnormalized input.

    Parameters
    ----------
    coefficients : array-like of shape = [n_modes]
        The Schmidt coefficients, already sorted and normalized.

    Examples
    --------
    >>> from coboson import make_distribution
    >>> dist = make_distribution([0.3, 0.2, 0.5])
    >>> dist.coefficients
    array([0.5, 0.3, 0.2])
    >>> round(dist.purity, 2)
    0.38
    """

    def __init__(self, coefficients: array_like):
        self.coefficients = np.array(coefficients, dtype=float)
        self._validate_distribution_options()
        self.coefficients.setflags(write=False)
        self._freeze()

    def _validate_distribution_options(self):
        assert self.coefficients.ndim == 1
        if self.coefficients.size == 0:
            raise EmptyInputError('A Schmidt distribution needs at least one coefficient.')
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError('The Schmidt coefficients must be finite.')
        if self.coefficients.min() < 0.0:
            raise NegativeCoefficientError('The Schmidt coefficient: %s is negative.'
                                           % (self.coefficients.min()))
        if np.any(np.diff(self.coefficients) > 0.0):
            raise ValueError('The Schmidt coefficients must be sorted in '
                             'non-increasing order.')
        total = math.fsum(self.coefficients)
        if abs(total - 1.0) > _NORMALIZATION_TOL:
            raise NotNormalizedError('The Schmidt coefficients sum to %s instead of 1.'
                                     % (total))

    @property
    def n_modes(self) -> int:
        """Number of stored coefficients S, zeros included."""

        return self.coefficients.size

    @property
    def n_positive(self) -> int:
        """Number of strictly positive coefficients."""

        return int(np.count_nonzero(self.coefficients > 0.0))

    @property
    def lambda1(self) -> float:
        return float(self.coefficients[0])

    @property
    def purity(self) -> float:
        return self.power_sum(2)

    def power_sum(self, k: int) -> float:
        """Computes the power sum M(k) of the coefficients."""

        assert isinstance(k, numbers.Integral) and k >= 1
        if k == 1:
            return math.fsum(self.coefficients)
        return float(np.sum(self.coefficients**k))

    def to_dict(self) -> dict:
        return dict(coefficients=self.coefficients.tolist())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'coefficient': self.coefficients})

    def to_json(self, filename: str) -> None:
        """Serializes the coefficients as a JSON array of numbers."""

        _json_dump(record=self.coefficients.tolist(), filename=filename)

    def __len__(self):
        return self.n_modes

    def __iter__(self):
        return iter(self.coefficients.tolist())

    def __getitem__(self, index):
        return self.coefficients[index]

    def __eq__(self, other):
        if not isinstance(other, SchmidtDistribution):
            return NotImplemented
        return np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self):
        return hash(self.coefficients.tobytes())

    def __repr__(self):
        return 'SchmidtDistribution(%s)' % (np.array2string(self.coefficients,
                                                            separator=', ',
                                                            threshold=12))


class DistributionSummary(AbstractRecord):
    """Power sums and entanglement quantifiers of a distribution.

    Parameters
    ----------
    power_sums : array-like of shape = [kmax]
        The power sums M(1), ..., M(kmax).

    lambda1 : float
        The largest Schmidt coefficient.

    n_modes : int
        The number of stored coefficients.

    Attributes
    ----------
    purity : float
        The purity P = M(2).

    schmidt_number : float
        The Schmidt number K = 1/P.

    geometric_entanglement : float
        The geometric measure of entanglement E_G = 1 - lambda1.

    near_boundary : bool
        Whether lambda1 lies within 1e-9 of either end of the
        feasible interval [lambda1_min(P), sqrt(P)].
    """

    def __init__(self, power_sums: array_like, lambda1: float, n_modes: int):
        self.power_sums = tuple(float(value) for value in power_sums)
        self.lambda1 = float(lambda1)
        self.n_modes = int(n_modes)
        self._validate_summary_options()

        self.purity = self.power_sums[1]
        self.schmidt_number = 1.0 / self.purity
        self.geometric_entanglement = 1.0 - self.lambda1
        self.near_boundary = _near_boundary(P=self.purity, lambda1=self.lambda1)
        self._freeze()

    def _validate_summary_options(self):
        assert len(self.power_sums) >= 2
        assert abs(self.power_sums[0] - 1.0) <= _NORMALIZATION_TOL
        purity = self.power_sums[1]
        assert self.lambda1**2 <= purity + _NORMALIZATION_TOL
        assert purity <= self.lambda1 + _NORMALIZATION_TOL
        assert all(later <= earlier + _NORMALIZATION_TOL
                   for earlier, later in zip(self.power_sums, self.power_sums[1:]))

    def power_sum(self, k: int) -> float:
        """Retrieves M(k), using the mathematical index convention."""

        assert 1 <= k <= len(self.power_sums)
        return self.power_sums[k - 1]

    def to_dict(self) -> dict:
        return dict(lambda1=self.lambda1,
                    purity=self.purity,
                    power_sums=list(self.power_sums),
                    schmidt_number=self.schmidt_number,
                    geometric_entanglement=self.geometric_entanglement,
                    near_boundary=self.near_boundary)

    def to_frame(self) -> pd.DataFrame:
        row = dict(lambda1=self.lambda1,
                   purity=self.purity,
                   schmidt_number=self.schmidt_number,
                   geometric_entanglement=self.geometric_entanglement,
                   near_boundary=self.near_boundary)
        row.update({'M%d' % (k + 1): value for k, value in enumerate(self.power_sums)})
        return pd.DataFrame([row])


def make_distribution(raw: array_like, renormalize=False) -> SchmidtDistribution:
    """Builds a sorted Schmidt distribution from raw coefficients.

    Parameters
    ----------
    raw : array-like of shape = [n_modes]
        The raw coefficients in any order. Entries in [-1e-15, 0) are
        treated as roundoff and clamped to zero.

    renormalize : bool, optional (default=False)
        If True, then the entries are scaled to unit sum. Otherwise,
        the entries must already sum to one within 1e-12.

    Returns
    -------
    dist : SchmidtDistribution

    Raises
    ------
    EmptyInputError, NegativeCoefficientError, NotNormalizedError
    """

    assert isinstance(renormalize, bool)

    if np.size(raw) == 0:
        raise EmptyInputError('A Schmidt distribution needs at least one coefficient.')
    coefficients = sklearn.utils.check_array(np.ravel(np.asarray(raw, dtype=float)),
                                             ensure_2d=False, dtype=np.float64,
                                             copy=True)

    if coefficients.min() < -_NEGATIVE_CLAMP_TOL:
        raise NegativeCoefficientError('The Schmidt coefficient: %s is negative.'
                                       % (coefficients.min()))
    coefficients = np.clip(coefficients, 0.0, None)

    total = math.fsum(coefficients)
    if renormalize:
        if total <= 0.0:
            raise NotNormalizedError('The coefficients sum to zero, so they '
                                     'cannot be renormalized.')
        coefficients = coefficients / total
    elif abs(total - 1.0) > _NORMALIZATION_TOL:
        raise NotNormalizedError('The Schmidt coefficients sum to %s instead of 1. '
                                 'Set renormalize=True to rescale them.'
                                 % (total))

    coefficients = np.sort(coefficients, kind='stable')[::-1]
    return SchmidtDistribution(coefficients=coefficients)


def summarize(dist: SchmidtDistribution, kmax=2) -> DistributionSummary:
    """Computes the power sums M(1), ..., M(kmax) and derived quantities.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution.

    kmax : int, optional (default=2)
        The largest power sum order, at least 2.

    Returns
    -------
    summary : DistributionSummary

    Examples
    --------
    >>> from coboson import make_distribution, summarize
    >>> summary = summarize(make_distribution([0.5, 0.3, 0.2]), kmax=3)
    >>> round(summary.purity, 12), round(summary.power_sum(3), 12)
    (0.38, 0.16)
    """

    assert isinstance(dist, SchmidtDistribution)
    if not isinstance(kmax, numbers.Integral) or kmax < 2:
        raise OutOfRangeError('The kmax must be an integer of at least 2, '
                              'but %s was given.' % (kmax))

    power_sums = [dist.power_sum(k) for k in range(1, kmax + 1)]
    return DistributionSummary(power_sums=power_sums, lambda1=dist.lambda1,
                               n_modes=dist.n_modes)


def lambda1_min(P: float) -> float:
    """Computes the smallest largest-coefficient compatible with the purity.

    The minimum is attained by the distribution with the largest
    possible multiplicity of equal coefficients.

    Parameters
    ----------
    P : float
        The purity in (0, 1].

    Returns
    -------
    lambda1 : float

    Examples
    --------
    >>> from coboson import lambda1_min
    >>> round(lambda1_min(0.3), 5)
    0.31455
    """

    P = _check_unit_interval(value=P, name='purity')
    L = _snapped_ceil(1.0 / P)
    if L == 1:
        return 1.0
    # P L - 1 is pure roundoff when 1/P is an integer.
    radicand = max(_roundoff_excess(P*L - 1.0, scale=P*L) / (L - 1.0), 0.0)
    return (math.sqrt(radicand) + 1.0) / L


def lambda1_max(P: float) -> float:
    """Computes the largest admissible largest-coefficient, sqrt(P)."""

    P = _check_unit_interval(value=P, name='purity')
    return math.sqrt(P)


def p_min(lambda1: float) -> float:
    """Computes the smallest purity compatible with lambda1."""

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    return lambda1**2


def p_max(lambda1: float) -> float:
    """Computes the largest purity compatible with lambda1.

    It is attained by floor(1/lambda1) copies of lambda1 and one
    remainder coefficient.
    """

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    multiplicity = _snapped_multiplicity(lambda1)
    remainder = max(1.0 - lambda1*multiplicity, 0.0)
    return lambda1**2 * multiplicity + remainder**2


def feasible(P: float, lambda1: float) -> bool:
    """Decides whether a distribution with purity P and largest
    coefficient lambda1 exists.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    Returns
    -------
    is_feasible : bool
        False whenever either argument is out of range.
    """

    try:
        P = _check_unit_interval(value=P, name='purity')
        lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    except OutOfRangeError:
        return False
    return (lambda1_min(P) - _FEASIBILITY_TOL <= lambda1
            <= math.sqrt(P) + _FEASIBILITY_TOL)


def _check_feasible(P: float, lambda1: float) -> typing.Tuple[float, float]:
    """Returns the pair as floats or raises InfeasiblePairError."""

    if not feasible(P=P, lambda1=lambda1):
        raise InfeasiblePairError('No Schmidt distribution has purity %s and '
                                  'largest coefficient %s.'
                                  % (P, lambda1))
    return float(P), float(lambda1)


def _near_boundary(P: float, lambda1: float) -> bool:
    if not feasible(P=P, lambda1=lambda1):
        return True
    return (lambda1 - lambda1_min(P) <= _SNAP_TOL
            or math.sqrt(P) - lambda1 <= _SNAP_TOL)


def minimal_support(P: float, lambda1: float) -> typing.Union[int, float]:
    """Computes the smallest number of modes able to host (P, lambda1).

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    Returns
    -------
    n_modes : int or float
        1 + ceil((1 - lambda1)**2 / (P - lambda1**2)), which is
        ``math.inf`` on the peaked boundary lambda1 = sqrt(P) < 1.
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    gap = P - lambda1**2
    if gap <= _DEGENERATE_TOL:
        return 1 if lambda1 >= 1.0 - _DEGENERATE_TOL else math.inf
    return 1 + _snapped_ceil((1.0 - lambda1)**2 / gap)


def random_distribution(S: int, random_state=None) -> SchmidtDistribution:
    """Draws a distribution uniformly from the probability simplex.

    Parameters
    ----------
    S : int
        The number of modes.

    random_state : int, RandomState instance or None, optional (default=None)
        Determines random number generation.

    Returns
    -------
    dist : SchmidtDistribution
    """

    if not isinstance(S, numbers.Integral) or S < 1:
        raise OutOfRangeError('The number of modes must be a positive integer, '
                              'but %s was given.' % (S))
    if S == 1:
        return SchmidtDistribution(coefficients=[1.0])
    rng = sklearn.utils.check_random_state(random_state)
    return make_distribution(rng.dirichlet(np.ones(S)), renormalize=True)


def random_distribution_constrained(P: float, lambda1: float, S=None,
                                    random_state=None,
                                    attempts=1000) -> SchmidtDistribution:
    """Draws a distribution with prescribed purity and largest coefficient.

    The largest coefficient is fixed, a tail is drawn from a Dirichlet
    distribution with a random concentration, and the dispersion of the
    tail about its mean is rescaled until the purity is hit exactly.
    Draws whose tail turns negative or exceeds lambda1 are rejected.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    S : int or None, optional (default=None)
        The number of modes. If None, then two more than the
        minimal support is used.

    random_state : int, RandomState instance or None, optional (default=None)
        Determines random number generation.

    attempts : int, optional (default=1000)
        The number of draws before giving up.

    Returns
    -------
    dist : SchmidtDistribution

    Raises
    ------
    InfeasiblePairError
        If the pair is infeasible, or if S modes cannot host it.

    SamplingExhaustedError
        If every draw was rejected.
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    assert isinstance(attempts, numbers.Integral) and attempts >= 1

    support = minimal_support(P=P, lambda1=lambda1)
    if S is None:
        if math.isinf(support):
            raise InfeasiblePairError('The pair (%s, %s) lies on the peaked boundary, '
                                      'which no finite number of modes can host.'
                                      % (P, lambda1))
        S = support + 2
    if not isinstance(S, numbers.Integral) or S < 1:
        raise OutOfRangeError('The number of modes must be a positive integer, '
                              'but %s was given.' % (S))
    if S < support:
        raise InfeasiblePairError('The pair (%s, %s) needs at least %s modes, '
                                  'but %s were given.'
                                  % (P, lambda1, support, S))

    tail_mass = 1.0 - lambda1
    if S == 1 or tail_mass <= _DEGENERATE_TOL:
        coefficients = np.zeros(S)
        coefficients[0] = 1.0
        return SchmidtDistribution(coefficients=coefficients)

    n_tail = S - 1
    mean = tail_mass / n_tail
    # Extra squared mass the tail must carry beyond the uniform tail.
    target = max(P - lambda1**2 - n_tail*mean**2, 0.0)

    rng = sklearn.utils.check_random_state(random_state)
    for _ in range(attempts):
        concentration = 10.0**rng.uniform(-1.0, 0.7)
        draw = rng.dirichlet(np.full(n_tail, concentration)) * tail_mass
        deviation = draw - draw.mean()
        spread = float(np.dot(deviation, deviation))
        if spread <= 0.0:
            if target > _NORMALIZATION_TOL:
                continue
            scale = 0.0
        else:
            scale = math.sqrt(target / spread)
        tail = mean + scale*deviation
        if tail.min() < -_NEGATIVE_CLAMP_TOL or tail.max() > lambda1 + _NEGATIVE_CLAMP_TOL:
            continue
        tail = np.clip(tail, 0.0, lambda1)
        dist = make_distribution(np.concatenate(([lambda1], tail)), renormalize=False)
        if (abs(dist.purity - P) <= _SNAP_TOL
                and abs(dist.lambda1 - lambda1) <= _SNAP_TOL):
            return dist

    raise SamplingExhaustedError('No distribution with purity %s and largest '
                                 'coefficient %s was found on %s modes after %s attempts.'
                                 % (P, lambda1, S, attempts))


def load_distribution(path: str, renormalize=False) -> SchmidtDistribution:
    """Reads a Schmidt distribution from a JSON or CSV formatted file.

    Parameters
    ----------
    path : str
        A JSON file with an array of numbers, or a single-column CSV file.

    renormalize : bool, optional (default=False)
        Whether to scale the coefficients to unit sum.

    Returns
    -------
    dist : SchmidtDistribution
    """

    assert isinstance(path, str)
    return make_distribution(_read_coefficients(path=path), renormalize=renormalize)


def dump_distribution(dist: SchmidtDistribution, path: str) -> None:
    """Writes a Schmidt distribution as a JSON array or a single-column CSV."""

    assert isinstance(dist, SchmidtDistribution)
    assert isinstance(path, str)

    if os.path.splitext(path)[1].lower() == '.csv':
        _csv_dump(df=dist.to_frame(), filename=path)
    else:
        dist.to_json(filename=path)
