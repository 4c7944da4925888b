"""
The :mod:`coboson.extremal` module constructs the Schmidt
distributions that extremize the normalization factor under fixed
purity and largest Schmidt coefficient, and implements the uniforming
and peaking rearrangements of three coefficients that drive a
distribution towards those extremes.
"""

# License: MIT

from __future__ import annotations

import fractions
import math
import numbers
import typing

import numpy as np
import pandas as pd

from coboson.base import AbstractRecord
from coboson.chi import ChiSeries, MultiplicityBlocks, chi_multiplicity
from coboson.exceptions import (DegeneratePeakedError, IndexOutOfRangeError,
                                InfeasiblePairError, OutOfRangeError,
                                STooSmallError, TouchesLambda1Error)
from coboson.schmidt import (SchmidtDistribution, _check_feasible,
                             lambda1_min, make_distribution)
from coboson.utils._checks import _check_extremal_kind, _check_unit_interval
from coboson.utils._definition import (_DEGENERATE_TOL, _EXTREMAL_KIND,
                                       _NORMALIZATION_TOL, _SNAP_TOL,
                                       _SQRT_CLAMP_TOL, _TIE_TOL)
from coboson.utils._numerics import _snapped_ceil, _snapped_multiplicity

size_like = typing.Union[int, float]


def _clamped_sqrt(radicand: float, tol=_SQRT_CLAMP_TOL) -> float:
    """Square root that absorbs roundoff below zero.

    Radicands down to -tol are taken as zero, and anything more
    negative means the requested pair is infeasible.
    """

    if radicand < -tol:
        raise InfeasiblePairError('A square root argument evaluated to %s.' % (radicand))
    return math.sqrt(max(radicand, 0.0))


def _remainders(P: float, lambda1: float, copies: int) -> typing.Tuple[float, float]:
    """Weight and purity left after `copies` copies of lambda1, evaluated
    exactly on the binary inputs."""

    P, lambda1 = fractions.Fraction(P), fractions.Fraction(lambda1)
    return float(1 - copies*lambda1), float(P - copies*lambda1**2)


def _merge_blocks(pairs: list) -> list:
    """Sorts (value, multiplicity) pairs, merges ties and drops zeros."""

    pairs = sorted(((float(value), int(multiplicity)) for value, multiplicity in pairs
                    if multiplicity > 0 and value > 0.0), reverse=True)
    merged = []
    for value, multiplicity in pairs:
        if merged and merged[-1][0] - value <= _TIE_TOL:
            last_value, last_multiplicity = merged[-1]
            total = last_multiplicity + multiplicity
            merged[-1] = ((last_value*last_multiplicity + value*multiplicity) / total, total)
        else:
            merged.append((value, multiplicity))
    return merged


class ExtremalSpec(AbstractRecord):
    """Compact parametrization of an extremal Schmidt distribution.

    Parameters
    ----------
    kind : str
        One of 'min_pl1', 'max_pl1', 'peaked_p', 'uniform_p',
        'peaked_l1' or 'uniform_l1'.

    lambda1 : float
        The largest Schmidt coefficient.

    S : int or float
        The number of modes, where ``math.inf`` marks an
        infinitesimal tail of total weight lambdaSigma.

    L : int or None, optional (default=None)
        The position of lambdaL in the maximizing distribution, so
        that lambda1 has multiplicity L - 1.

    lambda2 : float or None, optional (default=None)
        The common value of the middle coefficients of the
        minimizing distribution.

    lambdaL : float or None, optional (default=None)
        The coefficient that follows the L - 1 copies of lambda1.

    lambdaS : float or None, optional (default=None)
        The smallest coefficient of a finite distribution, or the
        common tail value of the finite peaked distribution.

    lambdaSigma : float or None, optional (default=None)
        The weight of the infinitesimal tail.

    Examples
    --------
    >>> from coboson import minimizing_distribution
    >>> spec = minimizing_distribution(P=0.2, lambda1=0.3)
    >>> spec.S, round(spec.lambda2, 6), round(spec.lambdaS, 6)
    (6, 0.164495, 0.042021)
    """

    def __init__(self, kind: str, lambda1: float, S: size_like, L=None,
                 lambda2=None, lambdaL=None, lambdaS=None, lambdaSigma=None):
        self.kind = kind
        self.lambda1 = float(lambda1)
        self.S = S
        self.L = L
        self.lambda2 = lambda2
        self.lambdaL = lambdaL
        self.lambdaS = lambdaS
        self.lambdaSigma = lambdaSigma
        self._validate_extremal_options()
        self._blocks = MultiplicityBlocks(blocks=_merge_blocks(self._block_pairs()),
                                          tail_mass=self.lambdaSigma or 0.0)
        self._freeze()

    def _validate_extremal_options(self):
        assert self.kind in _EXTREMAL_KIND
        assert (isinstance(self.S, numbers.Integral) and self.S >= 1) or self.S == math.inf
        assert self.L is None or (isinstance(self.L, numbers.Integral) and self.L >= 1)
        for value in [self.lambda2, self.lambdaL, self.lambdaS, self.lambdaSigma]:
            assert value is None or isinstance(value, float)
        if self.kind == 'max_pl1':
            assert self.L is not None and self.lambdaL is not None

    def _block_pairs(self) -> list:
        if self.kind == 'min_pl1':
            pairs = [(self.lambda1, 1)]
            if self.S >= 3:
                pairs.append((self.lambda2, self.S - 2))
            if self.S >= 2:
                pairs.append((self.lambdaS, 1))
        elif self.kind == 'max_pl1':
            pairs = [(self.lambda1, self.L - 1), (self.lambdaL, 1)]
            if self.S != math.inf and self.S > self.L:
                pairs.append((self.lambdaS, self.S - self.L))
        elif self.kind == 'uniform_p':
            pairs = [(self.lambda1, self.S - 1), (self.lambdaS or 0.0, 1)]
        elif self.kind == 'uniform_l1':
            pairs = [(self.lambda1, self.L), (self.lambdaS or 0.0, 1)]
        else:
            pairs = [(self.lambda1, 1)]
            if self.S != math.inf and self.S > 1:
                pairs.append((self.lambdaS, self.S - 1))
        return pairs

    @property
    def is_infinite(self) -> bool:
        return self.S == math.inf

    @property
    def purity(self) -> float:
        return math.fsum(value**2 * multiplicity
                         for value, multiplicity in self._blocks.blocks)

    def to_blocks(self) -> MultiplicityBlocks:
        """Represents the distribution as uniform blocks plus an
        infinitesimal tail."""

        return self._blocks

    def expand(self, s_cut=None) -> SchmidtDistribution:
        """Materializes a finite Schmidt distribution.

        Parameters
        ----------
        s_cut : int or None, optional (default=None)
            The number of equal modes that approximate the
            infinitesimal tail, which is required if the tail
            weight is positive.

        Returns
        -------
        dist : SchmidtDistribution
        """

        return make_distribution(self._blocks.expand(tail_modes=s_cut), renormalize=False)

    def expansion_record(self, s_cut=None) -> dict:
        """Bundles the spec, its expansion, and the tail cut metadata."""

        dist = self.expand(s_cut=s_cut)
        return dict(spec=self.to_dict(),
                    metadata=dict(s_cut=s_cut if self._blocks.tail_mass > 0.0 else None),
                    coefficients=dist.coefficients.tolist())

    def chi_series(self, n_max: int) -> ChiSeries:
        """Computes chi_0, ..., chi_Nmax without expanding the tail."""

        return chi_multiplicity(blocks=self._blocks, n_max=n_max)

    def to_dict(self) -> dict:
        return dict(kind=self.kind,
                    S='inf' if self.is_infinite else int(self.S),
                    L=self.L,
                    lambda1=self.lambda1,
                    lambda2=self.lambda2,
                    lambdaL=self.lambdaL,
                    lambdaS=self.lambdaS,
                    lambdaSigma=self.lambdaSigma)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([self.to_dict()])

    def __repr__(self):
        fields = ', '.join('%s=%r' % (key, value) for key, value in self.to_dict().items()
                           if value is not None)
        return 'ExtremalSpec(%s)' % (fields)


def minimizing_distribution(P: float, lambda1: float) -> ExtremalSpec:
    """Constructs the distribution that minimizes chi_N at fixed (P, lambda1).

    It consists of lambda1, S - 2 equal coefficients lambda2 and one
    smaller coefficient lambdaS, where S = 1 + ceil((1 - lambda1)**2 /
    (P - lambda1**2)) is the smallest support able to host the pair.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    Returns
    -------
    spec : ExtremalSpec

    Raises
    ------
    DegeneratePeakedError
        If lambda1 = sqrt(P) < 1 within 1e-12, where the distribution
        degenerates into the peaked one.

    InfeasiblePairError
        If the pair is infeasible.
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    gap = P - lambda1**2
    rest = 1.0 - lambda1

    if gap <= _DEGENERATE_TOL:
        if rest <= _DEGENERATE_TOL:
            return ExtremalSpec(kind='min_pl1', lambda1=1.0, S=1)
        raise DegeneratePeakedError('The largest coefficient %s equals the square root of '
                                    'the purity %s, so the minimizing distribution '
                                    'degenerates. Please use peaked_from_P instead.'
                                    % (lambda1, P))

    S = 1 + _snapped_ceil(rest**2 / gap)
    if S == 2:
        return ExtremalSpec(kind='min_pl1', lambda1=lambda1, S=2, lambdaS=rest)

    # Snapping S down to an integer leaves a radicand of relative size 1e-9.
    radicand = (S - 2)*((S - 1)*gap - rest**2)
    R = _clamped_sqrt(radicand, tol=max(_SQRT_CLAMP_TOL, _SNAP_TOL*(S - 2)*(S - 1)*gap))
    lambda2 = rest/(S - 1) + R/((S - 2)*(S - 1))
    lambdaS = max((rest - R)/(S - 1), 0.0)
    return ExtremalSpec(kind='min_pl1', lambda1=lambda1, S=S,
                        lambda2=lambda2, lambdaS=lambdaS)


def maximizing_distribution(P: float, lambda1: float, S=math.inf) -> ExtremalSpec:
    """Constructs the distribution that maximizes chi_N at fixed (P, lambda1).

    The multiplicity of lambda1 is chosen as large as possible, that
    is L - 1 with L = ceil(P / lambda1**2). The next coefficient
    lambdaL absorbs the remaining purity, and the remaining weight is
    spread over the other S - L modes, which become an infinitesimal
    tail of weight lambdaSigma as S tends to infinity.

    Parameters
    ----------
    P : float
        The purity.

    lambda1 : float
        The largest Schmidt coefficient.

    S : int or float, optional (default=math.inf)
        The number of modes.

    Returns
    -------
    spec : ExtremalSpec

    Raises
    ------
    STooSmallError
        If S modes cannot host the pair in the maximizing form.

    InfeasiblePairError
        If the pair is infeasible.

    Examples
    --------
    >>> from coboson import maximizing_distribution
    >>> spec = maximizing_distribution(P=0.2, lambda1=0.3)
    >>> spec.L, round(spec.lambdaL, 6), round(spec.lambdaSigma, 6)
    (3, 0.141421, 0.258579)
    """

    P, lambda1 = _check_feasible(P=P, lambda1=lambda1)
    L = max(_snapped_ceil(P / lambda1**2), 1)
    weight, remaining = _remainders(P=P, lambda1=lambda1, copies=L - 1)
    if remaining <= _DEGENERATE_TOL:
        remaining = 0.0

    if S == math.inf:
        lambdaL = min(_clamped_sqrt(remaining), lambda1)
        lambdaSigma = weight - lambdaL
        # On the lower boundary the tail is roundoff and lambdaL takes the weight.
        if lambdaSigma <= _DEGENERATE_TOL:
            lambdaL = min(max(weight, 0.0), lambda1)
            lambdaSigma = 0.0
        return ExtremalSpec(kind='max_pl1', lambda1=lambda1, S=math.inf, L=L,
                            lambdaL=lambdaL, lambdaSigma=lambdaSigma)

    if not isinstance(S, numbers.Integral) or S < 1:
        raise OutOfRangeError('The number of modes must be a positive integer or '
                              'math.inf, but %s was given.' % (S))
    n_tail = S - L
    if n_tail < 0:
        raise STooSmallError('The maximizing distribution needs at least %s modes, '
                             'but %s were given.' % (L, S))
    if n_tail == 0:
        if abs(remaining - weight**2) > _NORMALIZATION_TOL:
            raise STooSmallError('The pair (%s, %s) cannot be hosted by %s modes.'
                                 % (P, lambda1, S))
        return ExtremalSpec(kind='max_pl1', lambda1=lambda1, S=int(S), L=L,
                            lambdaL=min(max(weight, 0.0), lambda1))

    if remaining > _DEGENERATE_TOL:
        threshold = ((L - 1)*P + 1.0 - 2.0*(L - 1)*lambda1) / remaining
        if S < threshold - _SNAP_TOL:
            raise STooSmallError('The maximizing distribution needs more than %s modes, '
                                 'but %s were given.' % (threshold, S))
    R_prime = _clamped_sqrt(n_tail*((n_tail + 1)*remaining - weight**2))
    lambdaL = min((weight + R_prime)/(n_tail + 1), lambda1)
    lambdaS = max((weight - lambdaL)/n_tail, 0.0)
    return ExtremalSpec(kind='max_pl1', lambda1=lambda1, S=int(S), L=L,
                        lambdaL=lambdaL, lambdaS=lambdaS)


def peaked_from_P(P: float, S=math.inf) -> ExtremalSpec:
    """Constructs the peaked distribution of purity P on S modes.

    The largest coefficient is followed by a uniform tail. On
    infinitely many modes the largest coefficient is sqrt(P) and the
    tail is infinitesimal.
    """

    P = _check_unit_interval(value=P, name='purity')
    if S == math.inf:
        lambda1 = math.sqrt(P)
        if lambda1 >= 1.0 - _DEGENERATE_TOL:
            return ExtremalSpec(kind='peaked_p', lambda1=1.0, S=1)
        return ExtremalSpec(kind='peaked_p', lambda1=lambda1, S=math.inf,
                            lambdaSigma=1.0 - lambda1)

    if not isinstance(S, numbers.Integral) or S < 1:
        raise OutOfRangeError('The number of modes must be a positive integer or '
                              'math.inf, but %s was given.' % (S))
    if S*P < 1.0 - _NORMALIZATION_TOL:
        raise STooSmallError('A purity of %s needs at least %s modes, but %s were given.'
                             % (P, _snapped_ceil(1.0 / P), S))
    if S == 1:
        return ExtremalSpec(kind='peaked_p', lambda1=1.0, S=1)
    lambda1 = (1.0 + _clamped_sqrt((S - 1)*(S*P - 1.0)))/S
    return ExtremalSpec(kind='peaked_p', lambda1=lambda1, S=int(S),
                        lambdaS=(1.0 - lambda1)/(S - 1))


def uniform_from_P(P: float) -> ExtremalSpec:
    """Constructs the distribution with the largest multiplicity of
    equal coefficients at purity P.

    Examples
    --------
    >>> from coboson import uniform_from_P
    >>> uniform_from_P(0.25).expand().coefficients
    array([0.25, 0.25, 0.25, 0.25])
    """

    P = _check_unit_interval(value=P, name='purity')
    L = _snapped_ceil(1.0 / P)
    lambda1 = lambda1_min(P)
    if L == 1:
        return ExtremalSpec(kind='uniform_p', lambda1=1.0, S=1, L=1, lambdaS=1.0)
    last = max(1.0 - (L - 1)*lambda1, 0.0)
    return ExtremalSpec(kind='uniform_p', lambda1=lambda1, S=L, L=L, lambdaS=last)


def peaked_from_lambda1(lambda1: float) -> ExtremalSpec:
    """Constructs lambda1 followed by an infinitesimal tail of weight
    1 - lambda1, which has the smallest purity lambda1**2."""

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    if lambda1 >= 1.0 - _DEGENERATE_TOL:
        return ExtremalSpec(kind='peaked_l1', lambda1=1.0, S=1)
    return ExtremalSpec(kind='peaked_l1', lambda1=lambda1, S=math.inf,
                        lambdaSigma=1.0 - lambda1)


def uniform_from_lambda1(lambda1: float) -> ExtremalSpec:
    """Constructs floor(1/lambda1) copies of lambda1 plus the remainder,
    which has the largest purity compatible with lambda1.

    Examples
    --------
    >>> from coboson import uniform_from_lambda1
    >>> spec = uniform_from_lambda1(0.3)
    >>> spec.expand().coefficients
    array([0.3, 0.3, 0.3, 0.1])
    """

    lambda1 = _check_unit_interval(value=lambda1, name='largest Schmidt coefficient')
    multiplicity = _snapped_multiplicity(lambda1)
    last = 1.0 - multiplicity*lambda1
    if last <= _NORMALIZATION_TOL:
        return ExtremalSpec(kind='uniform_l1', lambda1=lambda1, S=multiplicity,
                            L=multiplicity)
    return ExtremalSpec(kind='uniform_l1', lambda1=lambda1, S=multiplicity + 1,
                        L=multiplicity, lambdaS=last)


def make_extremal(kind: str, P=None, lambda1=None, S=math.inf) -> ExtremalSpec:
    """Constructs an extremal distribution by name.

    Parameters
    ----------
    kind : str
        One of 'min_pl1', 'max_pl1', 'peaked_p', 'uniform_p',
        'peaked_l1' or 'uniform_l1'. The aliases 'min' and 'max'
        are accepted for the first two.

    P : float or None, optional (default=None)
        The purity, which the first four kinds require.

    lambda1 : float or None, optional (default=None)
        The largest Schmidt coefficient, which every kind except
        'peaked_p' and 'uniform_p' requires.

    S : int or float, optional (default=math.inf)
        The number of modes for 'max_pl1' and 'peaked_p'.

    Returns
    -------
    spec : ExtremalSpec
    """

    aliases = dict(min='min_pl1', max='max_pl1')
    kind = aliases.get(kind.strip().lower(), kind)
    kind = _check_extremal_kind(kind)

    if kind in ['min_pl1', 'max_pl1', 'peaked_p', 'uniform_p'] and P is None:
        raise ValueError('The extremal kind: %s requires the purity.' % (kind))
    if kind in ['min_pl1', 'max_pl1', 'peaked_l1', 'uniform_l1'] and lambda1 is None:
        raise ValueError('The extremal kind: %s requires the largest Schmidt '
                         'coefficient.' % (kind))

    if kind == 'min_pl1':
        return minimizing_distribution(P=P, lambda1=lambda1)
    elif kind == 'max_pl1':
        return maximizing_distribution(P=P, lambda1=lambda1, S=S)
    elif kind == 'peaked_p':
        return peaked_from_P(P=P, S=S)
    elif kind == 'uniform_p':
        return uniform_from_P(P=P)
    elif kind == 'peaked_l1':
        return peaked_from_lambda1(lambda1=lambda1)
    else:
        return uniform_from_lambda1(lambda1=lambda1)


def _check_triple(dist: SchmidtDistribution, j1: int, j2: int, j3: int) -> np.ndarray:
    """Converts a 1-based index triple into 0-based positions."""

    assert isinstance(dist, SchmidtDistribution)
    triple = (j1, j2, j3)
    if not all(isinstance(j, numbers.Integral) and not isinstance(j, bool) for j in triple):
        raise IndexOutOfRangeError('The indices must be integers, but %s was given.'
                                   % (triple,))
    if j1 == 1:
        raise TouchesLambda1Error('The rearrangements never act on the largest '
                                  'coefficient, so j1 must be at least 2.')
    if not 2 <= j1 < j2 < j3 <= dist.n_modes:
        raise IndexOutOfRangeError('The indices %s must satisfy 2 <= j1 < j2 < j3 <= %s.'
                                   % (triple, dist.n_modes))
    return np.array(triple) - 1


def _triple_moments(values: np.ndarray) -> typing.Tuple[float, float, float]:
    """Returns K1, K2 and 2D, where D is the sum of squared pairwise
    differences, so that 6 K2 - 2 K1**2 = 2D without cancellation."""

    a, b, c = values
    D = (a - b)**2 + (b - c)**2 + (c - a)**2
    return a + b + c, a*a + b*b + c*c, 2.0*D


def _replace_triple(dist: SchmidtDistribution, positions: np.ndarray,
                    images: typing.Sequence[float]) -> SchmidtDistribution:
    coefficients = dist.coefficients.copy()
    coefficients[positions] = images
    return make_distribution(coefficients, renormalize=False)


def gamma_uniform(dist: SchmidtDistribution, j1: int, j2: int, j3: int) -> SchmidtDistribution:
    """Applies the uniforming rearrangement to three coefficients.

    The coefficients at the 1-based positions j1 < j2 < j3 are replaced
    by two equal values and a smaller one with the same sum K1 and the
    same sum of squares K2. When the smaller value would turn
    negative, it is set to zero and the other two absorb the moments.
    The rearrangement never increases chi_N.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution.

    j1, j2, j3 : int
        The 1-based positions, with 2 <= j1 < j2 < j3 <= S.

    Returns
    -------
    dist : SchmidtDistribution
        The re-sorted distribution.

    Examples
    --------
    >>> from coboson import gamma_uniform, make_distribution
    >>> out = gamma_uniform(make_distribution([0.4, 0.3, 0.2, 0.1]), 2, 3, 4)
    >>> [round(value, 6) for value in out]
    [0.4, 0.257735, 0.257735, 0.08453]
    """

    positions = _check_triple(dist=dist, j1=j1, j2=j2, j3=j3)
    K1, K2, two_D = _triple_moments(dist.coefficients[positions])

    if K1**2 < 2.0*K2:
        a, b, c = dist.coefficients[positions]
        # 2 K2 - K1**2 written through the pairwise products.
        spread = math.sqrt(max(K2 - 2.0*(a*b + b*c + c*a), 0.0))
        images = [(K1 + spread)/2.0, (K1 - spread)/2.0, 0.0]
    else:
        root = math.sqrt(two_D)
        images = [(2.0*K1 + root)/6.0, (2.0*K1 + root)/6.0, max((K1 - root)/3.0, 0.0)]
    return _replace_triple(dist=dist, positions=positions, images=images)


def gamma_peak(dist: SchmidtDistribution, j1: int, j2: int, j3: int,
               lambda1_cap=None) -> SchmidtDistribution:
    """Applies the peaking rearrangement to three coefficients.

    The coefficients at the 1-based positions j1 < j2 < j3 are replaced
    by one larger value and two equal smaller ones with the same sum and
    sum of squares. When the larger value would exceed the cap, it is
    set to the cap and the other two absorb the moments. The
    rearrangement never decreases chi_N.

    Parameters
    ----------
    dist : SchmidtDistribution
        The Schmidt distribution.

    j1, j2, j3 : int
        The 1-based positions, with 2 <= j1 < j2 < j3 <= S.

    lambda1_cap : float or None, optional (default=None)
        The upper limit of every image. If None, then the largest
        coefficient of the distribution is used.

    Returns
    -------
    dist : SchmidtDistribution
        The re-sorted distribution.
    """

    positions = _check_triple(dist=dist, j1=j1, j2=j2, j3=j3)
    values = dist.coefficients[positions]
    cap = dist.lambda1 if lambda1_cap is None else float(lambda1_cap)
    if cap < values.max() - _NORMALIZATION_TOL or cap > 1.0:
        raise OutOfRangeError('The cap %s must lie between the largest coefficient '
                              'of the triple and 1.' % (cap))

    K1, K2, two_D = _triple_moments(values)
    root = math.sqrt(two_D)
    if K1 + root > 3.0*cap:
        a = values.max()
        b, c = np.delete(values, np.argmax(values))
        shift = a - cap
        total = K1 - cap
        discriminant = (b - c)**2 + shift*(2.0*(a + cap) - shift - 2.0*(b + c))
        if discriminant < -_SQRT_CLAMP_TOL:
            raise OutOfRangeError('The cap %s is too small for the triple %s.'
                                  % (cap, values.tolist()))
        spread = math.sqrt(max(discriminant, 0.0))
        images = [cap, (total + spread)/2.0, max((total - spread)/2.0, 0.0)]
    else:
        images = [(K1 + root)/3.0, (2.0*K1 - root)/6.0, (2.0*K1 - root)/6.0]
    return _replace_triple(dist=dist, positions=positions, images=images)
