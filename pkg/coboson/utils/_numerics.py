"""
The :mod:`coboson.utils._numerics` module provides the log-domain
arithmetic shared by the chi engines and the closed-form bounds.

Normalization factors underflow double precision long before the
coboson numbers of interest, hence every positive quantity is carried
as its natural logarithm, with ``-inf`` encoding an exact zero.
"""

# License: MIT

import math

import numpy as np
import scipy.special

from coboson.utils._definition import _SNAP_TOL


def _snap(x: float) -> float:
    """Snaps a real number to the nearest integer when within 1e-9."""

    nearest = round(x)
    if abs(x - nearest) <= _SNAP_TOL:
        return float(nearest)
    return float(x)


def _snapped_ceil(x: float) -> int:
    return int(math.ceil(_snap(x)))


def _snapped_floor(x: float) -> int:
    return int(math.floor(_snap(x)))


def _snapped_multiplicity(value: float) -> int:
    """Largest number of copies of value that fit into a unit weight.

    The quotient 1 / value is snapped up to an integer only when that
    many copies do not exceed 1.
    """

    multiplicity = _snapped_floor(1.0 / value)
    if multiplicity*value > 1.0:
        multiplicity -= 1
    return multiplicity


def _roundoff_excess(x: float, scale=1.0) -> float:
    """Returns x, or exactly zero when x is within a few ulps of zero
    relative to scale."""

    if abs(x) <= 4.0*np.finfo(float).eps*scale:
        return 0.0
    return float(x)


def _log(x) -> np.ndarray:
    """Natural logarithm with log(0) = -inf and no warning."""

    with np.errstate(divide='ignore'):
        return np.log(x)


def _log_falling(x: float, k_max: int) -> np.ndarray:
    """Logarithms of the falling factorials x (x - 1) ... (x - k + 1).

    Parameters
    ----------
    x : float
        The (not necessarily integer) argument.

    k_max : int
        The largest number of factors.

    Returns
    -------
    out : ndarray of shape (k_max + 1,)
        Entry k holds log(x! / (x - k)!), and -inf once a
        factor is non-positive.

    Notes
    -----
    The running sum of log(x - i) keeps full relative precision
    for huge x, where a difference of log-gamma values would not.
    """

    out = np.zeros(k_max + 1)
    if k_max == 0:
        return out
    factors = x - np.arange(k_max, dtype=float)
    logs = np.full(k_max, -np.inf)
    positive = factors > 0.0
    logs[positive] = np.log(factors[positive])
    # Once a factor vanishes every longer product vanishes.
    first_bad = np.argmin(positive) if not positive.all() else k_max
    logs[first_bad:] = -np.inf
    out[1:] = np.cumsum(logs)
    return out


def _log_factorial(n) -> np.ndarray:
    return scipy.special.gammaln(np.asarray(n, dtype=float) + 1.0)


def _log_binomial(n, k) -> np.ndarray:
    """Log binomial coefficients, -inf outside 0 <= k <= n."""

    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    inside = (k >= 0) & (k <= n)
    out = np.full(np.broadcast(n, k).shape, -np.inf)
    with np.errstate(invalid='ignore'):
        values = _log_factorial(n) - _log_factorial(k) - _log_factorial(n - k)
    out[inside] = np.broadcast_to(values, out.shape)[inside]
    return out


def _xlogy(k, x) -> np.ndarray:
    """k log x with the convention 0 log 0 = 0."""

    return scipy.special.xlogy(k, x)


def _xlog1py(k, x) -> np.ndarray:
    """k log(1 + x) with the convention 0 log 0 = 0."""

    return scipy.special.xlog1py(k, x)


def _logsumexp(values, axis=None) -> np.ndarray:
    """Log-sum-exp that returns -inf for an all -inf slice."""

    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return np.float64(-np.inf)
    with np.errstate(divide='ignore', invalid='ignore'):
        return scipy.special.logsumexp(values, axis=axis)


def _exp_or_zero(log_values) -> np.ndarray:
    with np.errstate(under='ignore'):
        return np.exp(log_values)


def _log_ratio(log_numerator, log_denominator) -> np.ndarray:
    """Ratio of log-domain values with the zero conventions of ratios.

    The entry is exp(a - b) when b is finite, 0 when a = -inf and b is
    finite, and NaN when both vanish.
    """

    a = np.asarray(log_numerator, dtype=float)
    b = np.asarray(log_denominator, dtype=float)
    out = np.full(np.broadcast(a, b).shape, np.nan)
    defined = np.broadcast_to(np.isfinite(b), out.shape)
    with np.errstate(invalid='ignore', under='ignore'):
        values = np.exp(a - b)
    out[defined] = np.broadcast_to(values, out.shape)[defined]
    return out
