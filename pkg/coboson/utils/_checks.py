"""
The :mod:`coboson.utils._checks` module provides basic utilities
for automated argument checking.
"""

# License: MIT

import Levenshtein
import numbers
import warnings

import numpy as np

from coboson.exceptions import OutOfRangeError
from coboson.utils._definition import (_ENGINE_CHOICE, _EXTREMAL_KIND,
                                       _FIGURE_CHOICE, _FORMAT_CHOICE,
                                       _N_CAP, _SWEEP_MODE)


def _basic_autocorrect(init_choice: str, candidate_choices: list) -> str:
    """Chooses the candidate string that minimizes the edit distance.

    Parameters
    ----------
    init_choice : str
        Specify the initial choice as a string, e.g., the Newton-Girard
        engine as 'newtongirard', 'NewtonGirard', 'newton_girard', etc.

    candidate_choices : list
        A list of candidate choices, where each candidate is a string.

    Returns
    -------
    out_choice : str

    Raises
    ------
    ValueError
        If the closest candidate still differs in more than half of
        the characters of the initial choice.

    Notes
    -----
    The edit distance between the initial choice and each possible choice corresponds
    to the Levenshtein distance, which uses the operations of insertion, removal, or
    substitution to count the distance.
    """

    assert isinstance(init_choice, str)
    assert isinstance(candidate_choices, list)

    min_dist = np.inf
    out_choice = init_choice
    for candidate_choice in candidate_choices:
        dist = Levenshtein.distance(init_choice, candidate_choice)
        if dist < min_dist:
            min_dist = dist
            out_choice = candidate_choice

    if min_dist > max(1, len(init_choice) // 2):
        raise ValueError('The choice: %s is not close to any of %s.'
                         % (init_choice, candidate_choices))
    if min_dist > 0:
        warnings.warn(f'{init_choice} was misspelled, so we replaced it with {out_choice}.',
                      UserWarning)
    return out_choice


def _normalize_choice(choice: str) -> str:
    return choice.strip().lower().replace('-', '_').replace(' ', '_')


def _check_engine_choice(engine: str) -> str:
    """Chooses the chi engine that minimizes the edit distance."""

    assert isinstance(engine, str)
    return _basic_autocorrect(init_choice=_normalize_choice(engine).replace('_', ''),
                              candidate_choices=_ENGINE_CHOICE)


def _check_extremal_kind(kind: str) -> str:
    """Chooses the extremal family that minimizes the edit distance."""

    assert isinstance(kind, str)
    return _basic_autocorrect(init_choice=_normalize_choice(kind),
                              candidate_choices=_EXTREMAL_KIND)


def _check_sweep_mode(mode: str) -> str:
    """Chooses the sweep mode that minimizes the edit distance."""

    assert isinstance(mode, str)
    return _basic_autocorrect(init_choice=_normalize_choice(mode),
                              candidate_choices=_SWEEP_MODE)


def _check_figure_choice(figure: str) -> str:
    """Chooses the figure preset that minimizes the edit distance."""

    assert isinstance(figure, str)
    return _basic_autocorrect(init_choice=_normalize_choice(figure).replace('_', ''),
                              candidate_choices=_FIGURE_CHOICE)


def _check_format_choice(fmt: str) -> str:
    """Chooses the output format that minimizes the edit distance."""

    assert isinstance(fmt, str)
    return _basic_autocorrect(init_choice=_normalize_choice(fmt),
                              candidate_choices=_FORMAT_CHOICE)


def _check_unit_interval(value: float, name: str) -> float:
    """Checks that a purity or a Schmidt coefficient lies in (0, 1].

    Parameters
    ----------
    value : float
        The scalar to check.

    name : str
        The name of the scalar, which is used in the error message.

    Returns
    -------
    value : float
    """

    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise OutOfRangeError('The %s must be a real number, but %r was given.'
                              % (name, value))
    value = float(value)
    if not np.isfinite(value) or value <= 0.0 or value > 1.0:
        raise OutOfRangeError('The %s must lie in (0, 1], but %s was given.'
                              % (name, value))
    return value


def _check_n(n: int, name='N') -> int:
    """Checks that a coboson number is an integer in [0, 10**6]."""

    if not isinstance(n, numbers.Integral) or isinstance(n, bool):
        raise OutOfRangeError('The %s must be an integer, but %r was given.'
                              % (name, n))
    n = int(n)
    if n < 0 or n > _N_CAP:
        raise OutOfRangeError('The %s must lie in [0, %s], but %s was given.'
                              % (name, _N_CAP, n))
    return n


def _check_n_array(n_values) -> np.ndarray:
    """Checks an array of coboson numbers."""

    n_values = np.atleast_1d(np.asarray(n_values))
    if n_values.ndim != 1 or not np.issubdtype(n_values.dtype, np.integer):
        raise OutOfRangeError('The coboson numbers must be a one-dimensional '
                              'integer array.')
    if n_values.size and (n_values.min() < 0 or n_values.max() > _N_CAP):
        raise OutOfRangeError('The coboson numbers must lie in [0, %s].'
                              % (_N_CAP))
    return n_values.astype(np.int64)
