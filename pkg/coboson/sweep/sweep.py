"""
The :mod:`coboson.sweep.sweep` module evaluates the bound hierarchy
over parameter grids and writes the results as CSV or JSON files. It
includes the :class:`coboson.SweepConfig` class and the
:func:`coboson.run_sweep` function.
"""

# License: MIT

from __future__ import annotations

import collections
import logging
import math
import numbers
import os
import typing

import joblib
import numpy as np
import pandas as pd

from coboson.bounds import bounds_frame, bounds_report
from coboson.chi import chi_series
from coboson.exceptions import (CobosonError, DegeneratePeakedError,
                                HierarchyViolation, InfeasiblePairError,
                                NotApplicableError, OutOfRangeError,
                                STooSmallError)
from coboson.extremal import (make_extremal, maximizing_distribution,
                              minimizing_distribution)
from coboson.schmidt import (SchmidtDistribution, feasible, lambda1_min,
                             load_distribution, p_max, p_min)
from coboson.sweep._figure_params import figure_params
from coboson.utils._checks import (_check_engine_choice, _check_format_choice,
                                   _check_n, _check_sweep_mode)
from coboson.utils._definition import (_CHAIN_LABELS, _EXIT_BAD_ARGUMENTS,
                                       _EXIT_INFEASIBLE, _EXIT_INTERNAL,
                                       _EXIT_IO_FAILURE, _EXIT_OK)
from coboson.utils._io import (_csv_dump, _default_output_dir, _frame_records,
                               _json_dump, _path_with_format)

logger = logging.getLogger(__name__)

Artifact = collections.namedtuple('Artifact', ['name', 'record', 'frame'])

_BOUNDS_COLUMNS = (['index', 'P', 'lambda1', 'N', 'skipped']
                   + ['chi_%s' % (label) for label in _CHAIN_LABELS]
                   + ['ratio_%s' % (label) for label in _CHAIN_LABELS]
                   + ['one_minus_ratio_%s' % (label) for label in _CHAIN_LABELS]
                   + ['smooth_lower', 'smooth_upper', 'validity'])

_DIST_COLUMNS = ['chi_dist', 'ratio_dist']

_EXTREMAL_GRID_COLUMNS = ['index', 'P', 'lambda1', 'skipped', 'min_S', 'min_lambda2',
                          'min_lambdaS', 'max_L', 'max_lambdaL', 'max_lambdaSigma']


class SweepConfig:
    """Configuration of a single evaluation, a parameter sweep, a
    figure preset, or the verification suite.

    Parameters
    ----------
    mode : str
        One of 'chi', 'bounds', 'extremal', 'sweep_lambda1', 'sweep_p',
        'sweep_n', 'verify' or 'figure'.

    P : float or None, optional (default=None)
        The fixed purity.

    lambda1 : float or None, optional (default=None)
        The fixed largest Schmidt coefficient.

    N : int or None, optional (default=None)
        The fixed coboson number.

    grid : tuple or None, optional (default=None)
        The (start, stop, steps) of the swept parameter. If None,
        then the feasible interval of the swept parameter is used
        with 200 steps. The coboson number sweep requires a grid.

    figure : str or None, optional (default=None)
        One of 'fig1', 'fig2', 'fig3', 'fig4' or 'fig5'.

    dist : SchmidtDistribution, str or None, optional (default=None)
        A distribution, or the path of a JSON or CSV file holding one,
        whose chi_N and ratio accompany the sweep rows.

    n_max : int or None, optional (default=None)
        The largest coboson number of the chi mode. If None, then
        the number of modes is used.

    engine : str, optional (default='esp')
        The chi engine.

    kind : str, optional (default='min_pl1')
        The extremal family of the extremal mode.

    s_cut : int or None, optional (default=None)
        The number of modes that approximate an infinitesimal tail
        when an extremal distribution is expanded.

    output : str or None, optional (default=None)
        The output path. If None, then a file named after the mode is
        written to the directory in the environment variable
        COBOSON_OUTPUT_DIR, or to the current directory.

    fmt : str, optional (default='csv')
        Either 'csv' or 'json'.

    seed : int, optional (default=0)
        Determines random number generation in the verification suite.

    cases : int, optional (default=100)
        The number of random cases per verification suite.

    jobs : int, optional (default=1)
        The number of jobs to run in parallel.

    verbose : int, optional (default=0)
        Determines the verbosity of joblib.
    """

    def __init__(self, mode: str, P=None, lambda1=None, N=None, grid=None, figure=None,
                 dist=None, n_max=None, engine='esp', kind='min_pl1', s_cut=None,
                 output=None, fmt='csv', seed=0, cases=100, jobs=1, verbose=0):
        self.mode = _check_sweep_mode(mode)
        self.P = P
        self.lambda1 = lambda1
        self.N = N
        self.grid = grid
        self.figure = figure
        self.dist = dist
        self.n_max = n_max
        self.engine = _check_engine_choice(engine)
        self.kind = kind
        self.s_cut = s_cut
        self.output = output
        self.fmt = _check_format_choice(fmt)
        self.seed = seed
        self.cases = cases
        self.jobs = jobs
        self.verbose = verbose
        self._validate_sweep_options()

    def _validate_sweep_options(self):
        assert isinstance(self.jobs, int) and self.jobs != 0
        assert isinstance(self.verbose, int)
        assert self.output is None or isinstance(self.output, str)

        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise OutOfRangeError('The seed must be a non-negative integer, but %s was given.'
                                  % (self.seed))
        if not isinstance(self.cases, numbers.Integral) or self.cases < 1:
            raise OutOfRangeError('The number of cases must be at least 1, but %s was given.'
                                  % (self.cases))
        if self.N is not None:
            self.N = _check_n(self.N)
        if self.n_max is not None:
            self.n_max = _check_n(self.n_max, name='Nmax')
        if self.s_cut is not None and (not isinstance(self.s_cut, numbers.Integral)
                                       or self.s_cut < 1):
            raise OutOfRangeError('The tail cut must be a positive integer, but %s was given.'
                                  % (self.s_cut))

        if self.grid is not None:
            if len(self.grid) != 3:
                raise ValueError('The grid must be given as (start, stop, steps).')
            start, stop, steps = self.grid
            if not start < stop:
                raise OutOfRangeError('The grid start %s must be smaller than its stop %s.'
                                      % (start, stop))
            if not isinstance(steps, numbers.Integral) or steps < 2:
                raise OutOfRangeError('The grid needs at least 2 steps, but %s was given.'
                                      % (steps))

        required = dict(chi=['dist'],
                        bounds=['P', 'lambda1', 'N'],
                        extremal=[],
                        sweep_lambda1=['P', 'N'],
                        sweep_p=['lambda1', 'N'],
                        sweep_n=['P', 'lambda1', 'grid'],
                        verify=[],
                        figure=['figure'])
        missing = [name for name in required[self.mode] if getattr(self, name) is None]
        if missing:
            raise ValueError('The mode: %s requires the parameters %s.'
                             % (self.mode, ', '.join(missing)))

        if self.mode in ['bounds', 'sweep_n'] and not feasible(P=self.P, lambda1=self.lambda1):
            raise InfeasiblePairError('No Schmidt distribution has purity %s and largest '
                                      'coefficient %s.' % (self.P, self.lambda1))

    @property
    def default_stem(self) -> str:
        return self.figure if self.mode == 'figure' else self.mode

    def output_stem(self) -> str:
        """Resolves the output path without its format extension."""

        if self.output is not None:
            root, ext = os.path.splitext(self.output)
            return root if ext.lower() in ['.csv', '.json'] else self.output
        return os.path.join(_default_output_dir(), self.default_stem)

    def parameters(self) -> dict:
        """Lists the configuration entries that shape the output."""

        dist = self.dist if isinstance(self.dist, (str, type(None))) else 'in-memory'
        return dict(mode=self.mode, P=self.P, lambda1=self.lambda1, N=self.N,
                    grid=list(self.grid) if self.grid is not None else None,
                    figure=self.figure, dist=dist)


def _exit_status(error: BaseException) -> int:
    """Maps an exception onto the documented exit codes."""

    if isinstance(error, HierarchyViolation):
        return _EXIT_INTERNAL
    elif isinstance(error, (InfeasiblePairError, DegeneratePeakedError,
                            STooSmallError, NotApplicableError)):
        return _EXIT_INFEASIBLE
    elif isinstance(error, OSError):
        return _EXIT_IO_FAILURE
    elif isinstance(error, (CobosonError, ValueError, KeyError)):
        return _EXIT_BAD_ARGUMENTS
    return _EXIT_INTERNAL


def _resolve_distribution(dist) -> typing.Optional[SchmidtDistribution]:
    if dist is None or isinstance(dist, SchmidtDistribution):
        return dist
    return load_distribution(path=dist)


def _grid(grid, default_start: float, default_stop: float, default_steps=200) -> np.ndarray:
    if grid is None:
        return np.linspace(default_start, default_stop, default_steps)
    start, stop, steps = grid
    return np.linspace(start, stop, steps)


def _n_grid(grid) -> np.ndarray:
    start, stop, steps = grid
    values = np.unique(np.round(np.linspace(start, stop, steps)).astype(np.int64))
    return values[values >= 0]


def _one_minus_ratio(row: dict) -> dict:
    for label in _CHAIN_LABELS:
        row['one_minus_ratio_%s' % (label)] = 1.0 - row['ratio_%s' % (label)]
    return row


def _bounds_row(index: int, P: float, lambda1: float, N: int) -> dict:
    """Evaluates one grid point, flagging infeasible points as skipped."""

    if not feasible(P=P, lambda1=lambda1):
        logger.debug('Skipping the infeasible grid point (%s, %s).', P, lambda1)
        return dict(index=index, P=P, lambda1=lambda1, N=N, skipped=True)
    row = bounds_report(P=P, lambda1=lambda1, N=N)._row()
    row.update(index=index, skipped=False)
    return _one_minus_ratio(row)


def _dist_columns(df: pd.DataFrame, dist: SchmidtDistribution, n_values) -> pd.DataFrame:
    n_values = np.asarray(n_values, dtype=np.int64)
    series = chi_series(dist=dist, n_max=int(n_values.max()) + 1)
    ratio = np.append(series.ratio, np.nan)
    df['chi_dist'] = series.chi[n_values]
    df['ratio_dist'] = ratio[n_values]
    return df


def _parameter_sweep(mode: str, P, lambda1, N: int, grid, jobs: int, verbose: int,
                     dist=None) -> pd.DataFrame:
    """Sweeps lambda1 at fixed P, or P at fixed lambda1."""

    if mode == 'sweep_lambda1':
        values = _grid(grid, default_start=lambda1_min(P), default_stop=math.sqrt(P))
        points = [(P, value) for value in values.tolist()]
    else:
        values = _grid(grid, default_start=p_min(lambda1), default_stop=p_max(lambda1))
        points = [(value, lambda1) for value in values.tolist()]

    logger.info('Sweeping %s over %s grid points at N=%s.', mode, len(points), N)
    parallel = joblib.Parallel(n_jobs=jobs, verbose=verbose, pre_dispatch='2*n_jobs')
    rows = parallel(joblib.delayed(_bounds_row)(index=index, P=point_P,
                                                lambda1=point_lambda1, N=N)
                    for index, (point_P, point_lambda1) in enumerate(points))

    columns = list(_BOUNDS_COLUMNS)
    df = pd.DataFrame(rows, columns=columns)
    if dist is not None:
        df = _dist_columns(df=df, dist=dist, n_values=np.full(len(df), N))
    return df


def _n_sweep(P: float, lambda1: float, grid, dist=None) -> pd.DataFrame:
    n_values = _n_grid(grid)
    logger.info('Sweeping N over %s values at (P, lambda1) = (%s, %s).',
                n_values.size, P, lambda1)
    df = bounds_frame(P=P, lambda1=lambda1, n_values=n_values)
    df['index'] = np.arange(len(df))
    df['skipped'] = False
    for label in _CHAIN_LABELS:
        df['one_minus_ratio_%s' % (label)] = 1.0 - df['ratio_%s' % (label)]
    df = df[_BOUNDS_COLUMNS]
    if dist is not None:
        df = _dist_columns(df=df, dist=dist, n_values=n_values)
    return df


def _extremal_row(index: int, P: float, lambda1: float) -> dict:
    row = dict(index=index, P=P, lambda1=lambda1, skipped=not feasible(P=P, lambda1=lambda1))
    if row['skipped']:
        return row
    try:
        spec = minimizing_distribution(P=P, lambda1=lambda1)
        row.update(min_S=spec.S, min_lambda2=spec.lambda2, min_lambdaS=spec.lambdaS)
    except DegeneratePeakedError:
        logger.debug('The minimizing distribution degenerates at lambda1=%s.', lambda1)
    spec = maximizing_distribution(P=P, lambda1=lambda1)
    row.update(max_L=spec.L, max_lambdaL=spec.lambdaL, max_lambdaSigma=spec.lambdaSigma)
    return row


def _extremal_grid(P: float, grid, jobs: int, verbose: int) -> pd.DataFrame:
    values = _grid(grid, default_start=lambda1_min(P), default_stop=math.sqrt(P))
    parallel = joblib.Parallel(n_jobs=jobs, verbose=verbose, pre_dispatch='2*n_jobs')
    rows = parallel(joblib.delayed(_extremal_row)(index=index, P=P, lambda1=value)
                    for index, value in enumerate(values.tolist()))
    return pd.DataFrame(rows, columns=_EXTREMAL_GRID_COLUMNS)


def _extremal_artifact(name, kind: str, P, lambda1, s_cut) -> Artifact:
    """Packs an extremal spec, expanded when the tail allows it."""

    spec = make_extremal(kind=kind, P=P, lambda1=lambda1)
    if spec.to_blocks().tail_mass > 0.0 and s_cut is None:
        return Artifact(name=name, record=spec.to_dict(), frame=spec.to_frame())
    record = spec.expansion_record(s_cut=s_cut)
    coefficients = record['coefficients']
    frame = pd.DataFrame({'kind': spec.kind,
                          'j': np.arange(1, len(coefficients) + 1),
                          'coefficient': coefficients,
                          's_cut': record['metadata']['s_cut']})
    return Artifact(name=name, record=record, frame=frame)


def _frame_artifact(name, config_parameters: dict, df: pd.DataFrame) -> Artifact:
    record = dict(parameters=config_parameters, rows=_frame_records(df))
    return Artifact(name=name, record=record, frame=df)


def _figure_artifacts(config: SweepConfig) -> list:
    artifacts = []
    for panel in figure_params(config.figure):
        name = '%s_%s' % (config.figure, panel['name'])
        logger.info('Evaluating the panel %s.', name)
        grid = None
        if panel.get('start') is not None:
            grid = (panel['start'], panel['stop'], panel['steps'])

        if panel['mode'] in ['sweep_lambda1', 'sweep_p']:
            if grid is None and panel.get('steps') is not None:
                P, lambda1 = panel.get('P'), panel.get('lambda1')
                if panel['mode'] == 'sweep_lambda1':
                    grid = (lambda1_min(P), math.sqrt(P), panel['steps'])
                else:
                    grid = (p_min(lambda1), p_max(lambda1), panel['steps'])
            df = _parameter_sweep(mode=panel['mode'], P=panel.get('P'),
                                  lambda1=panel.get('lambda1'), N=panel['N'], grid=grid,
                                  jobs=config.jobs, verbose=config.verbose)
            artifacts.append(_frame_artifact(name=name, config_parameters=panel, df=df))
        elif panel['mode'] == 'sweep_n':
            P = panel['P']
            weight = panel['lambda1_weight']
            lambda1 = weight*lambda1_min(P) + (1.0 - weight)*math.sqrt(P)
            df = _n_sweep(P=P, lambda1=lambda1, grid=grid)
            parameters = dict(panel, lambda1=lambda1)
            artifacts.append(_frame_artifact(name=name, config_parameters=parameters, df=df))
        elif panel['mode'] == 'extremal':
            parts = [_extremal_artifact(name=kind, kind=kind, P=panel['P'],
                                        lambda1=panel['lambda1'], s_cut=panel['s_cut'])
                     for kind in panel['kinds']]
            record = dict(parameters=panel, kinds={part.name: part.record for part in parts})
            frame = pd.concat([part.frame for part in parts], ignore_index=True)
            artifacts.append(Artifact(name=name, record=record, frame=frame))
        else:
            df = _extremal_grid(P=panel['P'], grid=grid, jobs=config.jobs,
                                verbose=config.verbose)
            artifacts.append(_frame_artifact(name=name, config_parameters=panel, df=df))
    return artifacts


def sweep_artifacts(config: SweepConfig) -> list:
    """Evaluates a configuration without writing any file.

    Parameters
    ----------
    config : SweepConfig
        The configuration, in any mode except 'verify'.

    Returns
    -------
    artifacts : list of Artifact
        Named tuples of a name (None for a single output), a JSON-ready
        record, and a DataFrame.
    """

    assert isinstance(config, SweepConfig)
    assert config.mode != 'verify'
    dist = _resolve_distribution(config.dist)

    if config.mode == 'chi':
        n_max = config.n_max if config.n_max is not None else dist.n_modes
        series = chi_series(dist=dist, n_max=n_max, engine=config.engine)
        return [Artifact(name=None, record=series.to_dict(), frame=series.to_frame())]
    elif config.mode == 'bounds':
        report = bounds_report(P=config.P, lambda1=config.lambda1, N=config.N)
        return [Artifact(name=None, record=report.to_dict(), frame=report.to_frame())]
    elif config.mode == 'extremal':
        return [_extremal_artifact(name=None, kind=config.kind, P=config.P,
                                   lambda1=config.lambda1, s_cut=config.s_cut)]
    elif config.mode in ['sweep_lambda1', 'sweep_p']:
        df = _parameter_sweep(mode=config.mode, P=config.P, lambda1=config.lambda1,
                              N=config.N, grid=config.grid, jobs=config.jobs,
                              verbose=config.verbose, dist=dist)
        return [_frame_artifact(name=None, config_parameters=config.parameters(), df=df)]
    elif config.mode == 'sweep_n':
        df = _n_sweep(P=config.P, lambda1=config.lambda1, grid=config.grid, dist=dist)
        return [_frame_artifact(name=None, config_parameters=config.parameters(), df=df)]
    else:
        return _figure_artifacts(config)


def write_artifacts(artifacts: list, config: SweepConfig) -> list:
    """Writes each artifact in the configured format.

    Returns
    -------
    paths : list of str
    """

    stem = config.output_stem()
    paths = []
    for artifact in artifacts:
        path = stem if artifact.name is None else '%s_%s' % (stem, artifact.name)
        path = _path_with_format(path, config.fmt)
        if config.fmt == 'json':
            _json_dump(record=artifact.record, filename=path)
        else:
            _csv_dump(df=artifact.frame, filename=path)
        logger.info('Wrote %s.', path)
        paths.append(path)
    return paths


def run_sweep(config: SweepConfig) -> int:
    """Runs a configuration and writes its output files.

    Parameters
    ----------
    config : SweepConfig
        The configuration.

    Returns
    -------
    status : int
        0 on success, 1 for bad arguments, 2 for infeasible fixed
        parameters, 3 for an I/O failure, and 4 for an internal
        hierarchy violation or a failed verification.
    """

    assert isinstance(config, SweepConfig)
    if config.mode == 'verify':
        from coboson.sweep.verify import run_verify

        status, report = run_verify(seed=config.seed, cases=config.cases,
                                    jobs=config.jobs, verbose=config.verbose)
        try:
            _json_dump(record=report, filename=_path_with_format(config.output_stem(),
                                                                 'json'))
        except OSError as error:
            logger.error('%s', error)
            return _EXIT_IO_FAILURE
        return status

    try:
        write_artifacts(artifacts=sweep_artifacts(config), config=config)
    except Exception as error:
        status = _exit_status(error)
        if status == _EXIT_INTERNAL:
            logger.exception('The sweep failed with an internal error.')
        else:
            logger.error('%s', error)
        return status
    return _EXIT_OK
