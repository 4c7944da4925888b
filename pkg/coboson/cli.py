"""
The :mod:`coboson.cli` module provides the command-line front end for
single evaluations, parameter sweeps, figure data, and the
verification suite. Every subcommand writes CSV or JSON files for
external plotting and reports its outcome through the exit status.
"""

# License: MIT

import argparse
import logging
import sys
import typing

from coboson import __version__
from coboson.sweep.sweep import SweepConfig, _exit_status, run_sweep
from coboson.utils._definition import (_ENGINE_CHOICE, _EXIT_BAD_ARGUMENTS,
                                       _FIGURE_CHOICE, _FORMAT_CHOICE)

logger = logging.getLogger(__name__)


class _ArgumentError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports bad arguments with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write('%s: error: %s\n' % (self.prog, message))
        raise _ArgumentError(message)


def _parse_range(text: str) -> typing.Tuple[float, float, int]:
    parts = text.split(':')
    if len(parts) != 3:
        raise argparse.ArgumentTypeError('expected a:b:steps, but got %r' % (text))
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError('expected a:b:steps, but got %r' % (text))


def _common_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('--out', default=None,
                        help='output path; defaults to $COBOSON_OUTPUT_DIR or the '
                             'current directory')
    common.add_argument('--format', dest='fmt', default='csv', choices=_FORMAT_CHOICE)
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--jobs', type=int, default=1)
    common.add_argument('-v', '--verbose', action='count', default=0)
    return common


def _build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = _ArgumentParser(prog='coboson',
                             description='Normalization factors of composite bosons '
                                         'and their bounds.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    chi = subparsers.add_parser('chi', parents=[common],
                                help='chi_N series of a Schmidt distribution')
    chi.add_argument('--dist', required=True)
    chi.add_argument('--n-max', dest='n_max', type=int, default=None)
    chi.add_argument('--engine', default='esp',
                     help='one of %s' % (', '.join(_ENGINE_CHOICE)))

    bounds = subparsers.add_parser('bounds', parents=[common],
                                   help='bound hierarchy at a single point')
    bounds.add_argument('--P', dest='P', type=float, required=True)
    bounds.add_argument('--lambda1', type=float, required=True)
    bounds.add_argument('--N', dest='N', type=int, required=True)

    extremal = subparsers.add_parser('extremal', parents=[common],
                                     help='extremal distribution for (P, lambda1)')
    extremal.add_argument('--P', dest='P', type=float, required=True)
    extremal.add_argument('--lambda1', type=float, required=True)
    extremal.add_argument('--kind', default='min')
    extremal.add_argument('--s-cut', dest='s_cut', type=int, default=None)

    sweep = subparsers.add_parser('sweep', parents=[common],
                                  help='bound hierarchy over a parameter grid')
    sweep.add_argument('--mode', required=True, choices=['lambda1', 'P', 'N'])
    sweep.add_argument('--P', dest='P', type=float, default=None)
    sweep.add_argument('--lambda1', type=float, default=None)
    sweep.add_argument('--N', dest='N', type=int, default=None)
    sweep.add_argument('--range', dest='grid', type=_parse_range, default=None,
                       metavar='a:b:steps')
    sweep.add_argument('--dist', default=None)

    figure = subparsers.add_parser('figure', parents=[common],
                                   help='data behind a published figure')
    figure.add_argument('--figure', required=True, choices=_FIGURE_CHOICE)

    verify = subparsers.add_parser('verify', parents=[common],
                                   help='randomized self-verification')
    verify.add_argument('--cases', type=int, default=100)
    return parser


def _config_from_args(args: argparse.Namespace) -> SweepConfig:
    common = dict(output=args.out, fmt=args.fmt, seed=args.seed, jobs=args.jobs,
                  verbose=max(args.verbose - 1, 0))
    if args.command == 'chi':
        return SweepConfig(mode='chi', dist=args.dist, n_max=args.n_max,
                           engine=args.engine, **common)
    elif args.command == 'bounds':
        return SweepConfig(mode='bounds', P=args.P, lambda1=args.lambda1, N=args.N,
                           **common)
    elif args.command == 'extremal':
        return SweepConfig(mode='extremal', P=args.P, lambda1=args.lambda1,
                           kind=args.kind, s_cut=args.s_cut, **common)
    elif args.command == 'sweep':
        mode = 'sweep_%s' % (args.mode.lower())
        return SweepConfig(mode=mode, P=args.P, lambda1=args.lambda1, N=args.N,
                           grid=args.grid, dist=args.dist, **common)
    elif args.command == 'figure':
        return SweepConfig(mode='figure', figure=args.figure, **common)
    return SweepConfig(mode='verify', cases=args.cases, **common)


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s:%(name)s:%(message)s')


def main(argv=None) -> int:
    """Runs the command line interface.

    Parameters
    ----------
    argv : list of str or None, optional (default=None)
        The arguments. If None, then ``sys.argv[1:]`` is used.

    Returns
    -------
    status : int
        0 on success, 1 for bad arguments, 2 for infeasible fixed
        parameters, 3 for an I/O failure, and 4 for an internal
        hierarchy violation or a failed verification.
    """

    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgumentError:
        return _EXIT_BAD_ARGUMENTS

    _configure_logging(args.verbose)
    try:
        config = _config_from_args(args)
    except Exception as error:
        logger.error('%s', error)
        return _exit_status(error)
    return run_sweep(config)
