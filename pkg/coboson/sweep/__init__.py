from __future__ import absolute_import

from .sweep import SweepConfig, run_sweep, sweep_artifacts, write_artifacts
from .verify import run_verify
from ._figure_params import figure_params


__all__ = ['SweepConfig', 'run_sweep',
           'sweep_artifacts', 'write_artifacts',
           'run_verify', 'figure_params']
