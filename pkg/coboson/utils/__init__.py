from __future__ import absolute_import

from ._checks import (_basic_autocorrect, _check_engine_choice, _check_extremal_kind,
                      _check_sweep_mode, _check_figure_choice, _check_format_choice,
                      _check_unit_interval, _check_n, _check_n_array)
from ._io import (_json_dump, _json_load, _csv_dump, _read_coefficients,
                  _default_output_dir, _path_with_format)


__all__ = ['_basic_autocorrect', '_check_engine_choice',
           '_check_extremal_kind', '_check_sweep_mode',
           '_check_figure_choice', '_check_format_choice',
           '_check_unit_interval', '_check_n', '_check_n_array',
           '_json_dump', '_json_load', '_csv_dump',
           '_read_coefficients', '_default_output_dir',
           '_path_with_format']
