"""
The :mod:`coboson.utils._io` module provides basic utilities for
loading and dumping records, tables and Schmidt spectra.
"""

# License: MIT

import json
import math
import os
import re
import typing

import numpy as np
import pandas as pd

from coboson.utils._definition import _OUTPUT_DIR_ENV


def _to_builtin(value):
    """Converts numpy scalars and arrays into JSON-ready Python values.

    Non-finite floats become None, so that the dumped stream is
    strict JSON.
    """

    if isinstance(value, dict):
        return {str(key): _to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_to_builtin(item) for item in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _json_dump(record: typing.Union[dict, list], filename: str) -> None:
    """Serializes a record as a JSON formatted stream.

    Parameters
    ----------
    record : dict or list
        The record, which may contain numpy values.

    filename : str
        Name of the file in which the record is dumped.
    """

    assert isinstance(record, (dict, list))
    assert isinstance(filename, str)

    _make_parent_dir(filename)
    with open(filename, 'w') as outfile:
        json.dump(_to_builtin(record), outfile, sort_keys=True, indent=2)
        outfile.write('\n')


def _json_load(filename: str):
    """Deserializes a JSON formatted stream."""

    with open(filename, 'r') as json_file:
        return json.load(json_file)


def _csv_dump(df: pd.DataFrame, filename: str) -> None:
    """Writes a table with a header row and without the index.

    Floats are written with the shortest representation that
    round-trips, so repeated runs produce identical bytes.
    """

    assert isinstance(df, pd.DataFrame)
    assert isinstance(filename, str)

    _make_parent_dir(filename)
    df.to_csv(filename, index=False, float_format=None, lineterminator='\n')


def _frame_records(df: pd.DataFrame) -> list:
    """Converts a table into a list of JSON-ready row records."""

    return [_to_builtin(row) for row in df.to_dict(orient='records')]


def _read_coefficients(path: str) -> np.ndarray:
    """Reads a Schmidt spectrum from a JSON or CSV formatted file.

    A JSON file holds either an array of numbers or an object with the
    key ``coefficients``. A CSV file holds a single column, with or
    without a header row.
    """

    if re.search(r'\.json$', path, flags=re.IGNORECASE):
        raw = _json_load(filename=path)
        if isinstance(raw, dict):
            if 'coefficients' not in raw:
                raise KeyError('The file: %s does not contain the key coefficients.'
                               % (path))
            raw = raw['coefficients']
        return np.asarray(raw, dtype=float)
    elif re.search(r'\.csv$', path, flags=re.IGNORECASE):
        df = pd.read_csv(path, header=None)
        column = pd.to_numeric(df.iloc[:, 0], errors='coerce')
        # A header row parses as NaN in the first line.
        if np.isnan(column.iloc[0]):
            column = column.iloc[1:]
        return column.to_numpy(dtype=float)
    else:
        raise ValueError('The %s does not contain a supported file format. '
                         'Please use either a comma-separated values '
                         '(csv) or JSON formatted file.'
                         % (path))


def _make_parent_dir(filename: str) -> None:
    parent = os.path.dirname(filename)
    if parent:
        os.makedirs(parent, exist_ok=True)


def _default_output_dir() -> str:
    """Finds the default output directory for command line artifacts."""

    return os.environ.get(_OUTPUT_DIR_ENV, os.curdir)


def _path_with_format(path: str, fmt: str) -> str:
    """Appends the format extension unless the path already has one."""

    root, ext = os.path.splitext(path)
    if ext.lower() in ['.csv', '.json']:
        return root + '.' + fmt
    return path + '.' + fmt
