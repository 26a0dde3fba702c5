import json
import logging
import datetime
from pathlib import Path

import numpy as np
import pandas as pd

from . import __version__
from . import constants
from .errors import ValidationError
from .hamiltonians import HamiltonianSpec, max_sites
from .ofs import is_uniform, sweep_derivative

FORMATS = ('csv', 'json')

def build_grid(vmin, vmax, step):
  """
  Uniform grid vmin, vmin + step, ... up to vmax inclusive (within rounding of the last step).
  """
  if step <= 0:
    raise ValidationError('step must be positive, got ' + str(step))
  if vmax < vmin:
    raise ValidationError('max ' + str(vmax) + ' is below min ' + str(vmin))

  count = int(np.floor((vmax - vmin) / step + 1e-9)) + 1
  return [vmin + i * step for i in range(count)]

def with_derivative(records):
  """ Populate the derivative column when the grid allows it; leave records untouched otherwise """
  if len(records) < 3:
    return records
  if not is_uniform([r.param_value for r in records]):
    logging.warning('Grid is not uniform, derivative column left empty')
    return records
  return sweep_derivative(records)

def records_to_frame(records, model, n, t, method):
  """
  Flatten SweepRecords into a DataFrame with columns CSV_COLUMNS in that order. Values that do not
  apply to a record (secular split of a mixed value, missing derivative, ...) are left empty.
  """
  rows = [{
    'model': model,
    'n': n,
    't': t,
    'method': method,
    'param_name': r.param_name,
    'param_value': r.param_value,
    'chi': r.chi.chi,
    'chi_secular': r.chi.secular_part,
    'chi_oscillatory': r.chi.oscillatory_part,
    'chi_derivative': r.derivative,
    'degeneracy': r.degeneracy,
    'epsilon': r.epsilon,
  } for r in records]

  df = pd.DataFrame(rows, columns=constants.CSV_COLUMNS)
  for col in ['t', 'param_value', 'chi', 'chi_secular', 'chi_oscillatory', 'chi_derivative', 'epsilon']:
    df[col] = df[col].astype(float)

  # Nullable integer so missing degeneracies print as empty fields rather than NaN floats
  df['degeneracy'] = df['degeneracy'].astype(float).astype('Int64')
  return df

def write_frame(df, out, fmt='csv'):
  """ Write a sweep frame as CSV (full float precision, empty fields for missing values) or JSON records """
  if fmt not in FORMATS:
    raise ValidationError('unknown output format ' + repr(fmt))
  if fmt == 'csv':
    df.to_csv(out, index=False, float_format='%.17g', na_rep='')
  else:
    df.to_json(out, orient='records', double_precision=15, indent=2)
  logging.info('Wrote ' + str(len(df)) + ' rows to ' + str(out))

def manifest_path(out):
  out = Path(out)
  return out.with_name(out.stem + '.manifest.json')

def tolerances():
  return {
    'hermitian_rtol': constants.HERMITIAN_RTOL,
    'unitary_atol': constants.UNITARY_ATOL,
    'degeneracy_rtol': constants.DEGENERACY_RTOL,
    'secular_threshold': constants.SECULAR_THRESHOLD,
    'sinc_taylor_cutoff': constants.SINC_TAYLOR_CUTOFF,
    'oracle_tolerance': constants.ORACLE_TOLERANCE,
  }

def write_manifest(out, command, config, wall_clock):
  """
  JSON manifest next to a sweep output: the command and its resolved flags, the library version,
  the wall-clock time and the numerical tolerances in force. The timestamp lives only here so the
  data file itself stays reproducible.
  """
  path = manifest_path(out)
  manifest = {
    'command': command,
    'config': config,
    'version': __version__,
    'wall_clock_seconds': wall_clock,
    'tolerances': tolerances(),
    'max_sites': max_sites(),
    'timestamp': datetime.datetime.now().isoformat(),
    'output': str(out),
  }
  with open(path, 'w') as f:
    json.dump(manifest, f, indent=2)
  return path

def load_config(path):
  """
  Read a JSON object of flag values. Keys may use dashes or underscores (lambda-min or lambda_min);
  they are returned with underscores, as click names its parameters.
  """
  with open(path, 'r') as f:
    try:
      raw = json.load(f)
    except json.JSONDecodeError as e:
      raise ValidationError('config ' + str(path) + ' is not valid JSON: ' + str(e)) from e
  if not isinstance(raw, dict):
    raise ValidationError('config ' + str(path) + ' must hold a JSON object')
  return {k.replace('-', '_'): v for k, v in raw.items()}

def load_spec(path):
  """ HamiltonianSpec from a JSON file in the HamiltonianSpec.to_dict schema """
  with open(path, 'r') as f:
    try:
      raw = json.load(f)
    except json.JSONDecodeError as e:
      raise ValidationError('spec ' + str(path) + ' is not valid JSON: ' + str(e)) from e
  if not isinstance(raw, dict):
    raise ValidationError('spec ' + str(path) + ' must hold a JSON object')
  return HamiltonianSpec.from_dict(raw)

def write_report(report, path):
  with open(path, 'w') as f:
    json.dump(report, f, indent=2)
