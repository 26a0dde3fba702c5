import click
import logging
import sys
import time
from contextlib import contextmanager

import pandas as pd

from . import __version__
from . import ising
from .constants import (
  HEISENBERG, ISING_ANALYTIC, METHOD_ANALYTIC, METHOD_ED, METHOD_MIXED, METHOD_OPERATOR, MIXED_EPSILON,
  ORACLE_DIMS, ORACLE_ISING_N, ORACLE_ISING_T)
from .data import (
  FORMATS, build_grid, load_config, load_spec, records_to_frame, with_derivative, write_frame,
  write_manifest, write_report)
from .echo import chi_via_echo
from .errors import OpfidError, ResourceError, SweepPointError, ValidationError
from .hamiltonians import realize_dense
from .mixed import mixed_sweep
from .models import heisenberg_family, ising_family
from .ofs import chi_f_spectral, chi_f_sweep
from .oracle import HEISENBERG_N, run_oracle_suite
from .spectral import diagonalize

EXIT_BREACH = 1
EXIT_IO = 3
EXIT_RESOURCE = 4

def configure_logging(verbose):
  level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
  logging.basicConfig(level=level, format='%(levelname)s %(message)s')

def _fail(message, code):
  click.echo('Error: ' + message, err=True)
  sys.exit(code)

@contextmanager
def exit_codes():
  """ Map library errors onto the CLI exit codes """
  try:
    yield
  except SweepPointError as e:
    if isinstance(e.reason, ResourceError):
      _fail(str(e), EXIT_RESOURCE)
    if isinstance(e.reason, ValidationError):
      raise click.UsageError(str(e)) from e
    _fail(str(e), EXIT_BREACH)
  except ResourceError as e:
    _fail(str(e), EXIT_RESOURCE)
  except ValidationError as e:
    raise click.UsageError(str(e)) from e
  except OSError as e:
    _fail(str(e), EXIT_IO)
  except OpfidError as e:
    _fail(str(e), EXIT_BREACH)

def _apply_config(ctx, param, value):
  """ --config FILE.json: its keys become defaults for the command's flags """
  if value:
    try:
      config = load_config(value)
    except ValidationError as e:
      raise click.BadParameter(str(e), ctx, param) from e
    if 'format' in config:
      config['fmt'] = config.pop('format')
    ctx.default_map = {**(ctx.default_map or {}), **config}
  return value

def _check_range(vmin, vmax, step, name):
  if step <= 0:
    raise click.BadParameter('must be positive, got ' + str(step), param_hint='--' + name + '-step')
  if vmax < vmin:
    raise click.BadParameter(
      str(vmax) + ' is below --' + name + '-min ' + str(vmin), param_hint='--' + name + '-max')
  return build_grid(vmin, vmax, step)

def _write(frames, out, fmt, command, params, started):
  df = pd.concat(frames, ignore_index=True)
  write_frame(df, out, fmt)
  manifest = write_manifest(out, command, params, time.time() - started)
  click.echo('Wrote ' + str(len(df)) + ' rows to ' + str(out) + ' (manifest ' + str(manifest) + ')')

def common_options(func):
  """ Flags shared by the sweep commands """
  func = click.option('-v', '--verbose', count=True, help='Log progress (-vv for debug output)')(func)
  func = click.option('--jobs', default=1, show_default=True, help='Worker processes for grid points')(func)
  func = click.option('--format', 'fmt', type=click.Choice(FORMATS), default='csv', show_default=True)(func)
  func = click.option(
    '--config', type=click.Path(exists=True, dir_okay=False), is_eager=True, expose_value=False,
    callback=_apply_config, help='JSON file of flag values')(func)
  return func

# ---------------------------------------------------------------------------

@click.group()
@click.version_option(version=__version__)
def main():
  """Operator fidelity susceptibility of spin chains"""

@main.command('ising-sweep')
@click.option('--n', multiple=True, type=int, required=True,
              help='Chain length, odd for the closed form; repeat for several')
@click.option('--t', default=100.0, show_default=True, help='Evolution time')
@click.option('--lambda-min', default=0.0, show_default=True)
@click.option('--lambda-max', default=4.0, show_default=True)
@click.option('--lambda-step', default=0.005, show_default=True)
@click.option('--mode', type=click.Choice(ising.MODES), default=ising.MODE_CORRECTED, show_default=True,
              help='Zero-mode constant of the closed form')
@click.option('--method', type=click.Choice([METHOD_ANALYTIC, METHOD_ED]), default=METHOD_ANALYTIC,
              show_default=True, help='Closed form in momentum space, or exact diagonalization')
@click.option('--out', type=click.Path(dir_okay=False), default='ising_sweep.csv', show_default=True)
@common_options
@click.pass_context
def ising_sweep(ctx, n, t, lambda_min, lambda_max, lambda_step, mode, method, out, fmt, jobs, verbose):
  """Sweep chi over the transverse field of the Ising chain"""
  configure_logging(verbose)
  if method == METHOD_ANALYTIC:
    for size in n:
      if size < 3 or size % 2 == 0:
        raise click.BadParameter('closed form needs an odd chain length >= 3, got ' + str(size), param_hint='--n')
  grid = _check_range(lambda_min, lambda_max, lambda_step, 'lambda')

  started = time.time()
  frames = []
  with exit_codes():
    for size in n:
      if method == METHOD_ANALYTIC:
        records = ising.chi_closed_sweep(size, grid, t, mode)
      else:
        records = chi_f_sweep(ising_family(size), grid, t, jobs)
      frames.append(records_to_frame(with_derivative(records), ISING_ANALYTIC, size, t, method))
    _write(frames, out, fmt, 'ising-sweep', dict(ctx.params), started)

@main.command('heisenberg-sweep')
@click.option('--n', multiple=True, type=int, required=True, help='Chain length; repeat for several')
@click.option('--t', default=100.0, show_default=True, help='Evolution time (operator method)')
@click.option('--method', type=click.Choice([METHOD_OPERATOR, METHOD_MIXED]), default=METHOD_OPERATOR,
              show_default=True, help='Operator fidelity, or mixed-state ground fidelity')
@click.option('--j1', default=1.0, show_default=True)
@click.option('--j2-min', default=0.0, show_default=True)
@click.option('--j2-max', default=1.0, show_default=True)
@click.option('--j2-step', default=0.01, show_default=True)
@click.option('--epsilon', default=MIXED_EPSILON, show_default=True, help='Perturbation strength (mixed method)')
@click.option('--tol', type=float, default=None, help='Degeneracy tolerance (mixed method)')
@click.option('--out', type=click.Path(dir_okay=False), default='heisenberg_sweep.csv', show_default=True)
@common_options
@click.pass_context
def heisenberg_sweep(ctx, n, t, method, j1, j2_min, j2_max, j2_step, epsilon, tol, out, fmt, jobs, verbose):
  """Sweep chi over the next-nearest-neighbor coupling of the J1-J2 chain"""
  configure_logging(verbose)
  grid = _check_range(j2_min, j2_max, j2_step, 'j2')

  started = time.time()
  frames = []
  with exit_codes():
    for size in n:
      if method == METHOD_OPERATOR:
        records = chi_f_sweep(heisenberg_family(size, j1), grid, t, jobs)
        frames.append(records_to_frame(with_derivative(records), HEISENBERG, size, t, method))
      else:
        records = mixed_sweep(size, grid, epsilon, tol, j1, jobs)
        frames.append(records_to_frame(with_derivative(records), HEISENBERG, size, None, method))
    _write(frames, out, fmt, 'heisenberg-sweep', dict(ctx.params), started)

@main.command('oracle-check')
@click.option('--seed', default=0, show_default=True, help='Seed for the random cases')
@click.option('--pairs', default=50, show_default=True, help='Random Hermitian pairs in the operator check')
@click.option('--dims', multiple=True, type=int, help='Matrix size of the random cases; repeat for several')
@click.option('--ising-n', default=ORACLE_ISING_N, show_default=True, help='Odd chain length of the Ising check')
@click.option('--ising-t', default=ORACLE_ISING_T, show_default=True, help='Evolution time of the Ising check')
@click.option('--heisenberg-n', default=HEISENBERG_N, show_default=True, help='Chain length of the J1-J2 checks')
@click.option('--skip-heisenberg', is_flag=True, help='Skip the J1-J2 chain checks')
@click.option('--inject-fault', is_flag=True, help='Add a check that must fail (literal Ising zero mode)')
@click.option('--report', type=click.Path(dir_okay=False), default=None, help='Write the JSON report here')
@click.option('-v', '--verbose', count=True)
def oracle_check(seed, pairs, dims, ising_n, ising_t, heisenberg_n, skip_heisenberg, inject_fault, report, verbose):
  """Cross-check every closed form against its brute-force oracle"""
  configure_logging(verbose)
  with exit_codes():
    result = run_oracle_suite(
      seed, pairs, skip_heisenberg=skip_heisenberg, inject_fault=inject_fault, dims=dims or ORACLE_DIMS,
      ising_n=ising_n, ising_t=ising_t, heisenberg_n=heisenberg_n)
    if report:
      write_report(result, report)

  for name, check in result['checks'].items():
    click.echo('{:<20} {:>4} cases  max deviation {:.3e}  (tol {:.0e})  {}'.format(
      name, check['cases'], check['max_deviation'], check['tolerance'], 'ok' if check['passed'] else 'BREACH'))

  if not result['passed']:
    sys.exit(EXIT_BREACH)

@main.command('chi')
@click.argument('h0_file', type=click.Path(exists=True, dir_okay=False))
@click.argument('v_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--t', type=float, required=True, help='Evolution time')
@click.option('--no-echo', is_flag=True, help='Skip the brute-force echo value')
@click.option('-v', '--verbose', count=True)
def chi(h0_file, v_file, t, no_echo, verbose):
  """Susceptibility of the pair (H0, V) given as JSON spin-term files"""
  configure_logging(verbose)
  with exit_codes():
    h0_spec = load_spec(h0_file)
    v_spec = load_spec(v_file)
    if h0_spec.n_sites != v_spec.n_sites:
      raise ValidationError(
        'H0 has ' + str(h0_spec.n_sites) + ' sites but V has ' + str(v_spec.n_sites))
    h0 = realize_dense(h0_spec)
    v = realize_dense(v_spec)
    result = chi_f_spectral(diagonalize(h0), v, t)
    echo = None if no_echo else chi_via_echo(h0, v, t)

  click.echo('chi             {:.12g}'.format(result.chi))
  click.echo('chi_secular     {:.12g}'.format(result.secular_part))
  click.echo('chi_oscillatory {:.12g}'.format(result.oscillatory_part))
  if echo is not None:
    click.echo('chi_echo        {:.12g}'.format(echo))
