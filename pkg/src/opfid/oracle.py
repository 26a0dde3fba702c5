"""
Cross-oracle suite: every closed form checked against an independent brute-force route.

  operator:    chi_f on random Hermitian pairs vs Richardson-extrapolated echo infidelities
  ising:       corrected closed form vs the pseudospin echo oracle
  kmode:       per-mode W coefficients vs the closed-form k-sum
  entangling:  fidelity formula vs SVD operator entanglement of the controlled-U
  heisenberg:  dense vs Sz-block diagonalization, and chi_f vs the echo oracle
"""

from __future__ import annotations

import logging

import numpy as np

from . import ising
from .constants import (
  ORACLE_DIMS, ORACLE_ISING_LAMBDAS, ORACLE_ISING_N, ORACLE_ISING_T, ORACLE_TIMES, ORACLE_TOLERANCE)
from .echo import chi_via_echo
from .entangling import entangling_power_from_fidelity, entangling_power_of_evolution
from .errors import ValidationError
from .hamiltonians import realize_dense
from .models import heisenberg_family
from .ofs import chi_f_spectral
from .spectral import diagonalize

KMODE_TOLERANCE = 1e-10
ENTANGLING_TOLERANCE = 1e-9
BLOCK_TOLERANCE = 1e-9

HEISENBERG_N = 6
HEISENBERG_J2 = (0.0, 0.3, 0.5, 0.8)
HEISENBERG_T = 10.0

# Zero-mode mismatch of the literal closed form shows plainly at a tiny chain
FAULT_N = 3
FAULT_T = 10.0

def random_hermitian(d, rng):
  a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
  return 0.5 * (a + a.conj().T)

def relative_deviation(value, reference):
  scale = max(abs(reference), 1e-300)
  return abs(value - reference) / scale

def _summary(deviations, tolerance):
  worst = max(deviations) if deviations else 0.0
  return {
    'cases': len(deviations),
    'max_deviation': float(worst),
    'tolerance': tolerance,
    'passed': bool(worst < tolerance),
  }

# =========================================================================
# Individual checks; each returns a list of deviations
# =========================================================================
def check_operator_pairs(n_pairs, rng, dims=ORACLE_DIMS, times=ORACLE_TIMES):
  """ Relative deviation of chi_f from the echo extrapolation on random (H0, V) pairs """
  deviations = []
  for i in range(n_pairs):
    d = dims[i % len(dims)]
    t = times[(i // len(dims)) % len(times)]
    h0 = random_hermitian(d, rng)
    v = random_hermitian(d, rng)
    chi = chi_f_spectral(diagonalize(h0), v, t).chi
    deviations.append(relative_deviation(chi_via_echo(h0, v, t), chi))
  return deviations

def check_ising_closed(n=ORACLE_ISING_N, lambdas=ORACLE_ISING_LAMBDAS, t=ORACLE_ISING_T, mode=ising.MODE_CORRECTED):
  """ Closed form (in the given mode) vs the extrapolated pseudospin echo """
  deviations = []
  for lam in lambdas:
    closed = ising.chi_f_closed(n, lam, t, mode).chi
    deviations.append(relative_deviation(ising.chi_via_extrapolation(n, lam, t), closed))
  return deviations

def check_kmode_identity(n_cases, rng):
  """ (1/2) sum_k (a^2 + b^2 + c^2) against the k-sum of the closed form """
  deviations = []
  for _ in range(n_cases):
    n = 2 * int(rng.integers(1, 200)) + 1
    lam = float(rng.uniform(0, 4))
    t = float(rng.uniform(0, 100))
    m = ising.modes(n, lam)
    w = ising.w_coefficients(m, t)
    from_w = 0.5 * np.sum(w.a ** 2 + w.b ** 2 + w.c ** 2)

    r = ising.chi_f_closed(n, lam, t)
    from_closed = r.chi - 0.5 * t * t * ising.ZERO_MODE_CONSTANT[ising.MODE_CORRECTED]
    deviations.append(relative_deviation(from_w, from_closed) if from_closed else abs(from_w))
  return deviations

def check_entangling_chain(n_cases, rng, dims=ORACLE_DIMS):
  """ Absolute deviation between the two entangling-power routes """
  deviations = []
  for i in range(n_cases):
    d = dims[i % len(dims)]
    h0 = random_hermitian(d, rng)
    v = random_hermitian(d, rng)
    epsilon = float(rng.uniform(0.01, 1.0))
    t = float(rng.uniform(0.1, 10.0))
    r = entangling_power_of_evolution(h0, v, epsilon, t)
    deviations.append(abs(entangling_power_from_fidelity(r.fidelity, d) - r.entangling_power))
  return deviations

def check_heisenberg_blocks(n=HEISENBERG_N, j2_values=HEISENBERG_J2, t=HEISENBERG_T):
  """ chi from the Sz-block path vs the dense path """
  blocks = heisenberg_family(n, use_sz_blocks=True)
  dense = heisenberg_family(n, use_sz_blocks=False)
  v = realize_dense(blocks.perturbation())
  deviations = []
  for j2 in j2_values:
    h0 = realize_dense(blocks.hamiltonian(j2))
    a = chi_f_spectral(blocks.diagonalize(h0), v, t).chi
    b = chi_f_spectral(dense.diagonalize(h0), v, t).chi
    deviations.append(relative_deviation(a, b))
  return deviations

def check_heisenberg_echo(n=HEISENBERG_N, j2_values=HEISENBERG_J2, t=HEISENBERG_T):
  """ chi_f vs the echo oracle on the J1-J2 chain, degenerate levels included """
  model = heisenberg_family(n)
  v = realize_dense(model.perturbation())
  deviations = []
  for j2 in j2_values:
    h0 = realize_dense(model.hamiltonian(j2))
    chi = chi_f_spectral(model.diagonalize(h0), v, t).chi
    deviations.append(relative_deviation(chi_via_echo(h0, v, t), chi))
  return deviations

# =========================================================================
# Suite
# =========================================================================
def run_oracle_suite(seed=0, n_pairs=50, n_kmode=100, n_entangling=50, skip_heisenberg=False, inject_fault=False,
                     dims=ORACLE_DIMS, ising_n=ORACLE_ISING_N, ising_t=ORACLE_ISING_T, heisenberg_n=HEISENBERG_N):
  """
  Run every check and return a report:

    {'checks': {name: {'cases', 'max_deviation', 'tolerance', 'passed'}}, 'passed': bool, 'seed': seed,
     'sizes': {'dims', 'ising_n', 'ising_t', 'heisenberg_n'}}

  dims sets the matrix sizes of the random operator and entangling cases, ising_n and ising_t the
  chain and time of the closed-form check, heisenberg_n the J1-J2 chain length.

  inject_fault adds a check of the literal-mode Ising closed form against the pseudospin
  oracle on a 3-site chain, which must fail.
  """
  rng = np.random.default_rng(seed)
  checks = {}

  def run(name, tolerance, func, *args):
    logging.info('Oracle check ' + name)
    checks[name] = _summary(func(*args), tolerance)
    if not checks[name]['passed']:
      logging.warning('Oracle check ' + name + ' breached: ' + str(checks[name]['max_deviation']))

  dims = tuple(int(d) for d in dims)
  if not dims or min(dims) < 2:
    raise ValidationError('oracle matrix sizes must be >= 2, got ' + str(list(dims)))

  run('operator', ORACLE_TOLERANCE, check_operator_pairs, n_pairs, rng, dims)
  run('ising', ORACLE_TOLERANCE, check_ising_closed, ising_n, ORACLE_ISING_LAMBDAS, ising_t)
  run('kmode', KMODE_TOLERANCE, check_kmode_identity, n_kmode, rng)
  run('entangling', ENTANGLING_TOLERANCE, check_entangling_chain, n_entangling, rng, dims)
  if not skip_heisenberg:
    run('heisenberg_blocks', BLOCK_TOLERANCE, check_heisenberg_blocks, heisenberg_n)
    run('heisenberg_echo', ORACLE_TOLERANCE, check_heisenberg_echo, heisenberg_n)
  if inject_fault:
    run('ising_literal', ORACLE_TOLERANCE, check_ising_closed,
        FAULT_N, ORACLE_ISING_LAMBDAS, FAULT_T, ising.MODE_LITERAL)

  return {
    'seed': seed,
    'sizes': {'dims': list(dims), 'ising_n': ising_n, 'ising_t': ising_t, 'heisenberg_n': heisenberg_n},
    'checks': checks,
    'passed': all(c['passed'] for c in checks.values()),
  }
