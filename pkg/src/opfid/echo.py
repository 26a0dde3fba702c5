"""
Brute-force ground truth for the susceptibility engines: echo fidelities from full matrix
evolutions, epsilon -> 0 extrapolation, state Loschmidt echoes and the Haar-average check.

The operator fidelity of H0 and H1 = H0 + eps V after time t is F = |Tr(U0^dagger U1)|/d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .constants import (
  ECHO_LADDER_SCALE, ECHO_LADDER_SIZE, HAAR_BATCH, HAAR_BOOTSTRAP, HAAR_MIN_SAMPLES, NORM_ATOL)
from .errors import ValidationError
from .numerics import check_hermitian, check_same_dim, extrapolate_to_zero
from .spectral import diagonalize, evolve

@dataclass(frozen=True)
class Extrapolation:
  """
  Result of an epsilon -> 0 extrapolation of g(eps) = (1 - F)/eps^2.
  - value: the limit (or the raw g when only one sample was given)
  - extrapolated: False for a single sample
  - estimates: the raw g(eps) values, in input order
  """
  value: float
  extrapolated: bool
  estimates: Tuple[float, ...]

  def __float__(self):
    return self.value

@dataclass(frozen=True)
class HaarAverage:
  """
  Monte-Carlo average of <psi|U_e|psi> over Haar-random states.
  - mean_amplitude_modulus: |mean amplitude|
  - std_error: bootstrap standard error of that modulus
  - amplitude_std_error: bootstrap standard error of the complex mean, sqrt(var Re + var Im)
  - mean_amplitude: the complex mean
  - exact_amplitude: Tr(U_e)/d, what the mean converges to
  """
  mean_amplitude_modulus: float
  std_error: float
  mean_amplitude: complex
  exact_amplitude: complex
  n_samples: int
  amplitude_std_error: float

# =========================================================================
# Echo fidelities
# =========================================================================
def _evolutions(h0, v, epsilon, t):
  h0 = check_hermitian(h0, 'H0')
  v = check_hermitian(v, 'V')
  check_same_dim(h0, v, ('H0', 'V'))

  # Independent diagonalizations; nothing is expanded in epsilon
  u0 = evolve(diagonalize(h0), t)
  u1 = evolve(diagonalize(h0 + epsilon * v), t)
  return u0, u1

def echo_operator(h0, v, epsilon, t):
  """ U_e = U0^dagger U1 """
  u0, u1 = _evolutions(h0, v, epsilon, t)
  return u0.conj().T @ u1

def echo_fidelity(h0, v, epsilon, t):
  """ F = |Tr(U0^dagger U1)|/d """
  u0, u1 = _evolutions(h0, v, epsilon, t)
  return float(min(abs(np.vdot(u0, u1)) / u0.shape[0], 1.0))

def echo_infidelity(h0, v, epsilon, t):
  u0, u1 = _evolutions(h0, v, epsilon, t)
  return float(1.0 - abs(np.vdot(u0, u1)) / u0.shape[0])

def loschmidt_echo_state(h0, v, epsilon, t, psi):
  """ |<psi|U0^dagger U1|psi>| for a normalized state psi """
  psi = np.asarray(psi)
  if abs(np.linalg.norm(psi) - 1.0) > NORM_ATOL:
    raise ValidationError('state must be normalized, |psi| = ' + str(np.linalg.norm(psi)))
  u0, u1 = _evolutions(h0, v, epsilon, t)
  return float(min(abs(np.vdot(u0 @ psi, u1 @ psi)), 1.0))

# =========================================================================
# Extrapolation
# =========================================================================
def extrapolate_infidelity(epsilons, infidelities, even_only=False):
  """
  Richardson extrapolation of g(eps) = (1 - F)/eps^2 from samples of (eps, 1 - F).

  Finite-eps fidelities generally carry odd powers (g = chi + c1 eps + c2 eps^2 + ...), so the
  default fits every power of eps. even_only=True fits powers of eps^2 only, which is exact when
  the infidelity is known to be even in eps.
  """
  eps = np.asarray(epsilons, dtype=float)
  if len(eps) == 0:
    raise ValidationError('extrapolation needs at least one sample')
  if len(np.unique(eps)) != len(eps):
    raise ValidationError('duplicate epsilon in ' + str(list(eps)))
  if np.any(eps <= 0):
    raise ValidationError('epsilons must be positive')

  g = np.asarray(infidelities, dtype=float) / eps ** 2
  estimates = tuple(float(x) for x in g)
  if len(eps) == 1:
    return Extrapolation(estimates[0], False, estimates)

  nodes = eps ** 2 if even_only else eps
  return Extrapolation(extrapolate_to_zero(nodes, g), True, estimates)

def susceptibility_extrapolate(samples, even_only=False):
  """
  chi = lim (1 - F)/eps^2 from samples [(eps, F), ...] with F in (0, 1].
  A single sample returns its raw g(eps) and logs a warning; extrapolate_infidelity carries the
  extrapolated flag for callers that need it.
  """
  samples = list(samples)
  if not samples:
    raise ValidationError('extrapolation needs at least one sample')
  epsilons = [float(e) for e, _ in samples]
  fidelities = np.array([float(f) for _, f in samples])
  if np.any(fidelities <= 0) or np.any(fidelities > 1):
    raise ValidationError('fidelities must lie in (0, 1]')
  result = extrapolate_infidelity(epsilons, 1.0 - fidelities, even_only)
  if not result.extrapolated:
    logging.warning('Single sample at eps=' + str(epsilons[0]) + ': chi is the raw (1 - F)/eps^2, not extrapolated')
  return float(result.value)

def default_epsilons(v, t, count=ECHO_LADDER_SIZE):
  """
  Descending epsilon ladder eps_0 / 2^j with eps_0 = ECHO_LADDER_SCALE / (max(t, 1) ||V - Tr(V)/d||_2),
  so eps t ||V|| stays small enough for the series yet 1 - F stays far above rounding.
  """
  v = np.asarray(v)
  d = v.shape[0]
  norm = np.linalg.norm(v - (np.trace(v).real / d) * np.eye(d), ord=2)
  if norm == 0:
    norm = 1.0
  eps0 = ECHO_LADDER_SCALE / (max(abs(t), 1.0) * norm)
  return [eps0 / 2 ** j for j in range(count)]

def chi_via_echo(h0, v, t, epsilons=None, even_only=False):
  """ Brute-force chi: exact echo infidelities on an epsilon ladder, extrapolated to eps -> 0 """
  if epsilons is None:
    epsilons = default_epsilons(v, t)
  infidelities = [echo_infidelity(h0, v, e, t) for e in epsilons]
  return extrapolate_infidelity(epsilons, infidelities, even_only).value

# =========================================================================
# Haar average
# =========================================================================
def _haar_amplitudes(ue, n_samples, rng):
  """ <psi|U_e|psi> for n_samples normalized complex Gaussian states, generated batch by batch """
  d = ue.shape[0]
  amps = np.empty(n_samples, dtype=complex)
  for start in range(0, n_samples, HAAR_BATCH):
    m = min(HAAR_BATCH, n_samples - start)
    psi = rng.standard_normal((m, d)) + 1j * rng.standard_normal((m, d))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    amps[start:start + m] = np.sum(psi.conj() * (psi @ ue.T), axis=1)
  return amps

def haar_average_check(h0, v, epsilon, t, n_samples, seed):
  """
  Average the echo amplitude over Haar-random states and compare with Tr(U_e)/d.

  States are normalized complex Gaussian vectors from numpy's PCG64 generator seeded with seed, so
  results repeat across runs and platforms. Standard errors of the mean modulus and of the complex
  mean both come from the same HAAR_BOOTSTRAP bootstrap resamples.
  """
  if n_samples < HAAR_MIN_SAMPLES:
    raise ValidationError('Haar average needs at least ' + str(HAAR_MIN_SAMPLES) + ' samples')
  ue = echo_operator(h0, v, epsilon, t)
  rng = np.random.default_rng(seed)
  amps = _haar_amplitudes(ue, n_samples, rng)
  mean = complex(np.mean(amps))

  boot = np.empty(HAAR_BOOTSTRAP, dtype=complex)
  for i in range(HAAR_BOOTSTRAP):
    boot[i] = np.mean(amps[rng.integers(0, n_samples, n_samples)])
  amplitude_error = float(np.sqrt(np.var(boot.real, ddof=1) + np.var(boot.imag, ddof=1)))

  exact = complex(np.trace(ue) / ue.shape[0])
  logging.info('Haar average over ' + str(n_samples) + ' states: ' + str(abs(mean)) + ' vs exact ' + str(abs(exact)))
  return HaarAverage(abs(mean), float(np.std(np.abs(boot), ddof=1)), mean, exact, n_samples, amplitude_error)

def haar_modulus_average(h0, v, epsilon, t, n_samples, seed):
  """
  Diagnostic: mean of |<psi|U_e|psi>| (the averaged Loschmidt echo itself). Differs from
  |Tr(U_e)|/d by O(1/d) corrections.
  """
  ue = echo_operator(h0, v, epsilon, t)
  amps = _haar_amplitudes(ue, n_samples, np.random.default_rng(seed))
  return float(np.mean(np.abs(amps)))
