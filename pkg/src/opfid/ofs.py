"""
Operator fidelity susceptibility for arbitrary (H0, V) pairs.

W(t) is the time integral of the interaction-picture perturbation exp(iH0 t) V exp(-iH0 t). In the
H0 eigenbasis

  W_mn = V_mn * t * exp(i D t / 2) * sinc(D t / 2),    D = E_m - E_n

and the susceptibility is the variance of W under the normalized trace,

  chi = (1/2) [ Tr(W^2)/d - (Tr(W)/d)^2 ]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Optional

import numpy as np

from .constants import GRID_UNIFORM_RTOL, SECULAR_THRESHOLD
from .errors import OpfidError, SweepPointError, ValidationError
from .hamiltonians import realize_dense
from .numerics import check_hermitian, check_same_dim, stable_sinc

@dataclass(frozen=True)
class ChiResult:
  """
  Operator fidelity susceptibility.
  - chi: total, >= 0
  - secular_part: contribution of energy-conserving matrix elements (grows like t^2)
  - oscillatory_part: the bounded remainder
  The parts are None when no split is available (e.g. a bare W, or a mixed-state value).
  """
  chi: float
  secular_part: Optional[float] = None
  oscillatory_part: Optional[float] = None

@dataclass(frozen=True)
class SweepRecord:
  param_name: str
  param_value: float
  chi: ChiResult
  derivative: Optional[float] = None
  degeneracy: Optional[int] = None
  epsilon: Optional[float] = None

def w_eigenbasis(s0, v, t, threshold=SECULAR_THRESHOLD):
  """
  W(t) in the H0 eigenbasis, and the mask of its secular elements (|D t| <= threshold).
  """
  v = check_hermitian(v, 'perturbation')
  check_same_dim(s0.vectors, v, ('H0', 'V'))

  vt = s0.to_eigenbasis(v)
  delta_t = (s0.energies[:, None] - s0.energies[None, :]) * t
  w = vt * (t * np.exp(0.5j * delta_t) * stable_sinc(0.5 * delta_t))
  return w, np.abs(delta_t) <= threshold

def w_matrix(s0, v, t):
  """ W(t) in the computational basis """
  w, _ = w_eigenbasis(s0, v, t)
  return s0.from_eigenbasis(w)

def chi_f(w, d=None, secular_mask=None):
  """
  chi = (1/2)[Tr(W^2)/d - (Tr(W)/d)^2], computed as the normalized Frobenius norm of the traceless
  part of W so it is nonnegative by construction. With a secular mask (in the same basis as w) the
  result is split into secular and oscillatory parts.
  """
  w = check_hermitian(w, 'W')
  if d is None:
    d = w.shape[0]

  # W - (Tr W / d) I only differs from W on the diagonal, which is always secular
  mean = np.trace(w).real / d
  centered = w - mean * np.eye(w.shape[0])
  weights = np.abs(centered) ** 2
  chi = 0.5 * float(np.sum(weights)) / d

  if secular_mask is None:
    return ChiResult(chi)

  secular = 0.5 * float(np.sum(weights[secular_mask])) / d
  return ChiResult(chi, secular, chi - secular)

def chi_f_spectral(s0, v, t, threshold=SECULAR_THRESHOLD):
  """ chi with the secular/oscillatory split, from the H0 spectrum and V """
  w, mask = w_eigenbasis(s0, v, t, threshold)
  return chi_f(w, s0.dim, mask)

def fidelity_from_chi(chi, epsilon):
  """
  Operator fidelity predicted to second order in epsilon: F^2 = 1 - 2 eps^2 chi (clipped at 0)
  """
  return float(np.sqrt(max(0.0, 1.0 - 2.0 * epsilon * epsilon * chi)))

# =========================================================================
# Sweeps
# =========================================================================
def check_grid(grid):
  grid = [float(g) for g in grid]
  if not grid:
    raise ValidationError('sweep grid is empty')
  steps = np.diff(grid)
  if len(steps) and not (np.all(steps > 0) or np.all(steps < 0)):
    raise ValidationError('sweep grid must be strictly monotone')
  return grid

def _operator_point(args):
  """ One grid point of chi_f_sweep; top-level so a worker pool can pickle it """
  model, t, value = args
  try:
    v = realize_dense(model.perturbation())
    s0 = model.diagonalize(realize_dense(model.hamiltonian(value)))
    chi = chi_f_spectral(s0, v, t)
  except (OpfidError, np.linalg.LinAlgError, MemoryError) as e:
    raise SweepPointError(model.param_name, value, e) from e
  return SweepRecord(model.param_name, value, chi)

def map_points(func, items, jobs=1):
  """ Apply func to items in order, on a process pool when jobs > 1 """
  if jobs is None or jobs <= 1:
    return [func(item) for item in items]
  with Pool(processes=jobs) as pool:
    return pool.map(func, items)

def chi_f_sweep(model, grid, t, jobs=1):
  """
  chi over a monotone grid of the model's parameter, one SweepRecord per point in grid order.
  V is the family's perturbation (sum s_i.s_{i+2} for Heisenberg, sum Z/2 for Ising).
  """
  grid = check_grid(grid)
  model.check()

  logging.info('Operator sweep of ' + model.family + ' n=' + str(model.n) + ' over ' + str(len(grid)) + ' points')
  records = map_points(_operator_point, [(model, t, value) for value in grid], jobs)
  logging.info('Operator sweep done')
  return records

def is_uniform(values, rtol=GRID_UNIFORM_RTOL):
  steps = np.diff(np.asarray(values, dtype=float))
  if len(steps) == 0 or steps[0] == 0:
    return False
  return bool(np.max(np.abs(steps - steps[0])) <= rtol * abs(steps[0]))

def sweep_derivative(records):
  """
  d chi / d param on a uniform grid: central differences inside, second-order one-sided
  differences at both ends. Returns new records with the derivative populated.
  """
  if len(records) < 3:
    raise ValidationError('derivative needs at least 3 records, got ' + str(len(records)))
  values = [r.param_value for r in records]
  if not is_uniform(values):
    raise ValidationError('derivative needs a uniform grid')

  chi = np.array([r.chi.chi for r in records])
  deriv = np.gradient(chi, values[1] - values[0], edge_order=2)
  return [
    SweepRecord(r.param_name, r.param_value, r.chi, float(dv), r.degeneracy, r.epsilon)
    for r, dv in zip(records, deriv)]
