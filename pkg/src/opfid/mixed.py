"""
Mixed-state fidelity of degenerate ground manifolds.

The ground state of H is taken as the equal mixture (1/R) sum_r |psi_r><psi_r| over its R-fold
degenerate ground level; two such mixtures are compared with the Uhlmann fidelity
F(rho0, rho1) = Tr sqrt(rho1^(1/2) rho0 rho1^(1/2)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .constants import MIXED_EPSILON, PSD_ATOL, TRACE_ATOL
from .errors import OpfidError, SweepPointError, ValidationError
from .hamiltonians import realize_dense
from .models import heisenberg_family
from .numerics import check_hermitian, check_same_dim
from .ofs import ChiResult, SweepRecord, check_grid, map_points
from .spectral import default_degeneracy_tolerance, degeneracy_groups, diagonalize

@dataclass(frozen=True)
class GroundMixture:
  """
  Equal-weight mixture over an R-fold ground level.
  - basis: d x R isometry whose columns span the ground level
  The density is basis @ basis^dagger / R.
  """
  basis: np.ndarray

  @property
  def dim(self):
    return self.basis.shape[0]

  @property
  def degeneracy(self):
    return self.basis.shape[1]

  @property
  def density(self):
    return self.basis @ self.basis.conj().T / self.degeneracy

@dataclass(frozen=True)
class MixedPoint:
  """ Mixed-state susceptibility at one point, with the ground degeneracies of H0 and H0 + eps V """
  chi: float
  fidelity: float
  degeneracy: int
  degeneracy_perturbed: int
  epsilon: float

def ground_mixture(s, tol=None):
  """ Projector onto the first degeneracy group of s, divided by its size """
  groups = degeneracy_groups(s, tol)
  return GroundMixture(s.vectors[:, list(groups.ground)])

def _check_density(rho, name):
  rho = check_hermitian(rho, name)
  if abs(np.trace(rho).real - 1.0) > TRACE_ATOL:
    raise ValidationError(name + ' must have unit trace')
  w, u = scipy.linalg.eigh(rho)
  if w[0] < -PSD_ATOL:
    raise ValidationError(name + ' has a negative eigenvalue ' + str(w[0]))
  return w, u

def _clipped(w):
  # Eigenvalues below rounding of the largest one are zero; their square roots would not be
  cutoff = max(float(np.max(w)), 0.0) * 1e-12 if len(w) else 0.0
  return np.where(w > cutoff, w, 0.0)

def uhlmann_fidelity(rho0, rho1):
  """
  Tr sqrt(rho1^(1/2) rho0 rho1^(1/2)) for density matrices or GroundMixtures.

  For two mixtures the sandwiched matrix lives on the ground levels: with isometries Q0, Q1 its
  nonzero eigenvalues are the squared singular values s_i of Q1^dagger Q0 over R0 R1, so
  F = sum s_i / sqrt(R0 R1). This avoids square roots of rounding-level eigenvalues.
  """
  if isinstance(rho0, GroundMixture) and isinstance(rho1, GroundMixture):
    if rho0.dim != rho1.dim:
      raise ValidationError('dimension mismatch: ' + str(rho0.dim) + ' vs ' + str(rho1.dim))
    s = scipy.linalg.svdvals(rho1.basis.conj().T @ rho0.basis)
    return float(min(np.sum(s) / np.sqrt(rho0.degeneracy * rho1.degeneracy), 1.0))

  a = rho0.density if isinstance(rho0, GroundMixture) else np.asarray(rho0)
  b = rho1.density if isinstance(rho1, GroundMixture) else np.asarray(rho1)
  check_same_dim(a, b, ('rho0', 'rho1'))
  _check_density(a, 'rho0')
  w, u = _check_density(b, 'rho1')

  # rho1^(1/2) from its eigendecomposition, then the symmetric sandwich
  root = (u * np.sqrt(_clipped(w))) @ u.conj().T
  sandwich = root @ a @ root
  lam = scipy.linalg.eigvalsh(0.5 * (sandwich + sandwich.conj().T))
  return float(min(np.sum(np.sqrt(_clipped(lam))), 1.0))

def ground_state_susceptibility(s0, v):
  """
  Pure ground-state fidelity susceptibility from perturbation theory,
  (1/2) sum_{n>0} |V_n0|^2 / (E_n - E_0)^2. Needs a nondegenerate ground level.
  """
  if len(degeneracy_groups(s0).ground) != 1:
    raise ValidationError('ground level is degenerate')
  column = s0.vectors.conj().T @ (v @ s0.vectors[:, 0])
  gaps = s0.energies[1:] - s0.energies[0]
  return float(0.5 * np.sum(np.abs(column[1:]) ** 2 / gaps ** 2))

def mixed_susceptibility_matrices(h0, v, epsilon=MIXED_EPSILON, tol=None, diagonalizer=diagonalize):
  """
  (1 - F)/eps^2 at fixed epsilon, F the Uhlmann fidelity between the ground mixtures of H0 and
  H0 + eps V. Both spectra are diagonalized independently and grouped with the same tolerance
  (by default the one derived from the H0 spectrum); the ranks are not forced to match.
  """
  if epsilon <= 0:
    raise ValidationError('epsilon must be positive, got ' + str(epsilon))
  s0 = diagonalizer(h0)
  s1 = diagonalizer(h0 + epsilon * v)
  if tol is None:
    tol = default_degeneracy_tolerance(s0)

  rho0 = ground_mixture(s0, tol)
  rho1 = ground_mixture(s1, tol)
  f = uhlmann_fidelity(rho0, rho1)
  return MixedPoint((1.0 - f) / epsilon ** 2, f, rho0.degeneracy, rho1.degeneracy, float(epsilon))

def _heisenberg_point(args):
  n, j1, j2, epsilon, tol = args
  model = heisenberg_family(n, j1)
  try:
    h0 = realize_dense(model.hamiltonian(j2))
    v = realize_dense(model.perturbation())
    return mixed_susceptibility_matrices(h0, v, epsilon, tol, model.diagonalize)
  except (OpfidError, np.linalg.LinAlgError, MemoryError) as e:
    raise SweepPointError('j2', j2, e) from e

def mixed_susceptibility(n, j2, epsilon=MIXED_EPSILON, tol=None, j1=1.0):
  """ Mixed-state fidelity susceptibility of the J1-J2 chain at one J2, V = sum s_i.s_{i+2} """
  return _heisenberg_point((n, j1, j2, epsilon, tol)).chi

def mixed_sweep(n, grid, epsilon=MIXED_EPSILON, tol=None, j1=1.0, jobs=1):
  """ mixed_susceptibility over a monotone J2 grid, recording the ground degeneracy R of H0 """
  grid = check_grid(grid)
  heisenberg_family(n, j1).check()

  logging.info('Mixed-state sweep n=' + str(n) + ' over ' + str(len(grid)) + ' points, eps=' + str(epsilon))
  points = map_points(_heisenberg_point, [(n, j1, j2, epsilon, tol) for j2 in grid], jobs)
  return [
    SweepRecord('j2', j2, ChiResult(p.chi), degeneracy=p.degeneracy, epsilon=p.epsilon)
    for j2, p in zip(grid, points)]

def level_crossings(n, grid, j1=1.0, tol=None):
  """
  Indices i where the ground level switches between grid[i] and grid[i+1]: the two ground
  mixtures are nearly orthogonal (Uhlmann fidelity below 1/2).
  """
  grid = check_grid(grid)
  model = heisenberg_family(n, j1)
  model.check()

  mixtures = [ground_mixture(model.diagonalize(realize_dense(model.hamiltonian(j2))), tol) for j2 in grid]
  return [i for i in range(len(grid) - 1) if uhlmann_fidelity(mixtures[i], mixtures[i + 1]) < 0.5]
