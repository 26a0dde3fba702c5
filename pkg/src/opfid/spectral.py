"""
Dense Hermitian eigendecomposition, time evolution and degeneracy detection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from .constants import DEGENERACY_RTOL
from .errors import NumericError, ValidationError
from .numerics import check_hermitian

@dataclass(frozen=True)
class Spectrum:
  """
  Eigendecomposition of a dense Hermitian matrix.
  - energies: ascending
  - vectors: unitary, column j is the eigenvector of energies[j]
  """
  energies: np.ndarray
  vectors: np.ndarray

  @property
  def dim(self):
    return len(self.energies)

  @property
  def span(self):
    return float(self.energies[-1] - self.energies[0]) if self.dim else 0.0

  def to_eigenbasis(self, op):
    """ V^dagger op V """
    return self.vectors.conj().T @ op @ self.vectors

  def from_eigenbasis(self, op):
    """ V op V^dagger """
    return self.vectors @ op @ self.vectors.conj().T

@dataclass(frozen=True)
class DegeneracyGroups:
  """
  Contiguous partition of the level indices 0..d-1 into degenerate blocks.
  - groups: ((0, 1), (2,), ...)
  - tolerance: energy tolerance used to build them
  """
  groups: Tuple[Tuple[int, ...], ...]
  tolerance: float

  @property
  def sizes(self):
    return [len(g) for g in self.groups]

  @property
  def ground(self):
    return self.groups[0]

def _fix_phases(vectors):
  """ Make the largest-magnitude component of every column real and positive """
  idx = np.argmax(np.abs(vectors), axis=0)
  pivots = vectors[idx, np.arange(vectors.shape[1])]
  return vectors * (np.abs(pivots) / pivots)

def diagonalize(h):
  """
  Eigendecomposition of a Hermitian matrix (scipy.linalg.eigh), eigenvector phases fixed so the
  output is reproducible. Degenerate subspaces keep whatever basis the solver returns.
  """
  h = check_hermitian(h, 'Hamiltonian')
  try:
    energies, vectors = scipy.linalg.eigh(h)
  except np.linalg.LinAlgError as e:
    raise NumericError('eigensolver did not converge for a ' + str(h.shape[0]) + '-dim matrix') from e

  return Spectrum(energies, _fix_phases(vectors))

def diagonalize_blocks(h, blocks):
  """
  Eigendecomposition of a block-diagonal (after permutation) Hermitian matrix, one block at a time.
  blocks is a list of index arrays partitioning the basis, e.g. from hamiltonians.sz_sectors.

  Agrees with diagonalize() on the energies and on every basis-invariant quantity.
  """
  h = check_hermitian(h, 'Hamiltonian')
  d = h.shape[0]
  energies = np.empty(d)
  vectors = np.zeros((d, d), dtype=np.result_type(h.dtype, float))

  col = 0
  for idx in blocks:
    if len(idx) == 0:
      continue
    try:
      e, v = scipy.linalg.eigh(h[np.ix_(idx, idx)])
    except np.linalg.LinAlgError as err:
      raise NumericError('eigensolver did not converge for a ' + str(len(idx)) + '-dim block') from err
    energies[col:col + len(idx)] = e
    vectors[idx, col:col + len(idx)] = v
    col += len(idx)

  if col != d:
    raise ValidationError('blocks cover ' + str(col) + ' of ' + str(d) + ' basis states')

  # Merge the per-block spectra into one ascending list
  order = np.argsort(energies, kind='stable')
  logging.debug('Diagonalized ' + str(len(blocks)) + ' blocks of a ' + str(d) + '-dim matrix')
  return Spectrum(energies[order], _fix_phases(vectors[:, order]))

def evolve(s, t):
  """ exp(-i H t) = V diag(exp(-i E t)) V^dagger """
  phases = np.exp(-1j * s.energies * t)
  return (s.vectors * phases) @ s.vectors.conj().T

def default_degeneracy_tolerance(s):
  """ DEGENERACY_RTOL times the spectral range; falls back to DEGENERACY_RTOL for a flat spectrum """
  span = s.span
  return DEGENERACY_RTOL * span if span > 0 else DEGENERACY_RTOL

def degeneracy_groups(s, tol=None):
  """
  Greedy clustering of the ascending energies: level j joins the current group iff
  E_j - (group minimum) <= tol. Anchoring to the group minimum stops chaining across a dense spectrum.
  """
  if tol is None:
    tol = default_degeneracy_tolerance(s)
  if tol <= 0:
    raise ValidationError('degeneracy tolerance must be positive, got ' + str(tol))

  groups = []
  current = []
  anchor = None
  for j, e in enumerate(s.energies):
    if current and e - anchor <= tol:
      current.append(j)
      continue
    if current:
      groups.append(tuple(current))
    current = [j]
    anchor = e
  if current:
    groups.append(tuple(current))

  return DegeneracyGroups(tuple(groups), float(tol))
