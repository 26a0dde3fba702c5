"""
Spin-1/2 chain Hamiltonians: symbolic specs made of SpinTerms, and their realization as dense
Hermitian matrices.

Conventions
  - sites are numbered 0..n-1 (a chain written with sites -M..M is shifted by M)
  - computational basis, site 0 is the most significant bit; bit value 0 is spin up (Z = +1)
  - S-labeled operators are half the Pauli ones (Sx = X/2, ...)
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .constants import (
  DEFAULT_MAX_SITES, IDENTITY_LABEL, MAX_SITES_ENV, OPERATOR_LABELS, SPIN_LABELS)
from .errors import ResourceError, ValidationError

@dataclass(frozen=True)
class SpinTerm:
  """
  coefficient * (product of single-site operators).
  - coefficient: real, energy units
  - factors: ((site, label), ...) with distinct sites and label in OPERATOR_LABELS
  """
  coefficient: float
  factors: Tuple[Tuple[int, str], ...]

  def __post_init__(self):
    object.__setattr__(self, 'coefficient', float(self.coefficient))
    object.__setattr__(self, 'factors', tuple((int(s), str(op)) for s, op in self.factors))
    sites = [s for s, _ in self.factors]
    if len(set(sites)) != len(sites):
      raise ValidationError('repeated site in spin term: ' + str(self.factors))
    for _, op in self.factors:
      if op not in OPERATOR_LABELS:
        raise ValidationError('unknown operator label ' + repr(op))

  def shifted(self, shift, n_sites):
    return SpinTerm(self.coefficient, tuple(((s + shift) % n_sites, op) for s, op in self.factors))

@dataclass(frozen=True)
class HamiltonianSpec:
  """ Sum of spin terms on n_sites spin-1/2 sites """
  n_sites: int
  terms: Tuple[SpinTerm, ...] = field(default_factory=tuple)
  periodic: bool = True

  def __post_init__(self):
    object.__setattr__(self, 'terms', tuple(self.terms))
    if self.n_sites < 1:
      raise ValidationError('n_sites must be positive, got ' + str(self.n_sites))
    for term in self.terms:
      for s, _ in term.factors:
        if not 0 <= s < self.n_sites:
          raise ValidationError('site ' + str(s) + ' outside [0, ' + str(self.n_sites) + ')')

  @property
  def dim(self):
    return 2 ** self.n_sites

  def __add__(self, other):
    if not isinstance(other, HamiltonianSpec):
      return NotImplemented
    if other.n_sites != self.n_sites:
      raise ValidationError('cannot add specs on ' + str(self.n_sites) + ' and ' + str(other.n_sites) + ' sites')
    return HamiltonianSpec(self.n_sites, self.terms + other.terms, self.periodic and other.periodic)

  def scaled(self, factor):
    return HamiltonianSpec(
      self.n_sites, tuple(SpinTerm(factor * t.coefficient, t.factors) for t in self.terms), self.periodic)

  def relabeled(self, shift):
    """ Cyclically relabel every site s -> (s + shift) mod n """
    return HamiltonianSpec(self.n_sites, tuple(t.shifted(shift, self.n_sites) for t in self.terms), self.periodic)

  def to_dict(self):
    return {
      'n': self.n_sites,
      'periodic': self.periodic,
      'terms': [{'coeff': t.coefficient, 'ops': [[s, op] for s, op in t.factors]} for t in self.terms]
    }

  @classmethod
  def from_dict(cls, d):
    """
    Build a spec from its JSON form:

      {"n": 3, "periodic": true, "terms": [{"coeff": 1.0, "ops": [[0, "X"], [1, "X"]]}, ...]}
    """
    try:
      terms = tuple(SpinTerm(t['coeff'], tuple((s, op) for s, op in t['ops'])) for t in d.get('terms', []))
      return cls(int(d['n']), terms, bool(d.get('periodic', True)))
    except (KeyError, TypeError) as e:
      raise ValidationError('malformed Hamiltonian spec: ' + str(e)) from e

# =========================================================================
# Model builders
# =========================================================================
def _bond(i, j, coefficient, labels):
  return [SpinTerm(coefficient, ((i, op), (j, op))) for op in labels]

def transverse_ising_spec(n, lam):
  """
  sum_l X_l X_{l+1} + (lam/2) sum_l Z_l on a periodic ring of n sites.

  For n = 2 the wrap bond repeats the (0, 1) bond; both copies are kept as written.
  """
  if n < 2:
    raise ValidationError('transverse Ising chain needs n >= 2, got ' + str(n))
  terms = []
  for l in range(n):
    terms.append(SpinTerm(1.0, ((l, 'X'), ((l + 1) % n, 'X'))))
  if lam != 0:
    for l in range(n):
      terms.append(SpinTerm(lam / 2, ((l, 'Z'),)))
  return HamiltonianSpec(n, tuple(terms), periodic=True)

def ising_field_perturbation(n):
  """ V = sum_l Z_l / 2; the caller supplies epsilon """
  if n < 1:
    raise ValidationError('perturbation needs n >= 1, got ' + str(n))
  return HamiltonianSpec(n, tuple(SpinTerm(0.5, ((l, 'Z'),)) for l in range(n)), periodic=True)

def heisenberg_nnn_spec(n, j1, j2):
  """
  sum_i (j1 s_i.s_{i+1} + j2 s_i.s_{i+2}) on a periodic ring. With (j1, j2) = (0, 1) this is the
  next-nearest-neighbor perturbation sum_i s_i.s_{i+2}.
  """
  if n < 4:
    raise ValidationError('Heisenberg chain with next-nearest neighbors needs n >= 4, got ' + str(n))
  terms = []
  for i in range(n):
    if j1 != 0:
      terms += _bond(i, (i + 1) % n, j1, SPIN_LABELS)
    if j2 != 0:
      terms += _bond(i, (i + 2) % n, j2, SPIN_LABELS)
  return HamiltonianSpec(n, tuple(terms), periodic=True)

def total_sz_spec(n):
  """ sum_i s_i^z """
  return HamiltonianSpec(n, tuple(SpinTerm(1.0, ((i, 'Sz'),)) for i in range(n)), periodic=True)

# =========================================================================
# Realization
# =========================================================================
def max_sites():
  """ Size cap for dense realization: OPFID_MAX_SITES if set, else DEFAULT_MAX_SITES """
  raw = os.environ.get(MAX_SITES_ENV)
  if raw is None:
    return DEFAULT_MAX_SITES
  try:
    return int(raw)
  except ValueError as e:
    raise ValidationError(MAX_SITES_ENV + ' must be an integer, got ' + repr(raw)) from e

def check_size(n_sites):
  cap = max_sites()
  if n_sites > cap:
    raise ResourceError(
      str(n_sites) + ' sites exceeds the cap of ' + str(cap) + ' (set ' + MAX_SITES_ENV + ' to raise it)')

def _term_action(term, n, basis):
  """
  A product of single-site operators maps basis state b to amp(b) |b ^ flip>. Return (flip, amp).

  This is the tensor product of the single-site matrices written out per basis state:
    X|v> = |1-v>,  Y|v> = i(-1)^v |1-v>,  Z|v> = (-1)^v |v>
  """
  flip = 0
  amp = np.full(basis.shape, term.coefficient, dtype=complex)
  for site, op in term.factors:
    if op == IDENTITY_LABEL:
      continue
    pos = n - 1 - site
    sign = 1.0 - 2.0 * ((basis >> pos) & 1)
    pauli = op[-1].upper()
    if op in SPIN_LABELS:
      amp *= 0.5
    if pauli == 'X':
      flip |= 1 << pos
    elif pauli == 'Y':
      flip |= 1 << pos
      amp *= 1j * sign
    else:
      amp *= sign
  return flip, amp

def _is_real(spec):
  # Odd numbers of Y factors are the only source of imaginary entries
  return all(sum(1 for _, op in t.factors if op in ('Y', 'Sy')) % 2 == 0 for t in spec.terms)

def realize_dense(spec):
  """
  Dense matrix of a spec, dimension 2^n_sites. Real dtype when every term is real, complex otherwise.

  Each term is placed exactly (entries are +-coefficient, +-i*coefficient or products of halves),
  so the result equals its conjugate transpose entry for entry.
  """
  check_size(spec.n_sites)
  n = spec.n_sites
  d = spec.dim
  real = _is_real(spec)
  h = np.zeros((d, d), dtype=float if real else complex)
  basis = np.arange(d)

  for term in spec.terms:
    flip, amp = _term_action(term, n, basis)
    h[basis ^ flip, basis] += amp.real if real else amp

  logging.debug('Realized ' + str(len(spec.terms)) + ' terms on ' + str(n) + ' sites')
  return h

def sz_sectors(h, n):
  """
  Split the basis into blocks of fixed total Sz (number of down spins), for a matrix that conserves
  total Sz. Returns a list of index arrays ordered by Sz descending.

  Raises ValidationError if h couples different sectors.
  """
  d = 2 ** n
  if h.shape != (d, d):
    raise ValidationError('matrix of shape ' + str(h.shape) + ' is not an operator on ' + str(n) + ' sites')
  downs = np.array([bin(b).count('1') for b in range(d)])
  if np.any((downs[:, None] != downs[None, :]) & (h != 0)):
    raise ValidationError('matrix does not conserve total Sz')
  return [np.flatnonzero(downs == k) for k in range(n + 1)]
