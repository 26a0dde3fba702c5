"""
Model families swept by the exact-diagonalization pipelines.

A family fixes everything except one parameter (lambda for the Ising chain, J2 for the Heisenberg
chain) and knows its perturbation V, which is the derivative of H with respect to that parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hamiltonians as ham
from .constants import HEISENBERG, ISING_ED
from .errors import ValidationError
from .spectral import diagonalize, diagonalize_blocks

@dataclass(frozen=True)
class ModelFamily:
  """
  - family: ISING_ED or HEISENBERG
  - n: number of sites
  - j1: nearest-neighbor coupling (Heisenberg only)
  - use_sz_blocks: diagonalize per total-Sz sector (Heisenberg only, both H and V conserve Sz)
  """
  family: str
  n: int
  j1: float = 1.0
  use_sz_blocks: bool = True

  def __post_init__(self):
    if self.family not in (ISING_ED, HEISENBERG):
      raise ValidationError('unknown model family ' + repr(self.family))

  @property
  def param_name(self):
    return 'lambda' if self.family == ISING_ED else 'j2'

  def hamiltonian(self, value):
    if self.family == ISING_ED:
      return ham.transverse_ising_spec(self.n, value)
    return ham.heisenberg_nnn_spec(self.n, self.j1, value)

  def perturbation(self):
    if self.family == ISING_ED:
      return ham.ising_field_perturbation(self.n)
    return ham.heisenberg_nnn_spec(self.n, 0.0, 1.0)

  def check(self):
    """ Raise early for sizes the builders or the realization cap reject """
    ham.check_size(self.n)
    self.hamiltonian(0.0)

  def diagonalize(self, h):
    """ Spectrum of a realized matrix of this family, by Sz blocks when that applies """
    if self.family == HEISENBERG and self.use_sz_blocks:
      return diagonalize_blocks(h, ham.sz_sectors(h, self.n))
    return diagonalize(h)

def ising_family(n):
  return ModelFamily(ISING_ED, n)

def heisenberg_family(n, j1=1.0, use_sz_blocks=True):
  return ModelFamily(HEISENBERG, n, j1, use_sz_blocks)
