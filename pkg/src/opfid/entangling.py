"""
Entangling power of the controlled evolution |0><0| x U0 + |1><1| x U1 and its link to the
operator fidelity F = |Tr(U0^dagger U1)|/d:

  e_p = (d/(d+1))^2 E = d^2 (1 - F^2) / (2 (d+1)^2)

with E the linear-entropy operator entanglement across the control/target split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .constants import FIDELITY_ATOL
from .errors import ValidationError
from .numerics import as_square, check_hermitian, check_same_dim, check_unitary
from .spectral import diagonalize, evolve

@dataclass(frozen=True)
class EntanglingPowerResult:
  """
  - fidelity: operator fidelity of U0, U1
  - operator_entanglement: linear entropy of the controlled-U operator Schmidt weights
  - entangling_power: (d/(d+1))^2 operator_entanglement
  - dim: target-space dimension d
  """
  fidelity: float
  operator_entanglement: float
  entangling_power: float
  dim: int

def controlled_u(u0, u1):
  """ Block-diagonal (u0, u1): the control qubit is the leading tensor factor """
  u0 = check_unitary(u0, 'u0')
  u1 = check_unitary(u1, 'u1')
  check_same_dim(u0, u1, ('u0', 'u1'))
  return scipy.linalg.block_diag(u0, u1)

def operator_entanglement_linear(u, split):
  """
  1 - sum sigma_i^4 for the operator Schmidt coefficients sigma_i of u across a dA x dB split.

  u / sqrt(dA dB) is reshuffled into a dA^2 x dB^2 matrix (rows index A in/out, columns B in/out);
  its singular values are the Schmidt coefficients, normalized so sum sigma_i^2 = 1.
  """
  u = as_square(u, 'operator')
  d_a, d_b = (int(x) for x in split)
  if d_a < 1 or d_b < 1 or d_a * d_b != u.shape[0]:
    raise ValidationError('split ' + str(split) + ' does not factor dimension ' + str(u.shape[0]))

  # u[(a, b), (a', b')] -> r[(a, a'), (b, b')]
  r = (u / np.sqrt(d_a * d_b)).reshape(d_a, d_b, d_a, d_b).transpose(0, 2, 1, 3).reshape(d_a * d_a, d_b * d_b)
  p = scipy.linalg.svdvals(r) ** 2
  return float(1.0 - np.sum(p ** 2) / np.sum(p) ** 2)

def entangling_power_from_fidelity(f, d):
  """ d^2 (1 - f^2) / (2 (d+1)^2) """
  if d < 2:
    raise ValidationError('dimension must be >= 2, got ' + str(d))
  if f < 0 or f > 1 + FIDELITY_ATOL:
    raise ValidationError('fidelity must lie in [0, 1], got ' + str(f))
  f = min(f, 1.0)
  return d * d * (1.0 - f * f) / (2.0 * (d + 1) ** 2)

def entangling_power_of_evolution(h0, v, epsilon, t):
  """
  Build U0 = exp(-i H0 t), U1 = exp(-i (H0 + eps V) t) and the controlled-U; report the fidelity,
  the SVD operator entanglement and the entangling power derived from it.
  """
  h0 = check_hermitian(h0, 'H0')
  v = check_hermitian(v, 'V')
  check_same_dim(h0, v, ('H0', 'V'))
  d = h0.shape[0]

  u0 = evolve(diagonalize(h0), t)
  u1 = evolve(diagonalize(h0 + epsilon * v), t)
  fidelity = min(abs(np.vdot(u0, u1)) / d, 1.0)
  e = operator_entanglement_linear(controlled_u(u0, u1), (2, d))
  return EntanglingPowerResult(float(fidelity), e, (d / (d + 1)) ** 2 * e, d)
