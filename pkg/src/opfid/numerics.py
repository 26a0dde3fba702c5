"""
General numerical helpers shared by the engines
"""

import numpy as np

from .constants import HERMITIAN_RTOL, SINC_TAYLOR_CUTOFF, UNITARY_ATOL
from .errors import ValidationError

def stable_sinc(x):
  """
  sin(x)/x with sinc(0) = 1, elementwise.

  Below SINC_TAYLOR_CUTOFF the Taylor polynomial 1 - x^2/6 + x^4/120 is used so level crossings
  (x -> 0) never divide 0 by 0.
  """
  x = np.asarray(x, dtype=float)
  small = np.abs(x) < SINC_TAYLOR_CUTOFF

  # Substitute 1 where small to keep the division clean, then overwrite with the series
  safe = np.where(small, 1.0, x)
  out = np.sin(safe) / safe
  x2 = x * x
  return np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, out)

def extrapolate_to_zero(xs, ys):
  """
  Value at x = 0 of the polynomial through the points (xs[i], ys[i]), by Neville's algorithm.

  This is Richardson extrapolation when ys are finite-step estimates and xs the step (or the
  step squared, for expansions in even powers only).
  """
  xs = np.asarray(xs, dtype=float)
  p = np.array(ys, dtype=float)
  n = len(xs)
  for m in range(1, n):
    # p[i] holds the value at 0 of the interpolant through points i..i+m
    for i in range(n - m):
      p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i])
  return float(p[0])

def as_square(a, name='matrix'):
  """ Return a as a 2-d numpy array, raising ValidationError unless it is square """
  a = np.asarray(a)
  if a.ndim != 2 or a.shape[0] != a.shape[1]:
    raise ValidationError(name + ' must be a square matrix, got shape ' + str(a.shape))
  return a

def check_hermitian(h, name='matrix', rtol=HERMITIAN_RTOL):
  """
  Validate the DenseHermitian invariant: entries equal the conjugate transpose within
  rtol * max|entry|. Returns h as an array.
  """
  h = as_square(h, name)
  scale = np.max(np.abs(h)) if h.size else 0.0
  if scale > 0 and np.max(np.abs(h - h.conj().T)) > rtol * scale:
    raise ValidationError(name + ' is not Hermitian')
  return h

def check_unitary(u, name='matrix', atol=UNITARY_ATOL):
  """ Validate u^dagger u = identity within atol (max-entry norm). Returns u as an array. """
  u = as_square(u, name)
  defect = u.conj().T @ u - np.eye(u.shape[0])
  if np.max(np.abs(defect)) > atol:
    raise ValidationError(name + ' is not unitary')
  return u

def check_same_dim(a, b, names=('first', 'second')):
  if a.shape != b.shape:
    raise ValidationError(
      'dimension mismatch: ' + names[0] + ' ' + str(a.shape) + ' vs ' + names[1] + ' ' + str(b.shape))
