"""
Per-mode algebra of the transverse Ising chain in momentum space.

Each momentum pair k decouples into a 2x2 pseudospin block

  H_k = Omega_k (sin(theta_k) sigma_y + cos(theta_k) sigma_z)
      = exp(i theta_k/2 sigma_x) Omega_k sigma_z exp(-i theta_k/2 sigma_x)

so its evolution is U_k(t) = cos(Omega_k t) - i sin(Omega_k t) n_k.sigma with n_k = (0, sin, cos).
All functions are vectorized over modes.
"""

import numpy as np

from ..numerics import stable_sinc

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

def mode_angles(n, lam):
  """
  Omega_k and theta_k for k = 1..(n-1)/2.

  theta_k is the two-argument angle of (cos, sin) = (-lam + 2cos q, -2sin q)/Omega_k, q = 2 pi k/n.
  An arcsin alone would put modes with 2cos q < lam in the wrong quadrant.
  """
  k = np.arange(1, (n - 1) // 2 + 1)
  q = 2 * np.pi * k / n
  cos_part = -lam + 2 * np.cos(q)
  sin_part = -2 * np.sin(q)
  return k, np.hypot(cos_part, sin_part), np.arctan2(sin_part, cos_part)

def pseudospin_unitary(omega, theta, t):
  """ 2x2 evolution operator of one mode, exp(i theta/2 sx) exp(-i t omega sz) exp(-i theta/2 sx) """
  n_dot_sigma = np.sin(theta) * SIGMA_Y + np.cos(theta) * SIGMA_Z
  return np.cos(omega * t) * np.eye(2) - 1j * np.sin(omega * t) * n_dot_sigma

def w_components(omega, theta, t):
  """
  Coefficients (a, b, c) of sigma_z, sigma_y, sigma_x in one mode's W(t), written with sinc so
  they stay finite as omega -> 0:

    a = t cos^2 + sin^2 sin(2 t omega)/(2 omega)
    b = cos sin (t - sin(2 t omega)/(2 omega))
    c = sin (cos(2 t omega) - 1)/(2 omega) = -sin sin^2(t omega)/omega
  """
  s, c = np.sin(theta), np.cos(theta)
  half = t * stable_sinc(2 * t * omega)
  a = t * c * c + s * s * half
  b = c * s * (t - half)
  cx = -s * t * np.sin(t * omega) * stable_sinc(t * omega)
  return a, b, cx

def fidelity_defect(omega0, theta0, omega1, theta1, t):
  """
  1 - Tr(U0^dagger U1)/2 for a pair of modes, in the cancellation-free form

    2 sin^2((omega0 - omega1) t / 2) + 2 sin(omega0 t) sin(omega1 t) sin^2((theta0 - theta1) / 2)
  """
  dphase = 0.5 * (omega0 - omega1) * t
  dtheta = 0.5 * (theta0 - theta1)
  return 2 * np.sin(dphase) ** 2 + 2 * np.sin(omega0 * t) * np.sin(omega1 * t) * np.sin(dtheta) ** 2

def log_abs_one_minus(defect):
  """ log|1 - defect|, accurate when defect is tiny """
  defect = np.asarray(defect, dtype=float)
  with np.errstate(divide='ignore'):
    near = np.log1p(-np.minimum(defect, 0.5))
    far = np.log(np.abs(1.0 - defect))
  return np.where(defect < 0.5, near, far)
