import numpy as np

from opfid.oracle import random_hermitian

def random_unitary(d, rng):
  """ Haar-random unitary from the QR decomposition of a complex Gaussian matrix """
  z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
  q, r = np.linalg.qr(z)
  return q * (np.diag(r) / np.abs(np.diag(r)))

def random_density(d, rng, rank=None):
  rank = d if rank is None else rank
  a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
  rho = a @ a.conj().T
  return rho / np.trace(rho).real

def random_pair(d, rng):
  return random_hermitian(d, rng), random_hermitian(d, rng)
