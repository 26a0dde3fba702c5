from functools import reduce

import numpy as np
import pytest
import scipy.linalg

from opfid import ising
from opfid.echo import echo_fidelity
from opfid.errors import ValidationError
from opfid.ising.core import SIGMA_Y, SIGMA_Z, mode_angles, pseudospin_unitary
from opfid.ofs import chi_f_spectral, sweep_derivative
from opfid.spectral import diagonalize

def test_three_site_modes_at_zero_field():
  k, omega, theta = mode_angles(3, 0.0)
  assert list(k) == [1]
  assert omega[0] == pytest.approx(2.0, rel=1e-14)
  assert theta[0] == pytest.approx(-2 * np.pi / 3, rel=1e-14)

def test_theta_uses_both_components():
  # Modes with 2cos(q) < lambda have a negative cosine part
  m = ising.modes(11, 1.5)
  cos_part = -1.5 + 2 * np.cos(2 * np.pi * m.k / 11)
  assert np.allclose(m.omega * np.cos(m.theta), cos_part)
  assert np.allclose(m.omega * np.sin(m.theta), -2 * np.sin(2 * np.pi * m.k / 11))

@pytest.mark.parametrize('n', [1, 2, 4, 100])
def test_modes_need_odd_chain(n):
  with pytest.raises(ValidationError):
    ising.modes(n, 1.0)

def test_mode_set_fields():
  m = ising.modes(9, 1.2)
  assert m.n_modes == 4
  assert m.zero_mode_coeff == pytest.approx(0.4)

def test_pseudospin_unitary_is_matrix_exponential():
  omega, theta, t = 1.7, 0.4, 2.3
  h = omega * (np.sin(theta) * SIGMA_Y + np.cos(theta) * SIGMA_Z)
  assert np.allclose(pseudospin_unitary(omega, theta, t), scipy.linalg.expm(-1j * t * h))

def test_zero_time_gives_zero():
  for mode in ising.MODES:
    assert ising.chi_f_closed(11, 1.0, 0.0, mode).chi == 0.0

def test_unknown_mode():
  with pytest.raises(ValidationError):
    ising.chi_f_closed(11, 1.0, 1.0, 'exact')

def test_modes_differ_by_zero_mode_term():
  t = 10.0
  corrected = ising.chi_f_closed(21, 0.7, t, ising.MODE_CORRECTED)
  literal = ising.chi_f_closed(21, 0.7, t, ising.MODE_LITERAL)
  assert literal.chi - corrected.chi == pytest.approx(t * t / 8, rel=1e-12)
  assert literal.oscillatory_part == corrected.oscillatory_part

def test_split_adds_up():
  r = ising.chi_f_closed(51, 2.4, 7.0)
  assert r.secular_part + r.oscillatory_part == pytest.approx(r.chi, rel=1e-14)

def test_kmode_identity(rng):
  for _ in range(100):
    n = 2 * int(rng.integers(1, 300)) + 1
    lam = float(rng.uniform(0, 4))
    t = float(rng.uniform(0.1, 100))
    m = ising.modes(n, lam)
    w = ising.w_coefficients(m, t)
    from_w = 0.5 * np.sum(w.a ** 2 + w.b ** 2 + w.c ** 2) + 0.5 * w.zero_mode ** 2
    assert from_w == pytest.approx(ising.chi_f_closed(n, lam, t).chi, rel=1e-10)

def _embed(ops):
  return reduce(np.kron, ops)

def _pseudospin_hamiltonian(n, lam):
  """ Zero mode plus every momentum pair as one tensor factor each """
  m = ising.modes(n, lam)
  factors = [m.zero_mode_coeff * SIGMA_Z]
  factors += [w * (np.sin(th) * SIGMA_Y + np.cos(th) * SIGMA_Z) for w, th in zip(m.omega, m.theta)]
  dim = 2 ** len(factors)
  h = np.zeros((dim, dim), dtype=complex)
  for j, f in enumerate(factors):
    ops = [np.eye(2)] * len(factors)
    ops[j] = f
    h += _embed(ops)
  return h

@pytest.mark.parametrize('n, lam, t', [(5, 0.8, 3.0), (7, 2.0, 10.0), (7, 3.1, 1.5)])
def test_closed_form_matches_pseudospin_matrices(n, lam, t):
  eps = 1e-3
  h0 = _pseudospin_hamiltonian(n, lam)
  v = (_pseudospin_hamiltonian(n, lam + eps) - _pseudospin_hamiltonian(n, lam - eps)) / (2 * eps)
  r = chi_f_spectral(diagonalize(h0), v, t)
  assert ising.chi_f_closed(n, lam, t).chi == pytest.approx(r.chi, rel=1e-6)

@pytest.mark.parametrize('n, lam, t', [(5, 0.8, 3.0), (7, 2.5, 10.0)])
def test_pseudospin_echo_matches_matrices(n, lam, t):
  eps = 0.05
  h0 = _pseudospin_hamiltonian(n, lam)
  v = (_pseudospin_hamiltonian(n, lam + eps) - h0) / eps
  assert ising.pseudospin_echo_fidelity(n, lam, eps, t) == pytest.approx(echo_fidelity(h0, v, eps, t), abs=1e-10)

def test_pseudospin_fidelity_at_zero_epsilon():
  assert ising.pseudospin_infidelity(101, 1.0, 0.0, 10.0) == 0.0

@pytest.mark.parametrize('lam', [0.5, 1.5, 2.0, 3.0])
def test_closed_form_matches_extrapolated_echo(lam):
  closed = ising.chi_f_closed(101, lam, 10.0).chi
  assert ising.chi_via_extrapolation(101, lam, 10.0) == pytest.approx(closed, rel=1e-6)

def test_literal_zero_mode_disagrees_with_echo():
  literal = ising.chi_f_closed(3, 1.0, 10.0, ising.MODE_LITERAL).chi
  assert ising.chi_via_extrapolation(3, 1.0, 10.0) != pytest.approx(literal, rel=1e-3)

def test_extrapolation_needs_two_epsilons():
  with pytest.raises(ValidationError):
    ising.chi_via_extrapolation(11, 1.0, 1.0, epsilons=[1e-3])
  with pytest.raises(ValidationError):
    ising.chi_via_extrapolation(11, 1.0, 1.0, epsilons=[1e-3, -1e-3])

def test_closed_sweep_records():
  records = ising.chi_closed_sweep(11, [0.0, 0.5, 1.0], 2.0)
  assert [r.param_value for r in records] == [0.0, 0.5, 1.0]
  assert all(r.param_name == 'lambda' for r in records)
  assert records[1].chi == ising.chi_f_closed(11, 0.5, 2.0)

def _derivative_profile(n, t=100.0):
  grid = [0.005 * i for i in range(801)]
  records = sweep_derivative(ising.chi_closed_sweep(n, grid, t))
  return np.array(grid), np.array([r.derivative for r in records])

def test_derivative_peaks_at_critical_field():
  heights = []
  for n in (1025, 2049, 4097):
    grid, deriv = _derivative_profile(n)
    peak = int(np.argmax(deriv))
    assert 1.95 <= grid[peak] <= 2.05
    heights.append(deriv[peak])

    # Nearly unchanged below the transition
    assert np.max(np.abs(deriv[grid <= 1.5])) < 0.01 * deriv[peak]
  assert heights[0] < heights[1] < heights[2]
