import numpy as np
import pytest
import scipy.integrate

from opfid import hamiltonians as ham
from opfid.constants import SINC_TAYLOR_CUTOFF
from opfid.data import build_grid
from opfid.echo import chi_via_echo, echo_fidelity
from opfid.errors import ValidationError
from opfid.models import heisenberg_family, ising_family
from opfid.numerics import extrapolate_to_zero, stable_sinc
from opfid.ofs import (
  ChiResult, SweepRecord, check_grid, chi_f, chi_f_spectral, chi_f_sweep, fidelity_from_chi, is_uniform,
  sweep_derivative, w_eigenbasis, w_matrix)
from opfid.spectral import diagonalize, evolve

from .helpers import random_pair, random_unitary

def test_sinc_at_zero():
  assert stable_sinc(0.0) == 1.0

def test_sinc_is_continuous_at_cutoff():
  x = np.array([SINC_TAYLOR_CUTOFF * (1 - 1e-9), SINC_TAYLOR_CUTOFF * (1 + 1e-9)])
  s = stable_sinc(x)
  assert abs(s[0] - s[1]) < 1e-15
  assert stable_sinc(2.0) == pytest.approx(np.sin(2.0) / 2.0, rel=1e-15)

def test_neville_recovers_constant_term():
  xs = [0.1, 0.05, 0.025]
  assert extrapolate_to_zero(xs, [3 + 2 * x - 7 * x * x for x in xs]) == pytest.approx(3.0, abs=1e-12)

def test_w_matches_quadrature(rng):
  h0, v = random_pair(8, rng)
  t = 1.0
  s0 = diagonalize(h0)

  taus = np.linspace(0, t, 10001)
  integrand = np.array([evolve(s0, tau).conj().T @ v @ evolve(s0, tau) for tau in taus])
  w_quad = scipy.integrate.simpson(integrand, x=taus, axis=0)
  assert np.max(np.abs(w_matrix(s0, v, t) - w_quad)) < 1e-7

def test_w_is_hermitian(rng):
  h0, v = random_pair(6, rng)
  w = w_matrix(diagonalize(h0), v, 3.0)
  assert np.allclose(w, w.conj().T, atol=1e-13)

def test_chi_is_zero_at_zero_time(rng):
  h0, v = random_pair(4, rng)
  assert chi_f_spectral(diagonalize(h0), v, 0.0).chi == 0.0

def test_commuting_perturbation_is_purely_secular(rng):
  h0, _ = random_pair(6, rng)
  t = 2.5
  energies = np.linalg.eigvalsh(h0)
  r = chi_f_spectral(diagonalize(h0), h0, t)
  assert r.chi == pytest.approx(0.5 * t * t * np.var(energies), rel=1e-10)
  assert r.secular_part == pytest.approx(r.chi, rel=1e-10)
  assert abs(r.oscillatory_part) < 1e-10 * r.chi

def test_parts_add_up(rng):
  h0, v = random_pair(8, rng)
  r = chi_f_spectral(diagonalize(h0), v, 10.0)
  assert r.secular_part + r.oscillatory_part == pytest.approx(r.chi, rel=1e-12)
  assert r.secular_part >= 0
  assert r.oscillatory_part >= 0

def test_secular_part_dominates_at_long_times(rng):
  h0, v = random_pair(8, rng)
  s0 = diagonalize(h0)
  r = chi_f_spectral(s0, v, 1000.0)
  assert r.secular_part > r.oscillatory_part
  assert r.chi / 1000.0 ** 2 == pytest.approx(chi_f_spectral(s0, v, 2000.0).chi / 2000.0 ** 2, rel=1e-2)

def test_identity_shift_invariance(rng):
  h0, v = random_pair(8, rng)
  s0 = diagonalize(h0)
  a = chi_f_spectral(s0, v, 5.0).chi
  b = chi_f_spectral(s0, v + 3.7 * np.eye(8), 5.0).chi
  assert b == pytest.approx(a, rel=1e-10)

def test_basis_invariance(rng):
  h0, v = random_pair(8, rng)
  q = random_unitary(8, rng)
  a = chi_f_spectral(diagonalize(h0), v, 10.0).chi
  b = chi_f_spectral(diagonalize(q @ h0 @ q.conj().T), q @ v @ q.conj().T, 10.0).chi
  assert b == pytest.approx(a, rel=1e-9)

def test_chi_f_of_bare_w_has_no_split(rng):
  h0, v = random_pair(4, rng)
  w, mask = w_eigenbasis(diagonalize(h0), v, 2.0)
  bare = chi_f(w)
  split = chi_f(w, secular_mask=mask)
  assert bare.secular_part is None
  assert bare.chi == pytest.approx(split.chi, rel=1e-14)

def test_chi_f_rejects_non_hermitian():
  with pytest.raises(ValidationError):
    chi_f(np.array([[0.0, 1.0], [0.0, 0.0]]))

def test_w_rejects_mismatched_dims(rng):
  h0, _ = random_pair(4, rng)
  with pytest.raises(ValidationError):
    w_matrix(diagonalize(h0), np.eye(8), 1.0)

@pytest.mark.parametrize('d', [4, 8, 16])
@pytest.mark.parametrize('t', [1.0, 10.0, 100.0])
def test_agrees_with_echo_extrapolation(rng, d, t):
  h0, v = random_pair(d, rng)
  chi = chi_f_spectral(diagonalize(h0), v, t).chi
  assert chi_via_echo(h0, v, t) == pytest.approx(chi, rel=1e-6)

def test_fidelity_from_chi_predicts_small_epsilon_echo(rng):
  h0, v = random_pair(4, rng)
  eps, t = 1e-4, 1.0
  chi = chi_f_spectral(diagonalize(h0), v, t).chi
  assert fidelity_from_chi(chi, eps) == pytest.approx(echo_fidelity(h0, v, eps, t), abs=1e-9)

def test_fidelity_from_chi_clips_at_zero():
  assert fidelity_from_chi(10.0, 1.0) == 0.0

# ---------------------------------------------------------------------------
# Sweeps

def test_check_grid():
  assert check_grid([1, 2, 3]) == [1.0, 2.0, 3.0]
  assert check_grid([3, 2]) == [3.0, 2.0]
  with pytest.raises(ValidationError):
    check_grid([])
  with pytest.raises(ValidationError):
    check_grid([0, 1, 1])
  with pytest.raises(ValidationError):
    check_grid([0, 2, 1])

def test_is_uniform():
  assert is_uniform([0.0, 0.1, 0.2, 0.30000000000000004])
  assert not is_uniform([0.0, 0.1, 0.3])
  assert not is_uniform([1.0])

def test_sweep_matches_single_points():
  model = heisenberg_family(4)
  records = chi_f_sweep(model, [0.0, 0.5, 1.0], 1.0)
  v = ham.realize_dense(model.perturbation())
  assert [r.param_value for r in records] == [0.0, 0.5, 1.0]
  assert all(r.param_name == 'j2' for r in records)
  for r in records:
    h0 = ham.realize_dense(ham.heisenberg_nnn_spec(4, 1.0, r.param_value))
    assert r.chi.chi == pytest.approx(chi_f_spectral(diagonalize(h0), v, 1.0).chi, rel=1e-10)

def test_sweep_with_workers_keeps_order():
  model = heisenberg_family(4)
  grid = [0.1, 0.2, 0.3, 0.4]
  serial = chi_f_sweep(model, grid, 2.0)
  parallel = chi_f_sweep(model, grid, 2.0, jobs=2)
  assert [r.param_value for r in parallel] == grid
  assert [r.chi.chi for r in parallel] == pytest.approx([r.chi.chi for r in serial], rel=1e-12)

def test_sweep_rejects_bad_grid():
  with pytest.raises(ValidationError):
    chi_f_sweep(heisenberg_family(4), [0.5, 0.1, 0.2], 1.0)

def _records(values, chis):
  return [SweepRecord('x', v, ChiResult(c)) for v, c in zip(values, chis)]

def test_derivative_is_exact_for_quadratics():
  xs = [0.0, 0.25, 0.5, 0.75, 1.0]
  out = sweep_derivative(_records(xs, [x * x for x in xs]))
  assert [r.derivative for r in out] == pytest.approx([2 * x for x in xs], abs=1e-12)

def test_derivative_needs_three_uniform_points():
  with pytest.raises(ValidationError):
    sweep_derivative(_records([0.0, 1.0], [0.0, 1.0]))
  with pytest.raises(ValidationError):
    sweep_derivative(_records([0.0, 1.0, 3.0], [0.0, 1.0, 2.0]))

# ---------------------------------------------------------------------------
# Model sweeps at t = 100

def test_ising_chain_is_flat_below_the_transition():
  records = chi_f_sweep(ising_family(9), build_grid(0.0, 1.5, 0.25), 100.0)
  chi = np.array([r.chi.chi for r in records])
  assert (chi.max() - chi.min()) / chi.max() < 0.05

def _minimum_location(n):
  records = chi_f_sweep(heisenberg_family(n), build_grid(0.0, 1.0, 0.01), 100.0)
  return records[int(np.argmin([r.chi.chi for r in records]))].param_value

@pytest.mark.slow
def test_heisenberg_minimum_approaches_majumdar_ghosh_point():
  m7 = _minimum_location(7)
  m9 = _minimum_location(9)
  assert abs(m7 - 0.5) <= 0.1 + 1e-9
  assert abs(m9 - 0.5) <= 0.1 + 1e-9
  assert abs(m9 - 0.5) < abs(m7 - 0.5)
