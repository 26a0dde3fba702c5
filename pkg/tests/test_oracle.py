import numpy as np
import pytest

from opfid.constants import ORACLE_TOLERANCE
from opfid.errors import ValidationError
from opfid.oracle import check_heisenberg_blocks, check_operator_pairs, relative_deviation, run_oracle_suite

def test_relative_deviation():
  assert relative_deviation(1.5, 1.0) == 0.5
  assert relative_deviation(0.0, 0.0) == 0.0

def test_fifty_random_pairs_close():
  deviations = check_operator_pairs(50, np.random.default_rng(0))
  assert len(deviations) == 50
  assert max(deviations) < ORACLE_TOLERANCE

def test_dense_and_block_paths_agree():
  assert max(check_heisenberg_blocks()) < 1e-9

def test_suite_passes():
  report = run_oracle_suite(seed=1, n_pairs=9, n_kmode=20, n_entangling=8)
  assert report['passed']
  assert set(report['checks']) == {'operator', 'ising', 'kmode', 'entangling', 'heisenberg_blocks', 'heisenberg_echo'}
  assert report['checks']['operator']['cases'] == 9

def test_skip_heisenberg():
  report = run_oracle_suite(seed=1, n_pairs=3, n_kmode=5, n_entangling=3, skip_heisenberg=True)
  assert report['passed']
  assert 'heisenberg_blocks' not in report['checks']

def test_injected_fault_is_caught():
  report = run_oracle_suite(seed=1, n_pairs=3, n_kmode=5, n_entangling=3, skip_heisenberg=True, inject_fault=True)
  assert not report['passed']
  fault = report['checks']['ising_literal']
  assert not fault['passed']
  assert fault['max_deviation'] > 1e-2
  assert report['checks']['ising']['passed']

def test_suite_sizes_are_configurable():
  report = run_oracle_suite(
    seed=1, n_pairs=4, n_kmode=5, n_entangling=4, dims=(4, 8), ising_n=51, heisenberg_n=4)
  assert report['passed']
  assert report['sizes'] == {'dims': [4, 8], 'ising_n': 51, 'ising_t': 10.0, 'heisenberg_n': 4}
  assert report['checks']['operator']['cases'] == 4

def test_suite_rejects_degenerate_sizes():
  with pytest.raises(ValidationError):
    run_oracle_suite(n_pairs=2, skip_heisenberg=True, dims=())
  with pytest.raises(ValidationError):
    run_oracle_suite(n_pairs=2, skip_heisenberg=True, dims=(1, 4))
