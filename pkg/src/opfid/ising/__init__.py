from .constants import *
from .ising import (
  IsingModeSet, WCoefficients, chi_closed_sweep, chi_f_closed, chi_via_extrapolation, modes,
  pseudospin_echo_fidelity, pseudospin_infidelity, w_coefficients)

__all__ = [
  'IsingModeSet',
  'WCoefficients',
  'modes',
  'w_coefficients',
  'chi_f_closed',
  'chi_closed_sweep',
  'pseudospin_echo_fidelity',
  'pseudospin_infidelity',
  'chi_via_extrapolation',

  # Constants
  'MODE_CORRECTED',
  'MODE_LITERAL',
  'MODES',
  'ZERO_MODE_CONSTANT',
  'DEFAULT_EPSILONS']
