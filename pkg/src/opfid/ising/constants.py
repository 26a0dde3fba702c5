# Constants to be used as the mode parameter of chi_f_closed
MODE_CORRECTED = 'corrected'
MODE_LITERAL = 'paper-exact'
MODES = (MODE_CORRECTED, MODE_LITERAL)

# Zero-mode constant inside (t^2/2)(c + sum cos^2 theta_k) for each mode
ZERO_MODE_CONSTANT = {
  MODE_CORRECTED: 0.25,
  MODE_LITERAL: 0.5
}

# Default epsilon ladder for the pseudospin echo extrapolation
DEFAULT_EPSILONS = (1e-3, 5e-4, 2.5e-4)
