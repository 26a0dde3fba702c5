# Single-site operator labels accepted in a SpinTerm
PAULI_LABELS = ('X', 'Y', 'Z')
SPIN_LABELS = ('Sx', 'Sy', 'Sz')
IDENTITY_LABEL = 'I'
OPERATOR_LABELS = PAULI_LABELS + SPIN_LABELS + (IDENTITY_LABEL,)

# Model family names used by sweeps and the CLI
ISING_ED = 'ising-ed'
ISING_ANALYTIC = 'ising'
HEISENBERG = 'heisenberg'

# Sweep methods for the Heisenberg chain
METHOD_OPERATOR = 'operator'
METHOD_MIXED = 'mixed'
METHOD_ANALYTIC = 'analytic'
METHOD_ED = 'ed'

# Largest chain realized as a dense matrix; OPFID_MAX_SITES overrides
DEFAULT_MAX_SITES = 14
MAX_SITES_ENV = 'OPFID_MAX_SITES'

# Numerical tolerances
HERMITIAN_RTOL = 1e-12
UNITARY_ATOL = 1e-10
DEGENERACY_RTOL = 1e-9
SECULAR_THRESHOLD = 1e-8
SINC_TAYLOR_CUTOFF = 1e-4
GRID_UNIFORM_RTOL = 1e-12
TRACE_ATOL = 1e-10
PSD_ATOL = 1e-9
NORM_ATOL = 1e-10
FIDELITY_ATOL = 1e-12

# Finite-epsilon ladders
MIXED_EPSILON = 1e-3
ECHO_LADDER_SCALE = 0.05
ECHO_LADDER_SIZE = 4

# Monte-Carlo Haar average
HAAR_BATCH = 4096
HAAR_BOOTSTRAP = 200
HAAR_MIN_SAMPLES = 100

# Cross-oracle suite
ORACLE_TOLERANCE = 1e-6
ORACLE_DIMS = (4, 8, 16)
ORACLE_TIMES = (1.0, 10.0, 100.0)
ORACLE_ISING_N = 101
ORACLE_ISING_LAMBDAS = (0.5, 1.5, 2.0, 3.0)
ORACLE_ISING_T = 10.0

# Sweep output schema
CSV_COLUMNS = [
  'model', 'n', 't', 'method', 'param_name', 'param_value', 'chi', 'chi_secular',
  'chi_oscillatory', 'chi_derivative', 'degeneracy', 'epsilon']
