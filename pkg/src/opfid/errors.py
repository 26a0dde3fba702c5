"""
Exceptions raised by opfid. Each carries the category the CLI maps to an exit code.
"""

class OpfidError(Exception):
  """ Base class for all opfid errors """

class ValidationError(OpfidError, ValueError):
  """ Input outside an operation's preconditions (bad size, non-Hermitian matrix, bad grid, ...) """

class ResourceError(OpfidError, RuntimeError):
  """ Requested system is larger than the configured cap """

class NumericError(OpfidError, ArithmeticError):
  """ A numerical kernel failed, e.g. the eigensolver did not converge """

class SweepPointError(OpfidError):
  """
  Failure at one grid point of a sweep. Keeps the parameter so the caller can tell which point
  broke. Arguments are passed through to Exception so the error pickles across worker processes.
  """
  def __init__(self, param_name, param_value, reason):
    super().__init__(param_name, param_value, reason)
    self.param_name = param_name
    self.param_value = param_value
    self.reason = reason

  def __str__(self):
    return self.param_name + '=' + repr(self.param_value) + ': ' + str(self.reason)
