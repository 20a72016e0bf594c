class UsageError(ValueError):
    """Invalid input: bad enum value, mismatched time grids, unknown preset."""


class DomainError(UsageError):
    """Argument outside the mathematical domain of an operation."""


class ConfigurationError(UsageError):
    """Inconsistent experiment configuration, e.g. CSA requested with d = 0."""


class NumericalError(ArithmeticError):
    """Non-finite values, solver failure or a refused defective decomposition."""


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_INVARIANT = 3
