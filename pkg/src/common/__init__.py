from .console import add_color, print_colored, print_warning
from .errors import (
    UsageError,
    DomainError,
    ConfigurationError,
    NumericalError,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_NUMERICAL,
    EXIT_INVARIANT,
)
