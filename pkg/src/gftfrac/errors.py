"""Exception hierarchy shared by the library and the CLI."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Structurally invalid call (mismatched inputs, bad counts)."""


class ConvergenceError(ArithmeticError):
    """A series did not settle within its term budget."""


class DegenerateSampleError(ArithmeticError):
    """A denominator vanished at a sampled point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class KernelDirectionError(DomainError):
    """Direction lies in the kernel of the linear functional."""
