"""Exception types raised across the package."""


class TimoshenkoLieError(Exception):
    """Base class for all package errors."""


class ConfigError(TimoshenkoLieError, ValueError):
    """Invalid physical parameters or run configuration."""


class ZeroElement(TimoshenkoLieError, ValueError):
    """The algebra element passed to the classifier is zero."""


class NumericalDegeneracy(TimoshenkoLieError, ArithmeticError):
    """A normalisation formula produced a non-finite value."""

    def __init__(self, message, case_label=None):
        super().__init__(message)
        self.case_label = case_label


class ConstraintViolation(TimoshenkoLieError, ValueError):
    """A free parameter violates the constraint of its class."""


class WindowExceeded(TimoshenkoLieError, ValueError):
    """A field was evaluated outside the window it is defined on."""


class RangeExceeded(WindowExceeded):
    """A lifted field needs reduced data outside the integrated range."""


class RequiresLinearChi(TimoshenkoLieError, ValueError):
    """The operation is only a symmetry for the linear rotational moment."""


class GridTooCoarse(TimoshenkoLieError, ValueError):
    """Fewer grid points than the stencils need."""


class SingularCoefficient(TimoshenkoLieError, ArithmeticError):
    """A leading coefficient of a reduced ODE vanished during integration."""


class StepUnstable(TimoshenkoLieError, ArithmeticError):
    """The integrator produced NaN or Inf."""


class CaseMismatch(TimoshenkoLieError, ValueError):
    """Closed-form example requested for the wrong damping case."""
