"""Exception hierarchy shared by all fracwave modules.

Two families matter to callers: `ValidationError` for bad inputs or
configuration (CLI exit code 1) and `GuardError` for numerical guards that
tripped at run time (CLI exit code 2).  Guards never return silently wrong
numbers; they raise.
"""


class FracwaveError(Exception):
    """Base class for all package errors."""


class ValidationError(FracwaveError, ValueError):
    """Invalid argument, domain violation, or malformed configuration."""


class GuardError(FracwaveError, ArithmeticError):
    """A numerical guard tripped (pole, non-convergence, decay failure)."""


class PoleError(GuardError):
    """Evaluation requested at (or too near) a pole."""


class StripError(ValidationError):
    """Mellin variable outside the declared strip of analyticity."""


class ConvergenceError(GuardError):
    """Series or quadrature failed to reach its accuracy target."""


class DecayError(GuardError):
    """Sampled function does not decay at the grid ends as declared."""


class GapError(GuardError):
    """Too much of a reconstruction grid is excluded by zero guards."""
