"""Exception hierarchy.

Two broad families matter to callers (and to the CLI exit codes): input
problems (bad files, unknown tokens, invalid references) and numeric
problems (non-convergence, degenerate matrices).
"""


class RelmapError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RelmapError):
    """Invalid input: unparseable files, bad references, contract violations."""


class LoadError(InputError):
    """A data file could not be parsed."""


class OOVError(InputError):
    """A token could not be resolved to an embedding vector."""

    def __init__(self, token: str, detail: str = ""):
        self.token = token
        msg = f"out-of-vocabulary token: {token!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ValidationError(InputError):
    """An argument violates an operation precondition."""


class DegenerateDataError(InputError):
    """Training data cannot support a fit (e.g. single-class labels)."""


class EmptySelectionError(InputError):
    """Feature selection eliminated every feature (penalty too strong)."""


class NumericError(RelmapError):
    """Numeric failure: divergence, overflow, degenerate normalization."""


class ConvergenceError(NumericError):
    """An iterative fit did not converge within its iteration cap."""

    def __init__(self, message: str, gradient_norm: float | None = None):
        self.gradient_norm = gradient_norm
        if gradient_norm is not None:
            message += f" (final gradient norm {gradient_norm:.3e})"
        super().__init__(message)


class NormalizationError(NumericError):
    """A matrix cannot be bistochastically normalized (zero row/column)."""
