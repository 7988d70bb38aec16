"""Exception hierarchy shared across the package."""


class BivasymError(Exception):
    """Base class for all package errors."""


class EvaluationOverflow(BivasymError):
    """A floating evaluation produced a non-finite value."""


class GammaPole(BivasymError):
    """Gamma function requested at a nonpositive integer."""


class BoxMismatch(BivasymError):
    """Two truncated series with different boxes were combined."""


class SingularAtOrigin(BivasymError):
    """The denominator polynomial vanishes at (0, 0)."""


class BranchTrackingError(BivasymError):
    """Continuous-argument tracking lost the branch; refine the grid."""


class NonIsolatedCriticalSet(BivasymError):
    """The critical system has a positive-dimensional solution set."""


class RootFindingError(BivasymError):
    """Simultaneous root iteration failed to converge.

    Carries whatever roots were found so callers can inspect partial
    results.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class HypothesisFailure(BivasymError):
    """A precondition of the asymptotic formula fails at a critical point.

    ``name`` identifies the failed hypothesis.
    """

    def __init__(self, name, message=None):
        super().__init__(message or f"hypothesis failed: {name}")
        self.name = name


class SpecFileError(BivasymError):
    """A problem file could not be parsed; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(BivasymError):
    """Invalid configuration (boxes, grids, radii, tolerances)."""
