"""Exception hierarchy.

Every error raised deliberately by the package derives from :class:`ReebCZError`.
Most also derive from a builtin so callers can catch ``ValueError`` etc.
"""


class ReebCZError(Exception):
    pass


class DegenerateOrbitError(ReebCZError, ValueError):
    """A parameter choice makes some orbit degenerate (an eigenvalue 1 / integral floor argument)."""

    def __init__(self, message, family=None, N=None):
        super().__init__(message)
        self.family = family
        self.N = N


class DegeneratePointError(ReebCZError, ValueError):
    pass


class PreconditionError(ReebCZError, ValueError):
    pass


class RegimeError(ReebCZError, ValueError):
    pass


class NotInSigmaStarError(ReebCZError, ValueError):
    pass


class NormalizationError(ReebCZError, ArithmeticError):
    pass


class InvalidCertificateError(ReebCZError):
    pass


class InternalInconsistencyError(ReebCZError, RuntimeError):
    pass


class SamplingError(ReebCZError, RuntimeError):
    pass
