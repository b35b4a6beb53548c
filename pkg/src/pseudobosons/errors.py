"""Exception hierarchy shared by all modules."""


class PseudoBosonError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpaceError(PseudoBosonError, ValueError):
    """Truncation parameters violate ``dim >= 2`` or ``trusted_count <= dim - 1``."""


class ShapeError(PseudoBosonError, ValueError):
    """Operands do not share the ambient dimension."""


class InvalidInputError(PseudoBosonError, ValueError):
    pass


class NumericError(PseudoBosonError, ArithmeticError):
    """Non-finite entries or a failed dense linear-algebra kernel."""


class IllConditionedError(PseudoBosonError, ArithmeticError):
    """``T @ Tinv`` is too far from the identity to trust a conjugation."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonInvertiblePairError(PseudoBosonError, ArithmeticError):
    pass


class NoVacuumError(PseudoBosonError):
    pass


class AmbiguousVacuumError(PseudoBosonError):
    pass


class TrustedBlockError(PseudoBosonError, ValueError):
    """A requested ladder depth reaches past the trusted block."""


class TruncationUnsafeError(PseudoBosonError, ValueError):
    """The model generator is too large for an accurate matrix exponential."""


class UnsupportedModelError(PseudoBosonError, ValueError):
    pass


class QuadratureAccuracyError(PseudoBosonError, ValueError):
    pass
