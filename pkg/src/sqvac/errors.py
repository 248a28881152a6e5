"""Exception types shared across the library.

Grouped so callers can distinguish bad inputs (domain/configuration), geometry
problems on phase-space grids, analytically excluded inputs (degenerate), and
truncation-budget violations in the number basis.
"""


class SqvacError(Exception):
    """Base class for all library-specific errors."""


class DomainError(SqvacError, ValueError):
    """Argument outside the mathematical domain of the function."""


class ConfigurationError(SqvacError, ValueError):
    """Structurally invalid configuration (sizes, caps, incompatible objects)."""


class GeometryError(SqvacError, ValueError):
    """Phase-space grid geometry unfit for the requested operation."""


class DegenerateInputError(SqvacError, ValueError):
    """Input for which the quantity is analytically undefined (division blow-up)."""


class TruncationError(SqvacError, RuntimeError):
    """Number-basis truncation budget exceeded.

    Attributes
    ----------
    lost_weight : float
        Probability weight that would be lost past the truncation edge.
    suggested_trunc : int or None
        Basis size estimated to bring the loss under budget, when known.
    """

    def __init__(self, message, lost_weight=0.0, suggested_trunc=None):
        super().__init__(message)
        self.lost_weight = lost_weight
        self.suggested_trunc = suggested_trunc
