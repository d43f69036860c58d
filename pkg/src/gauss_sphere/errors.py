"""Exception types raised by the lab."""


class LabError(ValueError):
    """Base class for every error raised by gauss_sphere."""


class CapacityError(LabError):
    pass


class OutOfTableError(LabError):
    """A radius or term count reaches past the loaded count table."""


class ToleranceError(LabError):
    pass


class OddIndexError(LabError):
    """C_j is identically zero for odd j and is never materialized."""


class SingularProximityError(LabError):
    """tau sits too close to a singular time 2*pi*sqrt(n)."""


class RichardsonError(LabError):
    """Partial sums at N, 2N, 4N do not contract."""


class MomentSystemError(LabError):
    pass


class CrossCheckError(LabError):
    """An exact-side figure row disagrees with the series beyond its bound."""

    def __init__(self, message: str, row=None):
        super().__init__(message)
        self.row = row
