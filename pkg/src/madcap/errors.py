"""Exception hierarchy shared by every madcap module."""


class MadcapError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(MadcapError, ValueError):
    pass


class NonHermitian(MadcapError, ValueError):
    pass


class InvalidState(MadcapError, ValueError):
    pass


class OutOfRange(MadcapError, ValueError):
    pass


class CptpViolation(MadcapError, ValueError):
    """Decay parameters outside the completely-positive domain."""


class Undefined(MadcapError, ValueError):
    pass


class Singular(MadcapError, ZeroDivisionError):
    pass


class DefectiveSpectrum(MadcapError, ArithmeticError):
    pass


class SingularSuperoperator(MadcapError, ArithmeticError):
    def __init__(self, message, rank=None, full_rank=None):
        super().__init__(message)
        self.rank = rank
        self.full_rank = full_rank


class NonDiagonalInput(MadcapError, ValueError):
    pass


class UnsupportedFamily(MadcapError, ValueError):
    pass


class PreconditionViolation(MadcapError, ValueError):
    pass
