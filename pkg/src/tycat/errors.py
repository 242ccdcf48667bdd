"""Exception hierarchy.  Every error carries a CLI exit code."""
from __future__ import annotations


class TycatError(Exception):
    exit_code = 1


class ParseError(TycatError):
    exit_code = 4


class CapExceeded(TycatError):
    exit_code = 3

    def __init__(self, message: str, size: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class OrderCapExceeded(CapExceeded):
    pass


class ClosureCapExceeded(CapExceeded):
    pass


class VerificationMismatch(TycatError):
    exit_code = 2


class NotClosed(TycatError):
    pass


class ContextMismatch(TycatError):
    pass


class NotInKernel(TycatError):
    pass


class DegenerateRestriction(TycatError):
    pass


class NotIsotropic(TycatError):
    pass


class NotInvertible(TycatError):
    pass


class ActionInvalid(TycatError):
    pass


class StabilizationFailure(TycatError):
    pass


class NotACocycle(TycatError):
    pass


class PairingNotInvariant(TycatError):
    pass


class NotSymplectic(TycatError):
    pass


class HypothesisViolated(TycatError):
    pass


class CertificateInvalid(TycatError):
    exit_code = 2
