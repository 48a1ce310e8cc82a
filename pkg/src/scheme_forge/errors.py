"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SchemeForgeError(ValueError):
    """Base class for all construction and parameter errors."""


class NotPrime(SchemeForgeError):
    pass


class DegreeZero(SchemeForgeError):
    pass


class DegreeTooSmall(SchemeForgeError):
    pass


class FieldTooLarge(SchemeForgeError):
    pass


class DivisionByZero(SchemeForgeError, ZeroDivisionError):
    pass


class ZeroElement(SchemeForgeError):
    pass


class NotDivisor(SchemeForgeError):
    pass


class ParityCondition(SchemeForgeError):
    pass


class SingularMatrix(SchemeForgeError):
    pass


class BadCongruence(SchemeForgeError):
    pass


class BadParameters(SchemeForgeError):
    pass


class MismatchedN(SchemeForgeError):
    pass


class CNotASubgroup(SchemeForgeError):
    pass


class NotAScheme(SchemeForgeError):
    pass


class TooLarge(SchemeForgeError):
    pass


class Disconnected(SchemeForgeError):
    pass


class AsymmetricForGraph6(SchemeForgeError):
    pass


class ConventionMismatch(SchemeForgeError):
    pass


class VerificationFailure(SchemeForgeError):
    """A certified negative answer. ``witness`` locates the failure."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SchemeViolation(VerificationFailure):
    pass


class SRingViolation(VerificationFailure):
    pass


class NotADS(VerificationFailure):
    pass


class NotDSRG(VerificationFailure):
    pass


class NotDDG(VerificationFailure):
    pass


class NotDRG(VerificationFailure):
    pass
