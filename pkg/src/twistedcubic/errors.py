"""Exception hierarchy.

Everything mathematical derives from :class:`DomainError`; the CLI maps those
to exit status 3.  :class:`InternalInconsistency` marks a broken identity and
should never fire on correct code.
"""


class DomainError(ValueError):
    pass


class FieldError(DomainError):
    pass


class NotPrime(FieldError):
    pass


class BadCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldTooSmall(FieldError):
    pass


class ZeroModulus(DomainError, ZeroDivisionError):
    pass


class SingularMatrix(DomainError):
    pass


class DegreeMismatch(DomainError):
    pass


class SingularForm(DomainError):
    pass


class ZeroForm(DomainError):
    pass


class BadLambda(DomainError):
    pass


class DependentForms(DomainError):
    pass


class NotOnKleinQuadric(DomainError):
    pass


class OsculatingLine(DomainError):
    pass


class ZeroDirection(DomainError):
    pass


class NonGenericLine(DomainError):
    pass


class SingularCurve(DomainError):
    pass


class BoundExceeded(DomainError):
    pass


class InternalInconsistency(AssertionError):
    pass


class IntegralityViolation(InternalInconsistency):
    pass


class UnclassifiableLine(InternalInconsistency):
    pass
