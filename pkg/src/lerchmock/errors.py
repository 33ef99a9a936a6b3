"""Exception hierarchy shared by every module of the package."""


class LerchMockError(Exception):
    """Base class for all package errors."""


# exact series layer
class ZeroConstantTerm(LerchMockError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(LerchMockError, ValueError):
    pass


class DivergentProduct(LerchMockError, ValueError):
    pass


class IncompatibleOffsets(LerchMockError, ValueError):
    """Two series whose exponent lattices do not line up."""


class ConstraintViolation(LerchMockError, ValueError):
    pass


# numeric layer
class NomeOutsideDisk(LerchMockError, ValueError):
    pass


class NomeOnUnitCircle(LerchMockError, ValueError):
    pass


class TruncationFailure(LerchMockError, RuntimeError):
    pass


class ThetaZero(LerchMockError, ZeroDivisionError):
    pass


class PoleHit(LerchMockError, ZeroDivisionError):
    pass


# quadrature layer
class BudgetExceeded(LerchMockError, RuntimeError):
    pass


class DecayCertificateFailed(LerchMockError, ValueError):
    pass


class PoleNearContour(LerchMockError, ValueError):
    pass


class PreconditionFailed(LerchMockError, ValueError):
    pass


# front end
class UnknownIdentity(LerchMockError, KeyError):
    pass


class UnknownFamily(LerchMockError, KeyError):
    pass


class ConfigInvalid(LerchMockError, ValueError):
    pass
