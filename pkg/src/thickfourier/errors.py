"""Exception hierarchy shared by every module.

The CLI echoes ``type(err).__name__`` on domain errors, so class names are
part of the public interface.
"""


class ThickFourierError(Exception):
    """Base class for all domain errors raised by the package."""


class NonPositiveOrNonHalfInteger(ThickFourierError, ValueError):
    pass


class TranscendentalProductError(ThickFourierError, ArithmeticError):
    """Both factors of a product carry a gamma/log part."""


class NotInvertible(ThickFourierError, ZeroDivisionError):
    pass


class PoleInGamma(ThickFourierError, ValueError):
    pass


class NotHomogeneous(ThickFourierError, ValueError):
    pass


class UnknownPoleStructure(ThickFourierError, ValueError):
    pass


class InsufficientJet(ThickFourierError, ValueError):
    pass


class QuadratureFailure(ThickFourierError, RuntimeError):
    pass


class OutOfRange(ThickFourierError, ValueError):
    pass


class NotInDomain(ThickFourierError, ValueError):
    pass


class TruncationTooShort(ThickFourierError, ValueError):
    pass


class TruncationMismatch(ThickFourierError, ValueError):
    pass


class MissingBulk(ThickFourierError, ValueError):
    pass


class UnsupportedAtomScaling(ThickFourierError, NotImplementedError):
    pass


class UnsupportedAtomMultiplication(ThickFourierError, NotImplementedError):
    pass


class UnsupportedAtomTransform(ThickFourierError, NotImplementedError):
    pass


class ChiUndefined(ThickFourierError, ValueError):
    pass


class UnknownCase(ThickFourierError, KeyError):
    pass
