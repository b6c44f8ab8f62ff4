"""Exception hierarchy shared by all modules."""


class Pgl2GraphsError(Exception):
    """Base class for every error raised by this package."""


# field construction / arithmetic
class NotPrime(Pgl2GraphsError, ValueError):
    pass


class EvenCharacteristic(Pgl2GraphsError, ValueError):
    pass


class CapExceeded(Pgl2GraphsError, ValueError):
    pass


class DeltaIsSquare(Pgl2GraphsError, ValueError):
    pass


class DivisionByZero(Pgl2GraphsError, ZeroDivisionError):
    pass


# characters
class EvalAtZero(Pgl2GraphsError, ValueError):
    pass


class TrivialPsi(Pgl2GraphsError, ValueError):
    pass


class InvalidParam(Pgl2GraphsError, ValueError):
    pass


# group / double cosets
class SingularMatrix(Pgl2GraphsError, ValueError):
    pass


class ForbiddenParam(Pgl2GraphsError, ValueError):
    pass


class ZeroParam(Pgl2GraphsError, ValueError):
    pass


class AsymmetricCoset(Pgl2GraphsError, ValueError):
    pass


# spectra
class NotSymmetric(Pgl2GraphsError, ValueError):
    pass


class NoConvergence(Pgl2GraphsError, RuntimeError):
    pass


class CardinalityMismatch(Pgl2GraphsError, ValueError):
    pass


# predictions / representations
class DimensionMismatch(Pgl2GraphsError, RuntimeError):
    pass


class RankMismatch(Pgl2GraphsError, RuntimeError):
    pass


class NotFixed(Pgl2GraphsError, ValueError):
    pass


class ZeroFunction(Pgl2GraphsError, ValueError):
    pass
