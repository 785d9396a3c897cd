"""Exception types raised across corrcap."""


class CorrcapError(Exception):
    """Base class for all corrcap errors."""


class NotADistribution(CorrcapError, ValueError):
    pass


class EmptySet(CorrcapError, ValueError):
    pass


class NotHermitian(CorrcapError, ValueError):
    pass


class NotUnitTrace(CorrcapError, ValueError):
    pass


class NotPositive(CorrcapError, ValueError):
    pass


class EigensolverFailure(CorrcapError, ArithmeticError):
    pass


class BadSubsystemIndex(CorrcapError, IndexError):
    pass


class DimensionMismatch(CorrcapError, ValueError):
    pass


class ProjectorsNotResolution(CorrcapError, ValueError):
    pass


class WrongDims(CorrcapError, ValueError):
    pass


class NotMajorized(CorrcapError, ValueError):
    """Target weights are not majorized by the spectrum they should realize."""


class BadPartition(CorrcapError, ValueError):
    pass


class TooLarge(CorrcapError, ValueError):
    pass


class NotQubits(CorrcapError, ValueError):
    pass


class BadEffect(CorrcapError, ValueError):
    pass


class BadRank(CorrcapError, ValueError):
    pass
