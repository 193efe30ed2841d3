"""Exception hierarchy shared by all layers of the package."""


class KNError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(KNError, ZeroDivisionError):
    pass


class WrongWeight(KNError, ValueError):
    pass


class DegenerateMap(KNError, ValueError):
    pass


class NonUniqueElement(KNError):
    """The divisor-constrained solution space is not one-dimensional."""


class OrderSlack(KNError):
    """A constructed form vanishes to higher order than prescribed."""


class NotInWindow(KNError):
    """A basis expansion over a finite degree window failed to reconstruct."""


class BandViolation(KNError):
    pass


class DomainEscape(KNError):
    """A bracket left the index window of a cocycle table."""


class UpperBandViolation(KNError):
    pass


class Inconsistent(KNError):
    """An exact linear system has no solution."""


class BadDimension(KNError, ValueError):
    pass


class DegenerateForm(KNError):
    pass


class NotScalarOnAdjoint(KNError):
    pass


class DepthExceeded(KNError):
    """An operator application would leave the module's degree window."""


class CriticalLevel(KNError, ZeroDivisionError):
    """The level equals minus the dual Coxeter number."""


class NonScalarDefect(KNError):
    pass


class NotCohomologous(KNError):
    pass


class CentralChargeMismatch(KNError):
    pass


class ConfigError(KNError, ValueError):
    pass
