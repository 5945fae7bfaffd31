"""Exception hierarchy shared by every module."""


class KronkitError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(KronkitError):
    pass


class DomainError(KronkitError):
    pass


class EpsilonOutOfRange(DomainError):
    pass


class ZeroLambda(DomainError):
    pass


class AmbiguousEnclosure(KronkitError):
    """Enclosure too wide to determine a discrete quantity; raise precision."""


class PrecisionExhausted(KronkitError):
    """Enclosures cannot separate candidates even at the precision cap."""


class BudgetExceeded(KronkitError):
    """An enumeration would visit more points than the configured budget."""
