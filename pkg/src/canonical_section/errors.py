"""Exception taxonomy. Each class carries the CLI exit code it maps to."""


class CanonicalSectionError(Exception):
    exit_code = 1


class ConfigError(CanonicalSectionError):
    exit_code = 2


class NonPrime(ConfigError):
    pass


class ZeroDegree(ConfigError):
    pass


class GridError(ConfigError):
    pass


class OutOfRegion(CanonicalSectionError):
    """The point lies where no canonical section exists (nu >= e/(e+1))."""

    exit_code = 3


class PrecisionExhausted(CanonicalSectionError):
    exit_code = 4


class IndeterminateValuation(PrecisionExhausted):
    """All visible digits vanish but the element is not known to be zero."""


class VerificationFailure(CanonicalSectionError):
    exit_code = 5


class AnnulusViolation(CanonicalSectionError):
    exit_code = 6


class OrdinaryPoint(CanonicalSectionError):
    """nu = 0: the point is on the ordinary locus, handled symbolically."""

    exit_code = 7


class DomainError(CanonicalSectionError):
    exit_code = 8


class FieldMismatch(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class DegreeOverflow(DomainError):
    pass


class DegenerateInput(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class InconsistentInput(DomainError):
    pass
