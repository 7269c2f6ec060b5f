"""Exception types shared across the package."""


class MultopError(Exception):
    """Base class for all package errors."""


class ConstraintViolation(MultopError):
    """A geometric parameter constraint does not hold."""


class InvalidMode(MultopError):
    """Unknown operator construction mode."""


class NotHermitian(MultopError):
    """A matrix expected to be Hermitian is not."""


class DomainViolation(MultopError):
    """A point lies outside the required region of the complex plane."""


class RegionViolation(MultopError):
    """A spectral parameter lies outside every proved resolvent region."""


class NearEigenvalue(MultopError):
    """A spectral parameter is too close to an isolated eigenvalue."""


class SeriesDivergence(MultopError):
    """A geometric series used by an analytic solver fails to converge."""


class ClusterAmbiguity(MultopError):
    """Eigenvalue clusters overlap at the requested truncation level."""


class DegreeGuard(MultopError):
    """An operator word exceeds the supported degree."""
