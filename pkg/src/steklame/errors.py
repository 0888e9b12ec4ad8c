"""Exception hierarchy shared across the package."""


class SteklameError(Exception):
    """Base class for all package errors."""


class ConfigError(SteklameError):
    """Invalid configuration: bad JSON, unknown keys, out-of-range values."""


class GeometryError(SteklameError):
    """Invalid boundary geometry."""


class SingularParametrizationError(GeometryError):
    """Curve speed |gamma'(t)| degenerates below tolerance."""


class NonSimpleCurveError(GeometryError):
    """Sampled boundary polygon self-intersects."""


class OrientationError(GeometryError):
    """Signed area came out negative where a positive orientation is required."""


class InvalidOffsetError(GeometryError):
    """A source point produced by the normal offset fell inside the domain."""


class SingularKernelError(SteklameError):
    """Kernel evaluated at (nearly) coincident field and source points."""


class InsufficientResolutionError(SteklameError):
    """Fewer eigenpairs survived filtering than requested.

    Carries the survivor count; the usual remedy is to increase the
    number of source points.
    """

    def __init__(self, requested, survivors):
        self.requested = requested
        self.survivors = survivors
        super().__init__(
            f"only {survivors} eigenpairs survived filtering "
            f"({requested} requested); increase the source count"
        )


class MultiplicityError(SteklameError):
    """Operation requires a simple eigenvalue but the value is clustered."""


class UntrustworthyPairError(SteklameError):
    """Eigenpair trace norm too small to certify."""
