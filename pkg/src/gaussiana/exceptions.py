"""Exception types shared across the package."""


class GaussianaError(Exception):
    """Base class for all package-specific errors."""


class PhysicsError(GaussianaError, ValueError):
    """A value or matrix violates a physical constraint.

    Raised for covariance matrices breaking the uncertainty relation,
    negative thermal occupations, over-squeezed baths and the like.
    """


class SchemaError(GaussianaError, ValueError):
    """A circuit or state specification is structurally invalid."""
