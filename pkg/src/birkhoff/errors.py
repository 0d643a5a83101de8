"""Exception types raised across the package."""

from __future__ import annotations


class BirkhoffError(Exception):
    """Base class for all errors raised by :mod:`birkhoff`."""


class InvalidDimensionError(BirkhoffError, ValueError):
    """Ambient dimension is not a positive integer."""


class DimensionMismatchError(BirkhoffError, ValueError):
    """A point, direction or polynomial has the wrong number of coordinates."""


class DegreeError(BirkhoffError, ValueError):
    """A degree or derivative order is out of range."""


class DegenerateNodeError(BirkhoffError, ValueError):
    """A derivative of order >= 1 was requested along the zero direction."""


class SchemeShapeError(BirkhoffError, ValueError):
    """The node counts per order do not match the homogeneous dimensions."""

    def __init__(self, message: str, orders: list[int] | None = None):
        super().__init__(message)
        self.orders = list(orders or [])


class SingularSchemeError(BirkhoffError):
    """The interpolation problem is not uniquely solvable.

    ``degree`` is the smallest order whose homogeneous Vandermonde system is
    singular (``None`` when singularity was detected on the dense system only).
    """

    def __init__(self, message: str, degree: int | None = None, degrees: list[int] | None = None):
        super().__init__(message)
        self.degree = degree
        self.degrees = list(degrees or ([] if degree is None else [degree]))


class SchemaError(BirkhoffError, ValueError):
    """A JSON document does not follow the expected layout."""


class FitError(BirkhoffError):
    """The minimax linear program failed its optimality certificate."""
