"""Exception types shared across the package."""

from __future__ import annotations


class OrthopartError(Exception):
    """Base class for all errors raised by this package."""


class InvalidRadicand(OrthopartError):
    """A quadratic-extension value was built with a negative radicand."""


class RadicandMismatch(OrthopartError):
    """Two quadratic-extension values with different radicands were combined."""


class IdenticallyZero(OrthopartError):
    """A polynomial expected to be nonzero has all coefficients zero."""


class CollinearPoints(OrthopartError):
    """Three points expected to span a plane are collinear."""


class DegenerateSupport(OrthopartError):
    """The prescribed support points do not pin down a finite set of plane triples."""


class ZeroDifferenceVector(OrthopartError):
    """A support pair contains two identical points."""


class AuxiliaryVectorsInvalid(OrthopartError):
    """No auxiliary vector pair satisfying the span condition could be chosen."""


class DegenerateBasis(OrthopartError):
    """Vectors expected to form an orthogonal basis do not."""


class InputSizeError(OrthopartError):
    """The input point set does not have the required cardinality."""


class GeneralPositionViolation(OrthopartError):
    """The point set is not in general position.

    Raised lazily, when the enumeration actually stumbles on the degeneracy:
    an unexpected exact zero in a point/plane side test, three collinear
    points, or a support configuration that admits infinitely many orthogonal
    plane triples.
    """

    def __init__(self, message: str, point_index: int | None = None,
                 support: tuple | None = None, plane_position: int | None = None):
        super().__init__(message)
        self.point_index = point_index
        self.support = support
        self.plane_position = plane_position
