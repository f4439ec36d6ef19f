"""Exception hierarchy shared by all modules."""


class TropabelError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TropabelError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidCurve(TropabelError):
    """A curve violates balancing, simplicity or geometric consistency."""


class InvalidMarking(TropabelError):
    """Marked points do not cut the curve into a tree."""


class NotLifting(TropabelError):
    """A point set does not kill the holonomy of the curve."""


class NotRealizable(TropabelError):
    """The class cannot be realized by a curve in the given torus."""


class NonGenericConfiguration(TropabelError):
    """Points or torus sit on a wall; resample and retry."""


class SearchIncomplete(TropabelError):
    """The bounded slope scan missed shapes that the lattice search found."""
