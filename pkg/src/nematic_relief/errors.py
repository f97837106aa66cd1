"""Exceptions shared by the solvers."""

from __future__ import annotations


class CoverageError(LookupError):
    """A point is reached by no admissible characteristic, or by several.

    Attributes:
        status: ``"not_covered"`` or ``"multi_covered"``.
        roots: parameters of the characteristics found through the point.
    """

    def __init__(self, status: str, message: str = "", roots=()):
        super().__init__(message or status)
        self.status = status
        self.roots = tuple(float(r) for r in roots)


class SingularFactorError(ZeroDivisionError):
    """The factor ``f`` is singular at the requested point."""


class DomainError(ValueError):
    """A point lies outside the domain where a field is defined."""
