"""Exception hierarchy shared by every gallai module."""


class GallaiError(Exception):
    """Base class for all errors raised by this package."""


class ResourceLimit(GallaiError):
    """A construction would exceed the configured resource budget.

    ``quantity`` names the offending intermediate value (e.g. ``"points"`` or
    ``"color_count"``), ``value`` is its size (or a lower bound on it) and
    ``limit`` the budget it ran into.
    """

    def __init__(self, message, quantity=None, value=None, limit=None):
        super().__init__(message)
        self.quantity = quantity
        self.value = value
        self.limit = limit


class ColoringError(GallaiError):
    """A coloring does not match the set it is supposed to color."""


class MissingPoint(ColoringError, KeyError):
    """A point that must be colored has no color."""

    def __str__(self):
        return Exception.__str__(self)


class DomainMismatch(ColoringError):
    """A coloring covers points outside its expected domain."""


class NoRepeat(GallaiError):
    """Pigeonhole failed: more colors in use than the declared arity allows."""


class InternalProofError(GallaiError):
    """An extracted witness failed self-validation. Always an implementation bug."""


class FormatError(GallaiError, ValueError):
    """Malformed input in one of the ``gallai-* v1`` text formats."""
