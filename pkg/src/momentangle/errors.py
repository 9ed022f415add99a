"""Shared exception types."""


class BoundExceeded(ValueError):
    """An enumeration bound (ground-set size, generator count) was hit;
    pass a larger explicit bound to override."""
