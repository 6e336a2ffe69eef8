"""Base exception for every error this package raises on purpose."""


class CitescreenError(Exception):
    """Common ancestor so callers (and the CLI) can catch package errors broadly."""
