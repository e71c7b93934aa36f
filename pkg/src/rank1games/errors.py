"""Exception types shared across modules."""


class SizeError(ValueError):
    """A problem size exceeds a configured cap."""
