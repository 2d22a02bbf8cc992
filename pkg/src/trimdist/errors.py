"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`TrimDistError`,
so callers (the CLI in particular) can map them to exit codes.
"""


class TrimDistError(Exception):
    """Base class for library errors."""


class InvalidInput(TrimDistError, ValueError):
    """Arguments violate a documented precondition."""


class UnsupportedDistribution(TrimDistError):
    """A distribution lacks the regularity an operation needs."""


class UnsupportedCase(TrimDistError):
    """No closed form is available for the requested parameters."""


class BoundaryDegenerate(TrimDistError):
    """An optimizer sits on a clamp boundary, so the limit formula does not apply."""


class DegenerateCase(TrimDistError):
    """All optimizer sets are empty."""


class NotAttained(TrimDistError):
    """A search target could not be reached inside its admissible range."""
