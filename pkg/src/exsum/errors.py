"""Exception types shared across the package."""


class ExsumError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(ExsumError):
    """An algorithm/monoid/parameter combination that can never run.

    Examples: an algorithm that needs an inverse paired with a monoid that
    has none, corner decomposition outside 2D/3D, an unknown algorithm or
    monoid name, a bad modulus.  The CLI maps this to exit code 2.
    """


class UsageError(ExsumError, ValueError):
    """Malformed inputs: bad coordinates, extents, boxes, or file contents."""


class VerificationError(ExsumError):
    """Benchmark output did not match the reference oracle (CLI exit code 1)."""
