"""Exception types shared across the package."""


class CurlicueError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(CurlicueError, ValueError):
    """Malformed map spec, flag value or config file entry."""


class PreconditionError(CurlicueError):
    """A diagnostic was asked to run on data that does not satisfy its hypotheses."""
