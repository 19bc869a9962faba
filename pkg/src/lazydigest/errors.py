"""Exception hierarchy shared by every lazydigest module."""


class LazyDigestError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(LazyDigestError, ValueError):
    """An unknown hash algorithm or otherwise unusable configuration."""


class DomainError(LazyDigestError, ValueError):
    """An argument lies outside the domain of the operation."""


class SpecError(LazyDigestError, ValueError):
    """A construction was given parameters that violate its invariants."""


class ResourceExhaustedError(LazyDigestError, MemoryError):
    """A bounded resource (such as an oracle cache) would be exceeded."""


class EntropyError(LazyDigestError, RuntimeError):
    """The entropy source of an oracle failed to produce bytes."""


class NotSerializableError(LazyDigestError, TypeError):
    """The object has no finite description that could be written out."""
