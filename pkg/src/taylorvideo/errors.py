"""Exception types shared across the package.

Two families matter to callers: :class:`ConfigurationError` covers bad
parameters and inputs that violate a contract (the CLI maps these to exit
code 2), :class:`DataError` covers unreadable or malformed external data
(exit code 1).
"""


class TaylorVideoError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(TaylorVideoError, ValueError):
    """A parameter set or input violates a documented constraint."""


class DataError(TaylorVideoError):
    """External data could not be read or is malformed."""


class InvalidConfig(ConfigurationError):
    """Window length, term count, step, or thread count is out of range."""


class VideoTooShort(ConfigurationError):
    """The video has fewer frames than one temporal block needs."""


class InsufficientFrames(ConfigurationError):
    """A temporal block is too short for the requested number of terms."""


class SequenceTooShort(ConfigurationError):
    """A skeleton sequence has fewer frames than one temporal block needs."""


class ShapeMismatch(ConfigurationError):
    """Two arrays that must share a shape do not."""


class InvalidGain(ConfigurationError):
    """Rendering gain must be positive."""


class InvalidInput(ConfigurationError):
    """An input value is outside the operation's domain."""


class EmptyInput(ConfigurationError):
    """An operation that needs at least one item received none."""


class EmptyDirectory(DataError):
    """An image-sequence directory contains no decodable images."""


class DimensionMismatch(DataError):
    """Images in a sequence do not all share the same dimensions."""


class DecodeError(DataError):
    """An image file could not be decoded."""


class BadMagic(DataError):
    """A binary file does not start with the expected magic bytes."""


class TruncatedPayload(DataError):
    """A binary file ends before the payload its header promises."""


class UnsupportedDtype(DataError):
    """A binary file declares a dtype code this reader does not support."""
