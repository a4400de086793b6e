"""Exception types shared across the package."""


class SmdError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(SmdError):
    """Input file or stream does not conform to the expected format."""


class NonFiniteValue(SmdError):
    """A coordinate contains NaN or infinity."""


class UnsupportedLayout(SmdError):
    """The declared skeleton layout is not supported."""


class DegenerateLandmarks(SmdError):
    """Landmark joints are collinear or coincident, so a frame cannot be built."""

    def __init__(self, message, frame=None):
        super().__init__(message if frame is None else f"{message} (frame {frame})")
        self.frame = frame


class BadWindow(SmdError):
    """Smoothing window is invalid for the given series."""


class BadConfig(SmdError):
    """A configuration value violates its constraints."""


class BadOptions(SmdError):
    """QA options list is empty, too large, or contains duplicates."""


class UnknownFixture(SmdError):
    """Requested synthetic fixture name is not known."""


class MissingMotion(SmdError):
    """A question references a motion id that was not provided."""
