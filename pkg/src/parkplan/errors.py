"""Exception types shared across the toolkit."""


class ParkplanError(Exception):
    """Base class for all toolkit errors."""


class RasterFormatError(ParkplanError):
    """A raster file is malformed or carries invalid values."""


class InvalidScenarioError(ParkplanError):
    """A scenario violates its own construction rules (markers on obstacles,
    degenerate layouts, colliding start/goal poses)."""


class OutOfBoundsError(ParkplanError):
    """A state or pixel falls outside the world extent."""
