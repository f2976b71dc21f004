class ConsheafError(Exception):
    """Base class for library errors."""


class MalformedInput(ConsheafError, ValueError):
    pass


class RefinementError(ConsheafError, ValueError):
    """A bar endpoint is missing from the stratification."""


class ProperError(ConsheafError, ValueError):
    """Proper pushforward is not defined for the given supports."""


class TruncationError(ConsheafError, ValueError):
    """Result changed when the truncation box was enlarged."""


class BoundaryPoint(ConsheafError, ValueError):
    """Sample point lies on a boundary stratum."""


class FieldMismatch(ConsheafError, ValueError):
    pass
