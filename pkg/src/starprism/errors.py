"""Exception hierarchy shared by every module."""


class StarPrismError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(StarPrismError, ValueError):
    pass


class TheoremRangeError(InvalidParameterError):
    """(n, m) falls outside the range where the closed forms are stated."""


class DisconnectedGraphError(StarPrismError, ValueError):
    def __init__(self, u, v):
        super().__init__(f"graph is disconnected: vertex {v} unreachable from {u}")
        self.pair = (u, v)


class MalformedLabelingError(StarPrismError, ValueError):
    pass


class OracleSizeError(StarPrismError, ValueError):
    pass


class UsageError(StarPrismError, ValueError):
    pass
