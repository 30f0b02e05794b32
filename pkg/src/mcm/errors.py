class MCMError(Exception):
    """Base class for library errors."""


class InvalidElement(MCMError, ValueError):
    """A candidate representation does not denote a monotone injective map."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class ConsistencyError(MCMError):
    """A stored orientation bit contradicts the represented map."""


class InternalError(MCMError, AssertionError):
    """Two independent routes disagreed; this is a bug, not a user error."""


class MarginTooSmall(MCMError, ValueError):
    pass


class GenerationExhausted(MCMError, RuntimeError):
    pass
