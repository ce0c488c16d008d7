"""Exception types shared across the package."""


class CycleNestError(Exception):
    """Base class for structured failures raised by this package."""


class GraphFormatError(CycleNestError):
    """Malformed edge-list input."""


class AcyclicGraphError(CycleNestError):
    """Raised when a cycle is requested from a forest."""


class NoShortConnectionError(CycleNestError):
    """Dual ball growth exhausted without the balls meeting.

    Carries the two ball traces for diagnosis.
    """

    def __init__(self, message, trace_x=None, trace_y=None):
        super().__init__(message)
        self.trace_x = trace_x
        self.trace_y = trace_y


class TerminalStarvationError(CycleNestError):
    """A cycle vertex ran out of available external terminals."""

    def __init__(self, message, vertex):
        super().__init__(message)
        self.vertex = vertex


class WrapError(CycleNestError):
    """A wrapping attempt failed after exhausting its restart budget."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class LinkageError(WrapError):
    """All disjoint-path strategies failed during linked wrapping."""


class PipelineError(CycleNestError):
    """A pipeline stage failed; carries the stage label and cause."""

    def __init__(self, stage, cause):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
