"""Exception types shared across the engine."""


class ParatwinError(Exception):
    """Base class for all engine errors."""


class ValidationError(ParatwinError):
    """A structural axiom of the input data is violated."""


class ConsistencyError(ParatwinError):
    """Two independent computation routes disagree; the engine is unsound
    for this input and results must not be trusted."""
