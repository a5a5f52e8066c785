"""Exception types raised by the engine.

Every error carries a machine-readable ``code`` (the class name) so the
HTTP layer can surface module errors without string matching.
"""


class EngineError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# corpus
class InvalidAttributeName(EngineError):
    pass


class DuplicateAttributeName(EngineError):
    pass


class ParseError(EngineError):
    pass


class CapExceeded(EngineError):
    pass


class EmptyTable(EngineError):
    pass


class NetworkError(EngineError):
    pass


class MalformedResponse(EngineError):
    pass


# embedding / grouping
class ZeroVector(EngineError):
    pass


class InsufficientClusters(EngineError):
    pass


class OperationCancelled(EngineError):
    pass


# vulnerability
class NoPrivacyAttributes(EngineError):
    pass


class EmptyVulnerableSet(EngineError):
    pass


# pair risk
class InvalidCounts(EngineError):
    pass


class NoSharedAttributes(EngineError):
    pass


# disclosure
class InvalidKey(EngineError):
    pass


class EmptyKey(EngineError):
    pass


class TooFewMatches(EngineError):
    pass


class NoFiniteValues(EngineError):
    pass
