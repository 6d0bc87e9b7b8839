"""Exception hierarchy shared by all modules."""


class LatClassError(Exception):
    """Base class for all library errors."""


class DomainError(LatClassError):
    """An argument violates a documented precondition."""


class RankError(DomainError):
    """A matrix or generator set does not have the required rank."""


class UnsupportedError(LatClassError):
    """The request is outside the supported scope (degree, algebra family, ...)."""


class ResourceError(LatClassError):
    """An enumeration would exceed a hard resource bound."""
