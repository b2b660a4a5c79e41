"""Exception hierarchy shared by every picode module."""

from __future__ import annotations


class PicodeError(Exception):
    """Base class for all picode errors."""


class NegativeRadicand(PicodeError, ValueError):
    pass


class RadicandTooLarge(PicodeError, ValueError):
    pass


class PartitionMismatch(PicodeError, ValueError):
    pass


class TooFewOrbits(PicodeError, ValueError):
    pass


class DimensionMismatch(PicodeError, ValueError):
    pass


class InsufficientPoints(PicodeError, ValueError):
    pass


class DimensionCap(PicodeError, ValueError):
    """The dense simulator was asked for more than ``q**N`` basis states allowed."""


class ConstructionError(PicodeError, ValueError):
    """A construction precondition failed; ``details`` is JSON-serializable."""

    def __init__(self, message: str, **details) -> None:
        super().__init__(message)
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        return {"error": self.kind, "message": str(self), **self.details}


class NotAnInteger(ConstructionError):
    pass


class NegativePart(ConstructionError):
    pass


class SumMismatch(ConstructionError):
    pass


class NegativeCoefficient(ConstructionError):
    pass


class DistanceTooSmall(ConstructionError):
    pass


class DegreeBoundViolated(ConstructionError):
    pass


class NotDivisible(ConstructionError):
    pass


class ClassSumMismatch(ConstructionError):
    pass


class ParameterBoundViolated(ConstructionError):
    pass
