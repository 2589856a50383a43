"""Exception hierarchy shared by every module."""

from __future__ import annotations


class BeliefError(Exception):
    """Base class. ``locus`` optionally names where in an input the problem sits."""

    def __init__(self, message: str = "", *, locus: str | None = None):
        self.locus = locus
        super().__init__(message)

    def __str__(self) -> str:
        text = str(self.args[0]) if self.args else ""
        if self.locus:
            return f"{self.locus}: {text}"
        return text


# frame / subset encoding
class FrameError(BeliefError, ValueError):
    pass


class DuplicateLabel(FrameError):
    pass


class EmptyLabel(FrameError):
    pass


class FrameTooLarge(FrameError):
    pass


class UnknownLabel(FrameError, KeyError):
    __str__ = BeliefError.__str__  # KeyError would repr() the message


class FrameMismatch(FrameError):
    pass


class NumericModeMismatch(BeliefError, TypeError):
    pass


# masses and set functions
class MassError(BeliefError, ValueError):
    pass


class EmptySetMass(MassError):
    pass


class NegativeMass(MassError):
    pass


class MassNotNormalized(MassError):
    pass


class NonzeroEmptySet(MassError):
    pass


class NotABeliefFunction(MassError):
    """Raised by the Moebius inverse; carries the first negative-mass set."""

    def __init__(self, message: str = "", *, subset=None, value=None, locus=None):
        self.subset = subset
        self.value = value
        super().__init__(message, locus=locus)


# conditioning and combination
class ConditioningUndefined(BeliefError, ValueError):
    pass


class NotAPartition(BeliefError, ValueError):
    pass


class TotalConflict(BeliefError, ValueError):
    pass


# credal sets
class TooManyExtremePoints(BeliefError, ValueError):
    pass


class ConditionImpossible(BeliefError, ValueError):
    pass


# serialization and scenarios
class ParseError(BeliefError, ValueError):
    pass


class UnknownScenario(BeliefError, KeyError):
    __str__ = BeliefError.__str__
