"""Exception hierarchy. Every failure that has a witness carries it as attributes."""

from __future__ import annotations


class IntervalStructError(ValueError):
    """Base class for all validation errors raised by this package."""


class UniverseMismatch(IntervalStructError):
    pass


class CapExceeded(IntervalStructError):
    """A universe is too large for dense enumeration."""


class AxiomViolation(IntervalStructError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DualityViolation(IntervalStructError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidAssignment(IntervalStructError):
    """A basic set assignment (or probability assignment) breaks its axioms."""


class NonSerialRelation(IntervalStructError):
    pass


class NotBeliefFunction(IntervalStructError):
    def __init__(self, message: str, witness=None, value: float | None = None):
        super().__init__(message)
        self.witness = witness
        self.value = value


class Inconsistent(IntervalStructError):
    """Expert rules admit no interval structure.

    ``element`` is the offending W label (algorithm route) and ``subsets`` the
    propositions whose lower assignments all contain it. The closure oracle
    instead sets ``subset``, the proposition whose bounds cross.
    """

    def __init__(self, message: str, element=None, subsets=(), subset=None):
        super().__init__(message)
        self.element = element
        self.subsets = tuple(subsets)
        self.subset = subset
