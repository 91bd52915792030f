"""Exception types shared by all modules."""

from __future__ import annotations


class GKMError(Exception):
    """Base class for library errors."""


class ValidationError(GKMError, ValueError):
    """Input data violates a structural axiom.

    ``axiom`` names the violated rule and ``witness`` carries the offending
    edge, chain or cycle.
    """

    def __init__(self, message: str, axiom: str | None = None, witness=None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class HypothesisError(GKMError):
    """A theorem hypothesis required by an operation does not hold."""

    def __init__(self, message: str, hypothesis: str, witness=None):
        super().__init__(message)
        self.hypothesis = hypothesis
        self.witness = witness


class DivisibilityError(GKMError, ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class MismatchError(GKMError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right
