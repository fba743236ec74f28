"""Exception hierarchy.

Two families matter to callers: :class:`MalformedInput` (the data itself is
bad) and :class:`HypothesisFailure` (the data is well formed but a theorem's
hypothesis does not hold for it). The command line maps them to exit codes
1 and 2.
"""

from __future__ import annotations


class CoxcombError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(CoxcombError):
    pass


class HypothesisFailure(CoxcombError):
    pass


# scalar
class ParseError(MalformedInput):
    pass


class MixedFieldContext(MalformedInput):
    pass


# linear algebra / LP
class DimensionMismatch(MalformedInput):
    pass


class Infeasible(CoxcombError):
    """Raised by :func:`coxcomb.exactlin.lp_feasible` for an empty region."""

    def __init__(self, message: str = "constraint system is infeasible", certificate=None):
        super().__init__(message)
        self.certificate = certificate


class EmptyRegion(CoxcombError):
    pass


# fans
class MalformedComplex(MalformedInput):
    pass


class UnknownFace(MalformedInput):
    pass


class UnknownLabel(MalformedInput):
    pass


class NoPositiveCombination(HypothesisFailure):
    pass


class NotComplete(HypothesisFailure):
    pass


class QuotientNotComplete(NotComplete):
    pass


class NotRational(HypothesisFailure):
    pass


class RaysDoNotSpan(HypothesisFailure):
    pass


# polyhedra over the lattice
class UnboundedComponent(HypothesisFailure):
    pass


class UnboundedRootPolyhedron(HypothesisFailure):
    pass


class NotARoot(MalformedInput):
    pass


class ExponentNotIntegral(MalformedInput):
    pass


class NonInvertibleTorusElement(MalformedInput):
    pass


class NotGeometric(HypothesisFailure):
    pass


# complex structures
class OddKernel(HypothesisFailure):
    pass


class InvalidComplexStructure(HypothesisFailure):
    pass


class NotIsomorphicProjection(InvalidComplexStructure):
    pass
