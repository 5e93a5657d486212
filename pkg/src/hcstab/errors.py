"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class HCError(Exception):
    """Base class for all package errors."""


# metric-core

class MetricError(HCError, ValueError):
    """Raised when a distance matrix is not a valid finite metric."""


class ShapeMismatch(MetricError):
    pass


class AsymmetricMatrix(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class NegativeDistance(MetricError):
    pass


class NonFiniteDistance(MetricError):
    pass


class TriangleViolation(MetricError):
    def __init__(self, i, j, k, message=None):
        self.triple = (i, j, k)
        super().__init__(message or f"d({i},{k}) > d({i},{j}) + d({j},{k})")


class DuplicatePoint(MetricError):
    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        super().__init__(message or f"points {i!r} and {j!r} are at distance 0")


class DuplicateLabel(MetricError):
    pass


class EmptyInput(MetricError):
    pass


class NonpositiveScale(MetricError):
    pass


class EmptySubset(MetricError):
    pass


class UnknownLabel(MetricError, KeyError):
    pass


class NotUltrametric(MetricError):
    pass


# dendrogram

class DendrogramError(HCError, ValueError):
    pass


class NotSingletonsAtZero(DendrogramError):
    pass


class NoTopMerge(DendrogramError):
    pass


class NotNested(DendrogramError):
    pass


class UnsortedBreakpoints(DendrogramError):
    pass


class InconsistentReplay(DendrogramError):
    pass


# linkage / unchaining

class LinkageError(HCError, ValueError):
    pass


class OverlappingBlocks(LinkageError):
    pass


class EmptyBlock(LinkageError):
    pass


class UnchainingError(HCError):
    pass


class AlphaTooSmall(UnchainingError, ValueError):
    pass


class NoProgress(UnchainingError, RuntimeError):
    pass


class NoThresholdFound(UnchainingError, RuntimeError):
    pass


class CliqueBudgetExceeded(UnchainingError, RuntimeError):
    pass


# gromov-hausdorff

class NotACorrespondence(HCError, ValueError):
    pass


# stability-lab

class StabilityError(HCError):
    pass


class TrivialPartition(StabilityError, ValueError):
    pass


class MetricViolation(StabilityError, RuntimeError):
    """A construction that must always yield a metric did not; an internal defect."""


class BridgeNotUnique(StabilityError, ValueError):
    pass


class NoBehaviorFlip(StabilityError, RuntimeError):
    pass


class LevelTooLarge(StabilityError, ValueError):
    pass


class NotTComponents(StabilityError, ValueError):
    pass
