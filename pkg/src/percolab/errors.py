"""Exception hierarchy. Every error raised by the package derives from PercolabError."""


class PercolabError(Exception):
    pass


# graph core
class SelfLoopError(PercolabError, ValueError):
    pass


class DuplicateEdgeError(PercolabError, ValueError):
    pass


class VertexOutOfRangeError(PercolabError, ValueError):
    pass


class SetsNotDisjointError(PercolabError, ValueError):
    pass


class MaskLengthMismatchError(PercolabError, ValueError):
    pass


class FormatError(PercolabError, ValueError):
    """Malformed or non-canonical edge-list / mask / config file."""


# generators
class InvalidParamsError(PercolabError, ValueError):
    pass


class ParityViolationError(InvalidParamsError):
    pass


class DivisibilityViolationError(InvalidParamsError):
    pass


class RepairFailedError(PercolabError, RuntimeError):
    pass


# percolation
class InvalidProbabilityError(PercolabError, ValueError):
    pass


class GraphMismatchError(PercolabError, ValueError):
    pass


class DuplicateRoundError(PercolabError, ValueError):
    pass


# exploration
class InvalidPermutationError(PercolabError, ValueError):
    pass


class NotRegularError(PercolabError, ValueError):
    pass


# theory
class NonPositiveEpsilonError(PercolabError, ValueError):
    pass


class SubcriticalMeanError(PercolabError, ValueError):
    pass


# isoperimetry
class BudgetExceededError(PercolabError, RuntimeError):
    pass


class NotConnectedError(PercolabError, ValueError):
    pass


class NoConvergenceError(PercolabError, RuntimeError):
    pass


class GuaranteeViolatedError(PercolabError, AssertionError):
    pass


# harness
class UnknownMetricError(PercolabError, KeyError):
    pass


class UnknownPredicateError(PercolabError, KeyError):
    pass


class OutputUnwritableError(PercolabError, OSError):
    pass
