"""Domain exceptions shared across cutlab modules."""


class CutlabError(Exception):
    """Base class for all cutlab domain errors."""


class InfeasibleDegreeSequence(CutlabError):
    """No simple d-regular graph exists for the requested (d, n)."""


class EmptyEdgeSet(CutlabError):
    """An edge-consuming operation was applied to an edgeless graph."""


class NodeOutOfRange(CutlabError):
    """A node label is not in 0..n-1."""


class EdgeNotPresent(CutlabError):
    """An explicitly named edge does not exist in the graph."""


class LengthMismatch(CutlabError):
    """A bit assignment does not match the node count."""


class TooLarge(CutlabError):
    """Input exceeds the exhaustive-search or simulation size cap."""


class ConvergenceFailure(CutlabError):
    """The dense eigensolver failed to converge."""


class NotATree(CutlabError):
    """The graph is not connected with exactly n-1 edges."""


class NotRegular(CutlabError):
    """The graph's degree sequence is not uniform."""


class NonZeroRemainder(CutlabError):
    """An exact polynomial division left a remainder (implementation fault)."""


class LevelOutOfRange(CutlabError):
    """A tree level index is outside 1..h."""


class ZeroCut(CutlabError):
    """Approximation ratio is undefined for graphs with MaxCut value 0."""


class EmptyInput(CutlabError):
    """An aggregate was requested over an empty collection."""


class InsufficientData(CutlabError):
    """Records do not cover enough of the sweep to compute the report."""


class DivisionByZero(CutlabError):
    """A metric quotient has a zero denominator."""
