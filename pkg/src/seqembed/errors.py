"""Exception types raised across the package.

Negative *results* that a caller is expected to branch on (an embedding that
does not exist, a decomposition that got stuck) are exceptions too, so a CLI
can map them to exit codes without inspecting return values.
"""


class SeqEmbedError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(SeqEmbedError, ValueError):
    """Input violates a documented precondition."""


class NotGraphic(InvalidInput):
    pass


class NotBigraphic(InvalidInput):
    pass


class NotZeroSum(InvalidInput):
    pass


class BadShape(InvalidInput):
    pass


class BadParity(InvalidInput):
    pass


class DegenerateInput(InvalidInput):
    pass


class NotRealizable(InvalidInput):
    pass


class Infeasible(SeqEmbedError):
    pass


class BudgetExceeded(SeqEmbedError):
    pass


class SearchTimeout(SeqEmbedError):
    """Backtracking ran out of node budget. Never means 'no embedding'."""

    def __init__(self, nodes):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


class InsufficientGadgets(SeqEmbedError):
    def __init__(self, vertex):
        super().__init__(f"ran out of unmarked type-1 gadgets while completing vertex {vertex}")
        self.vertex = vertex


class Stuck(SeqEmbedError):
    def __init__(self, vertex):
        super().__init__(f"star decomposition stuck at uncovered vertex {vertex}")
        self.vertex = vertex


class Unassignable(SeqEmbedError):
    def __init__(self, vertex):
        super().__init__(f"exceptional vertex {vertex} has no permitted cluster")
        self.vertex = vertex


class Overload(SeqEmbedError):
    def __init__(self, vertex, cap):
        super().__init__(f"vertex {vertex}: every permitted cluster is at its cap of {cap}")
        self.vertex = vertex
        self.cap = cap


class CoverFailed(SeqEmbedError):
    def __init__(self, vertex):
        super().__init__(f"common neighbourhood collapsed while covering vertex {vertex}")
        self.vertex = vertex


class PipelineFailed(SeqEmbedError):
    def __init__(self, stage, cause=None):
        msg = f"pipeline failed at stage '{stage}'"
        if cause is not None:
            msg += f": {cause}"
        super().__init__(msg)
        self.stage = stage
        self.cause = cause
