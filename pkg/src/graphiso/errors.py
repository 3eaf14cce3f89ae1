"""Exception types shared across the package."""


class GraphisoError(Exception):
    """Base class for all graphiso errors."""


class ParseError(GraphisoError):
    pass


# graph construction / transforms

class NonPositiveWeight(GraphisoError):
    pass


class DanglingEndpoint(GraphisoError):
    pass


class DuplicateEdgeId(GraphisoError):
    pass


class NonPositiveScale(GraphisoError):
    pass


class UnknownEdge(GraphisoError):
    pass


class BadPartCount(GraphisoError):
    pass


class InfeasibleParameters(GraphisoError):
    pass


class NotConnected(GraphisoError):
    pass


# cycles

class NoCycle(GraphisoError):
    pass


class NoCycleThroughEdge(GraphisoError):
    pass


class OracleBudgetExceeded(GraphisoError):
    pass


# spectral / entropy

class NonSquare(GraphisoError):
    pass


class NegativeEntry(GraphisoError):
    pass


class NoConvergence(GraphisoError):
    pass


class FrontierBudgetExceeded(GraphisoError):
    pass


# stable norm

class NotACycle(GraphisoError):
    pass


class SizeLimitExceeded(GraphisoError):
    pass


class DegenerateBox(GraphisoError):
    pass


# subshift

class EmptySubshift(GraphisoError):
    pass


class BadParameter(GraphisoError):
    pass


# optimizer

class OutOfDomain(GraphisoError):
    pass


class IterationBudgetExceeded(GraphisoError):
    pass
