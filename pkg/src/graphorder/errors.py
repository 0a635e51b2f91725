"""Exception hierarchy shared across the toolkit."""


class GraphOrderError(Exception):
    """Base class for all toolkit errors."""


# graph-core
class NodeNotFound(GraphOrderError):
    pass


class EmptyGraph(GraphOrderError):
    pass


# generation
class GenerationExhausted(GraphOrderError):
    pass


class NoEligibleQueryNode(GraphOrderError):
    pass


# ranking
class ConvergenceFailure(GraphOrderError):
    def __init__(self, residual: float, iterations: int):
        super().__init__(f"no convergence after {iterations} iterations (residual={residual:g})")
        self.residual = residual
        self.iterations = iterations


class MissingWitness(GraphOrderError):
    pass


# ordering
class MissingScore(GraphOrderError):
    pass


class InvalidWitness(GraphOrderError):
    pass


# solvers
class NoPath(GraphOrderError):
    pass


class NotADag(GraphOrderError):
    pass


class AnswerShapeMismatch(GraphOrderError):
    pass


# prompting
class TemplateMismatch(GraphOrderError):
    pass


class ExemplarsRequired(GraphOrderError):
    pass


# evaluation
class EmptyInput(GraphOrderError):
    pass


class InsufficientOrders(GraphOrderError):
    pass


class InvalidBaseline(GraphOrderError):
    pass


# gateway
class AuthError(GraphOrderError):
    pass


class EndpointUnavailable(GraphOrderError):
    pass


class PromptTooLarge(GraphOrderError):
    pass


# store
class WriteError(GraphOrderError):
    pass


class ParseError(GraphOrderError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class CorruptCase(GraphOrderError):
    pass


# cli
class StageDependencyError(GraphOrderError):
    pass
