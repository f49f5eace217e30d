"""Exception types shared across the toolkit."""


class ParameterError(ValueError):
    """Group or family parameters violate a structural constraint."""


class BudgetError(RuntimeError):
    """Requested computation exceeds a declared enumeration or size budget."""


class SetConditionError(ValueError):
    """Connection sets break the bi-Cayley requirements (R=R^-1, L=L^-1, 1 not in R or L)."""


class InvalidMapError(ValueError):
    """A generator-image map is not a validated automorphism."""


class DegreeMismatch(ValueError):
    """Permutations of different degrees were combined."""


class ContainmentError(ValueError):
    """A claimed subgroup is not contained in the ambient group."""


class InvariantViolation(ValueError):
    """An argument violates a documented precondition, e.g. a non-invariant subset."""


class NotAutomorphism(RuntimeError):
    """A permutation that must preserve adjacency does not; signals an internal bug."""


class NoLambdaError(ValueError):
    """No root of x^2 - x + 1 = 0 exists modulo n."""


class PreconditionError(ValueError):
    """Operation invoked outside its stated precondition."""


class GraphParseError(ValueError):
    """Malformed graph file; carries the byte offset of the first offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
