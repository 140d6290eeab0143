"""Exception hierarchy shared across the package."""


class GonalityError(Exception):
    """Base class for all package errors."""


class NotCoprime(GonalityError, ValueError):
    pass


class NotPrime(GonalityError, ValueError):
    pass


class NotSublattice(GonalityError, ValueError):
    pass


class InfiniteIndex(GonalityError, ValueError):
    """Raised when the sublattice has smaller rank than the ambient lattice."""


class ModulusMismatch(GonalityError, ValueError):
    pass


class ZeroIdeal(GonalityError, ValueError):
    pass


class NotContained(GonalityError, ValueError):
    pass


class NotCyclic(GonalityError, ValueError):
    pass


class NoGenerator(GonalityError, ValueError):
    pass


class NormCheckFailed(GonalityError, AssertionError):
    pass


class MissingClassNumber(GonalityError, KeyError):
    pass


class CapExceeded(GonalityError, ValueError):
    pass


class ParseError(GonalityError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class HypothesisViolation(GonalityError):
    """The cyclicity hypothesis fails for one or more prime powers."""

    def __init__(self, violations):
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations)
        super().__init__(f"hypothesis violated: {detail}")


class BudgetExhausted(GonalityError):
    """Enumeration ran out of nodes; ``partial`` holds the outcome so far."""

    def __init__(self, partial):
        self.partial = partial
        nodes = getattr(partial, "nodes_visited", None)
        if nodes is None:
            super().__init__("node budget exhausted")
        else:
            super().__init__(f"node budget exhausted after {nodes} nodes")
