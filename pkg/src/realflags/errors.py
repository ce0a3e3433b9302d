"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input violates a mathematical precondition of an operation."""


class NumericallyMarginal(DomainError):
    """A floating-point rank decision fell inside the guard band."""


class ClusteringAmbiguity(DomainError):
    """Two numerically extracted roots were too close to separate."""
