"""Domain-condition exceptions shared across the package.

These mark inputs outside an operator's mathematical domain (as opposed to
programming errors, which raise plain ValueError/TypeError).  The CLI maps
DomainError to exit code 1.
"""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of the requested operation."""


class InvariantSubspaceError(DomainError):
    """Jet lies in the invariant subspace u1 = 0 where no projection exists."""


class NonTimelikeGradient(DomainError):
    """First-order part is not timelike (eta^{ab} u_a u_b >= 0)."""


class SingularPoint(DomainError):
    """A special conformal factor has a vanishing denominator at this point."""
