"""Exception types shared across the package."""


class Q2QuarticError(Exception):
    """Base class for all package errors."""


class InvalidParams(Q2QuarticError):
    """A FieldParams tuple violates one of its invariants."""


class NonIntegralCount(Q2QuarticError):
    """An exact rational count expression failed its integrality assertion."""


class FormulationMismatch(Q2QuarticError):
    """Two provably equal formulations of the same quantity disagreed."""


class SerreIdentityViolation(Q2QuarticError):
    """The per-group masses do not sum to q^-3."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"mass total differs from q^-3 by {residual}")


class PrecisionExhausted(Q2QuarticError):
    """A 2-adic computation needs more digits than the field carries."""


class DivisionByNonUnit(Q2QuarticError):
    """Inversion of a positive-valuation element without a valuation shift."""


class DegenerateLeadingCoefficient(Q2QuarticError):
    """A residue quadratic was passed with leading coefficient zero."""


class ClassInstability(Q2QuarticError):
    """A sampled coefficient class changed verdict under refinement."""


class BudgetExceeded(Q2QuarticError):
    """An enumeration exceeded its configured work budget."""
