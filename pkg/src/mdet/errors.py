"""Semantic exception hierarchy.

Public functions raise these instead of bare ValueError/ArithmeticError so
callers can tell an invalid input from a numerical breakdown from a failed
mathematical assertion.
"""


class MdetError(Exception):
    """Base error for the package."""


class InputError(MdetError, ValueError):
    """Inputs violate a documented precondition (domain, range, arity)."""


class UnknownDistributionError(InputError):
    """Catalog name not recognised."""


class ParseError(InputError):
    """Lexing or parsing failure; carries a 1-based source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EvalDomainError(MdetError):
    """Log of a non-positive subexpression, division by zero, etc."""


class NonFiniteError(MdetError):
    """An intermediate value overflowed or became non-finite."""


class QuadratureError(MdetError):
    """The integrator could not meet its contract."""


class TailDecayError(QuadratureError):
    """Integrand tail not decaying (or decaying too slowly to resolve):
    the integral is refused rather than truncated."""


class DivergentMomentError(QuadratureError):
    """The integrand tail does not decay fast enough: the moment is
    reported as non-existent rather than silently truncated."""

    def __init__(self, order: int, detail: str = ""):
        msg = f"moment of order {order} does not exist"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.order = order


class ProofCheckError(MdetError):
    """A numerically verified inequality failed; carries diagnostics."""
