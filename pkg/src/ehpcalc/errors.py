"""Shared exception types.

Domain errors mean the inputs violated a documented precondition; parse
errors mean an expression string did not match a grammar. The CLI maps
these to exit codes 1 and 2 respectively.
"""


class DomainError(ValueError):
    """A documented precondition was violated."""


class ExprParseError(ValueError):
    """An expression string does not match its grammar."""


class CapExceeded(DomainError):
    """A desk-scale size cap was exceeded; rerun on a smaller instance."""


class NoTensorRule(DomainError):
    """The tensor pair is outside the closed rewrite table."""


class NotRegularValue(DomainError):
    """The chosen value is not regular for the piecewise map."""


class NormalFormUnavailable(DomainError):
    """No exact normal form exists for this field/unit combination.

    Callers that can fall back to symbolic comparison should catch this
    and report "undecided" rather than guessing.
    """
