"""Exception types raised by the expression kernel."""

from __future__ import annotations

__all__ = [
    "ExprError",
    "ParseError",
    "EvaluationError",
    "UnboundSymbolError",
    "SingularEvaluationError",
    "SymbolicDivisionError",
    "IndeterminateZeroTest",
    "SubstitutionError",
]


class ExprError(Exception):
    pass


class ParseError(ExprError):
    """Syntax error; carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class EvaluationError(ExprError):
    pass


class UnboundSymbolError(EvaluationError):
    pass


class SingularEvaluationError(EvaluationError):
    """Division by zero or a domain error at this sample point."""


class SymbolicDivisionError(ExprError):
    """Division by an identically-zero expression."""


class IndeterminateZeroTest(ExprError):
    """Too few non-singular samples; the zero test is inconclusive."""


class SubstitutionError(ExprError):
    pass
