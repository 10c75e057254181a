"""Expression kernel: parsing, printing, calculus, simplification,
numeric evaluation, and identity-zero testing."""

from .calculus import differentiate, free_symbols, function_names, substitute
from .canonical import RationalForm, poly_to_expr, rational_form, simplify, to_expr
from .errors import (
    EvaluationError,
    ExprError,
    IndeterminateZeroTest,
    ParseError,
    SingularEvaluationError,
    SubstitutionError,
    SymbolicDivisionError,
    UnboundSymbolError,
)
from .nodes import (
    Expr,
    ONE,
    T,
    X,
    ZERO,
    add,
    div,
    exp,
    funcsym,
    ipow,
    ln,
    mul,
    neg,
    number,
    parameter,
    sub,
    variable,
)
from .numeric import (
    Binding,
    DEFAULT_POLICY,
    ZeroTestPolicy,
    ZeroTestResult,
    eval_array,
    evaluate,
    evaluate_with_scale,
    is_constant,
    is_identically_zero,
    zero_test,
)
from .parser import parse
from .printer import to_text

__all__ = [
    "Expr",
    "parse",
    "to_text",
    "differentiate",
    "substitute",
    "free_symbols",
    "function_names",
    "simplify",
    "rational_form",
    "RationalForm",
    "poly_to_expr",
    "to_expr",
    "Binding",
    "evaluate",
    "evaluate_with_scale",
    "eval_array",
    "zero_test",
    "is_identically_zero",
    "is_constant",
    "ZeroTestPolicy",
    "ZeroTestResult",
    "DEFAULT_POLICY",
    "number",
    "parameter",
    "variable",
    "funcsym",
    "add",
    "sub",
    "mul",
    "div",
    "ipow",
    "neg",
    "ln",
    "exp",
    "T",
    "X",
    "ZERO",
    "ONE",
    "ExprError",
    "ParseError",
    "EvaluationError",
    "UnboundSymbolError",
    "SingularEvaluationError",
    "SymbolicDivisionError",
    "IndeterminateZeroTest",
    "SubstitutionError",
]
