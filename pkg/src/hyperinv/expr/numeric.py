"""Numeric evaluation and probabilistic zero testing.

The zero test has a deterministic fast path: if the canonical rational
form has no ln/exp atoms, zero-ness of the numerator polynomial is exact
(function symbols and parameters are algebraically independent
transcendentals).  Otherwise the expression is sampled at random bindings
drawn from [-2,-0.1] u [0.1,2]; a sample counts as zero when |value| is
below tol relative to the largest subterm magnitude met during that
evaluation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .calculus import differentiate, free_symbols
from .canonical import is_rational_in_symbols, rational_form, simplify, to_expr
from .errors import (
    IndeterminateZeroTest,
    SingularEvaluationError,
    SymbolicDivisionError,
    UnboundSymbolError,
)
from .nodes import Expr, ZERO

__all__ = [
    "Binding",
    "ZeroTestPolicy",
    "ZeroTestResult",
    "evaluate",
    "eval_array",
    "zero_test",
    "is_identically_zero",
    "is_constant",
    "DEFAULT_POLICY",
]


@dataclass(frozen=True)
class Binding:
    """Values for variables/parameters (by name) and f^(k) pairs."""

    values: dict
    functions: dict = field(default_factory=dict)

    def lookup_symbol(self, name: str) -> float:
        try:
            return self.values[name]
        except KeyError:
            raise UnboundSymbolError(f"unbound symbol {name!r}") from None

    def lookup_function(self, name: str, order: int) -> float:
        try:
            return self.functions[(name, order)]
        except KeyError:
            raise UnboundSymbolError(f"unbound function value {name!r}^({order})") from None


def _eval_scaled(e: Expr, b: Binding, scale: list) -> float:
    kind = e.kind
    if kind == "num":
        v = float(e.data)
    elif kind in ("param", "var"):
        v = b.lookup_symbol(e.data)
    elif kind == "func":
        name, order, _ = e.data
        v = b.lookup_function(name, order)
    elif kind == "add":
        v = 0.0
        for c in e.children:
            v += _eval_scaled(c, b, scale)
    elif kind == "mul":
        v = 1.0
        for c in e.children:
            v *= _eval_scaled(c, b, scale)
    elif kind == "div":
        numv = _eval_scaled(e.children[0], b, scale)
        denv = _eval_scaled(e.children[1], b, scale)
        if denv == 0.0:
            raise SingularEvaluationError("division by zero")
        v = numv / denv
    elif kind == "pow":
        base = _eval_scaled(e.children[0], b, scale)
        if base == 0.0 and e.data < 0:
            raise SingularEvaluationError("zero raised to a negative power")
        v = base ** e.data
    elif kind == "neg":
        v = -_eval_scaled(e.children[0], b, scale)
    elif kind == "ln":
        arg = _eval_scaled(e.children[0], b, scale)
        if arg <= 0.0:
            raise SingularEvaluationError("ln of a non-positive value")
        v = math.log(arg)
    elif kind == "exp":
        v = math.exp(_eval_scaled(e.children[0], b, scale))
    else:  # pragma: no cover
        raise ValueError(f"unknown node kind {kind!r}")
    if not math.isfinite(v):
        raise SingularEvaluationError("non-finite intermediate value")
    a = abs(v)
    if a > scale[0]:
        scale[0] = a
    return v


def evaluate(e: Expr, b: Binding) -> float:
    """IEEE double value of e under the binding."""
    return _eval_scaled(e, b, [0.0])


def evaluate_with_scale(e: Expr, b: Binding) -> tuple[float, float]:
    scale = [0.0]
    v = _eval_scaled(e, b, scale)
    return v, scale[0]


def eval_array(e: Expr, tval: np.ndarray, xval: np.ndarray) -> np.ndarray:
    """Vectorized evaluation over t/x arrays.

    The expression must be fully instantiated (no parameters or function
    symbols).  Singular points surface as non-finite entries, which
    callers mask; no exception is raised for them.
    """
    kind = e.kind
    if kind == "num":
        return np.broadcast_to(np.float64(float(e.data)), np.broadcast(tval, xval).shape).copy()
    if kind == "var":
        return np.asarray(tval if e.data == "t" else xval, dtype=np.float64).copy()
    if kind in ("param", "func"):
        raise UnboundSymbolError(f"cannot array-evaluate unbound {kind} node")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if kind == "add":
            out = eval_array(e.children[0], tval, xval)
            for c in e.children[1:]:
                out = out + eval_array(c, tval, xval)
            return out
        if kind == "mul":
            out = eval_array(e.children[0], tval, xval)
            for c in e.children[1:]:
                out = out * eval_array(c, tval, xval)
            return out
        if kind == "div":
            return eval_array(e.children[0], tval, xval) / eval_array(e.children[1], tval, xval)
        if kind == "pow":
            base = eval_array(e.children[0], tval, xval)
            return base ** float(e.data)
        if kind == "neg":
            return -eval_array(e.children[0], tval, xval)
        if kind == "ln":
            return np.log(eval_array(e.children[0], tval, xval))
        if kind == "exp":
            return np.exp(eval_array(e.children[0], tval, xval))
    raise ValueError(f"unknown node kind {kind!r}")  # pragma: no cover


@dataclass(frozen=True)
class ZeroTestPolicy:
    """Sampling policy for the probabilistic layer of the zero test."""

    seed: int = 42
    samples: int = 24
    tol: float = 1e-9
    min_good: int = 8
    low: float = 0.1
    high: float = 2.0
    max_draws: int = 400


DEFAULT_POLICY = ZeroTestPolicy()


@dataclass(frozen=True)
class ZeroTestResult:
    is_zero: bool
    method: str  # "symbolic" | "probabilistic"


def _random_binding(rng: random.Random, symbols: list, policy: ZeroTestPolicy) -> Binding:
    values: dict = {}
    functions: dict = {}
    used: list[float] = []
    for sym in symbols:
        while True:
            v = rng.uniform(policy.low, policy.high)
            if rng.random() < 0.5:
                v = -v
            if all(abs(v - u) > 1e-6 for u in used):
                break
        used.append(v)
        if isinstance(sym, tuple):
            functions[sym] = v
        else:
            values[sym] = v
    return Binding(values, functions)


def zero_test(e: Expr, policy: ZeroTestPolicy = DEFAULT_POLICY) -> ZeroTestResult:
    """Decide whether e is identically zero.

    Rational expressions (in the free transcendentals) are decided exactly
    from the canonical numerator.  Expressions containing ln/exp fall back
    to random sampling; raises IndeterminateZeroTest when fewer than
    policy.min_good non-singular samples can be drawn.
    """
    try:
        rf = rational_form(e)
    except SymbolicDivisionError:
        rf = None
    if rf is not None:
        if rf.is_zero:
            return ZeroTestResult(True, "symbolic")
        if is_rational_in_symbols(rf):
            return ZeroTestResult(False, "symbolic")
        e = to_expr(rf)

    variables, params, funcs = free_symbols(e)
    symbols: list = sorted(variables) + sorted(params) + sorted(funcs)
    rng = random.Random(policy.seed)
    good = 0
    draws = 0
    all_zero = True
    while good < policy.samples and draws < policy.max_draws:
        draws += 1
        b = _random_binding(rng, symbols, policy)
        try:
            v, scale = evaluate_with_scale(e, b)
        except SingularEvaluationError:
            continue
        good += 1
        if abs(v) > policy.tol * max(1.0, scale):
            all_zero = False
            break
    if not all_zero:
        return ZeroTestResult(False, "probabilistic")
    if good < policy.min_good:
        raise IndeterminateZeroTest(
            f"only {good} non-singular samples in {draws} draws"
        )
    return ZeroTestResult(True, "probabilistic")


def is_identically_zero(e: Expr, policy: ZeroTestPolicy = DEFAULT_POLICY) -> bool:
    return zero_test(e, policy).is_zero


def is_constant(e: Expr, policy: ZeroTestPolicy = DEFAULT_POLICY) -> Expr | None:
    """The constant value of e (an expression free of t and x), or None.

    e is constant iff both total derivatives vanish identically.  For
    purely rational expressions the returned canonical form is free of t
    and x; with ln/exp atoms a constant-valued expression may still print
    with t or x inside (documented corner, not produced by the corpus).
    """
    if not is_identically_zero(differentiate(e, "t"), policy):
        return None
    if not is_identically_zero(differentiate(e, "x"), policy):
        return None
    return simplify(e)
