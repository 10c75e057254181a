"""Hyperbolic-equation data model and equivalence-preserving transformations.

An equation is the triple of coefficients (T, X, U) in

    u_tx = T(t,x)*u_t + X(t,x)*u_x + U(t,x)*u.

Two transformations stay inside the class and preserve contact
equivalence: the gauge scaling u = c(t,x)*v and the reparametrization
(t, x) -> (f(t), g(x)) (optionally composed with the t<->x swap).

Gauge coefficient formulas, derived once by substituting u = c*v and
collecting v_t, v_x, v terms:

    c*v_tx + c_t*v_x + c_x*v_t + c_tx*v
        = T*(c_t*v + c*v_t) + X*(c_x*v + c*v_x) + U*c*v
    =>  Tbar = T - c_x/c
        Xbar = X - c_t/c
        Ubar = U + T*c_t/c + X*c_x/c - c_tx/c

Both Laplace invariants are unchanged by the gauge scaling, which the
test suite checks symbolically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .expr import (
    Expr,
    differentiate,
    div,
    free_symbols,
    is_identically_zero,
    parse,
    simplify,
    substitute,
    sub,
    to_text,
    variable,
    ZeroTestPolicy,
    DEFAULT_POLICY,
)

__all__ = [
    "HyperbolicEquation",
    "make_equation",
    "gauge_transform",
    "reparametrize",
    "swap_variables",
    "equation_from_json",
    "equation_to_json",
    "UndeclaredSymbolError",
    "InverseCheckError",
]


class UndeclaredSymbolError(ValueError):
    pass


class InverseCheckError(ValueError):
    pass


@dataclass(frozen=True)
class HyperbolicEquation:
    """Coefficients of u_tx = T*u_t + X*u_x + U*u plus declared symbols."""

    T: Expr
    X: Expr
    U: Expr
    parameters: dict = field(default_factory=dict)  # name -> float | None
    functions: frozenset = frozenset()

    def coefficients(self) -> tuple[Expr, Expr, Expr]:
        return (self.T, self.X, self.U)

    def with_coefficients(self, T: Expr, X: Expr, U: Expr) -> "HyperbolicEquation":
        return HyperbolicEquation(T, X, U, dict(self.parameters), self.functions)

    def substituted(self) -> "HyperbolicEquation":
        """Fold assigned parameter values into the coefficients."""
        assigned = {
            name: _number_expr(value)
            for name, value in self.parameters.items()
            if value is not None
        }
        if not assigned:
            return self
        remaining = {n: v for n, v in self.parameters.items() if v is None}
        return HyperbolicEquation(
            simplify(substitute(self.T, params=assigned)),
            simplify(substitute(self.X, params=assigned)),
            simplify(substitute(self.U, params=assigned)),
            remaining,
            self.functions,
        )


def _number_expr(value) -> Expr:
    from fractions import Fraction

    from .expr import number

    return number(Fraction(value).limit_denominator(10**12) if isinstance(value, float) else value)


def make_equation(
    T: Expr | str,
    X: Expr | str,
    U: Expr | str,
    parameters: dict | None = None,
    functions: set | None = None,
) -> HyperbolicEquation:
    """Build an equation record, validating the free symbols.

    When parameters/functions are omitted they are inferred from the
    coefficient expressions; when given explicitly, any undeclared symbol
    is an error.
    """
    T = parse(T) if isinstance(T, str) else T
    X = parse(X) if isinstance(X, str) else X
    U = parse(U) if isinstance(U, str) else U
    seen_params: set[str] = set()
    seen_funcs: set[str] = set()
    for e in (T, X, U):
        _, params, funcs = free_symbols(e)
        seen_params |= params
        seen_funcs |= {name for name, _ in funcs}
    if parameters is None and functions is None:
        parameters = {name: None for name in sorted(seen_params)}
        functions = seen_funcs
    else:
        parameters = dict(parameters or {})
        functions = set(functions or ())
        undeclared = (seen_params - parameters.keys()) | (seen_funcs - functions)
        if undeclared:
            raise UndeclaredSymbolError(
                f"undeclared symbols: {', '.join(sorted(undeclared))}"
            )
    overlap = parameters.keys() & functions
    if overlap:
        raise UndeclaredSymbolError(
            f"names declared both parameter and function: {', '.join(sorted(overlap))}"
        )
    return HyperbolicEquation(T, X, U, parameters, frozenset(functions))


def gauge_transform(
    eq: HyperbolicEquation, c: Expr | str, policy: ZeroTestPolicy = DEFAULT_POLICY
) -> HyperbolicEquation:
    """Equation satisfied by v where u = c(t,x)*v (see module docstring)."""
    c = parse(c) if isinstance(c, str) else c
    if is_identically_zero(c, policy):
        raise ValueError("gauge factor is identically zero")
    ct = differentiate(c, "t")
    cx = differentiate(c, "x")
    ctx = differentiate(ct, "x")
    Tb = simplify(sub(eq.T, div(cx, c)))
    Xb = simplify(sub(eq.X, div(ct, c)))
    Ub = simplify(eq.U + eq.T * div(ct, c) + eq.X * div(cx, c) - div(ctx, c))
    _, cparams, cfuncs = free_symbols(c)
    params = dict(eq.parameters)
    for name in cparams:
        params.setdefault(name, None)
    functions = set(eq.functions) | {name for name, _ in cfuncs}
    return HyperbolicEquation(Tb, Xb, Ub, params, frozenset(functions))


def swap_variables(eq: HyperbolicEquation) -> HyperbolicEquation:
    """Rename t <-> x; coefficients (T, X, U) become (X, T, U) composed
    with the swap, and the Laplace invariants H, K trade places."""
    t, x = variable("t"), variable("x")
    swap = {"t": x, "x": t}
    return eq.with_coefficients(
        simplify(substitute(eq.X, variables=swap)),
        simplify(substitute(eq.T, variables=swap)),
        simplify(substitute(eq.U, variables=swap)),
    )


def reparametrize(
    eq: HyperbolicEquation,
    f: Expr | str,
    g: Expr | str,
    f_inv: Expr | str,
    g_inv: Expr | str,
    swap: bool = False,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
) -> HyperbolicEquation:
    """Equation in coordinates (f(t), g(x)).

    f_inv and g_inv are the caller-supplied functional inverses; the pair
    is checked by requiring f(f_inv(t)) - t == 0 and g(g_inv(x)) - x == 0.
    With swap=True the variables are exchanged first, realizing the
    t <-> x renaming inside the same call.
    """
    f = parse(f) if isinstance(f, str) else f
    g = parse(g) if isinstance(g, str) else g
    f_inv = parse(f_inv) if isinstance(f_inv, str) else f_inv
    g_inv = parse(g_inv) if isinstance(g_inv, str) else g_inv
    if swap:
        eq = swap_variables(eq)
    t, x = variable("t"), variable("x")
    fvars = free_symbols(f)[0]
    gvars = free_symbols(g)[0]
    if not fvars <= {"t"}:
        raise ValueError("f must depend only on t")
    if not gvars <= {"x"}:
        raise ValueError("g must depend only on x")
    fp = simplify(differentiate(f, "t"))
    gp = simplify(differentiate(g, "x"))
    if is_identically_zero(fp, policy) or is_identically_zero(gp, policy):
        raise ValueError("f and g must have non-vanishing derivatives")
    fifi = substitute(f, variables={"t": f_inv})
    gigi = substitute(g, variables={"x": g_inv})
    if not is_identically_zero(sub(fifi, t), policy):
        raise InverseCheckError("f(f_inv(t)) - t is not identically zero")
    if not is_identically_zero(sub(gigi, x), policy):
        raise InverseCheckError("g(g_inv(x)) - x is not identically zero")

    compose = {"t": f_inv, "x": g_inv}

    def push(expr: Expr) -> Expr:
        return simplify(substitute(expr, variables=compose))

    Tb = push(div(eq.T, gp))
    Xb = push(div(eq.X, fp))
    Ub = push(div(eq.U, fp * gp))
    return eq.with_coefficients(Tb, Xb, Ub)


# ---- JSON document interface ------------------------------------------------


def equation_from_json(doc: str | dict) -> HyperbolicEquation:
    """Read {"T": expr, "X": expr, "U": expr, "params": {...},
    "functions": [...]}; params values may be numbers or null."""
    data = json.loads(doc) if isinstance(doc, str) else doc
    missing = {"T", "X", "U"} - data.keys()
    if missing:
        raise UndeclaredSymbolError(f"equation document lacks {sorted(missing)}")
    params = {
        str(name): (None if value is None else float(value))
        for name, value in (data.get("params") or {}).items()
    }
    functions = {str(name) for name in data.get("functions") or ()}
    return make_equation(
        str(data["T"]),
        str(data["X"]),
        str(data["U"]),
        parameters=params,
        functions=functions,
    )


def equation_to_json(eq: HyperbolicEquation) -> dict:
    doc: dict = {
        "T": to_text(eq.T),
        "X": to_text(eq.X),
        "U": to_text(eq.U),
    }
    if eq.parameters:
        doc["params"] = dict(sorted(eq.parameters.items()))
    if eq.functions:
        doc["functions"] = sorted(eq.functions)
    return doc
