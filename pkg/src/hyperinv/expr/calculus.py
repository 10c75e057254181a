"""Symbolic differentiation and substitution."""

from __future__ import annotations

from .errors import SubstitutionError
from .nodes import (
    Expr,
    ZERO,
    ONE,
    add,
    div,
    exp,
    funcsym,
    ipow,
    ln,
    mul,
    neg,
    number,
    variable,
)

__all__ = ["differentiate", "substitute", "free_symbols"]


def differentiate(e: Expr, v: str) -> Expr:
    """Exact derivative of e with respect to variable v ('t' or 'x').

    d/dv of f^(k)(v) is f^(k+1)(v); the derivative with respect to the
    other variable is 0.  The result is not simplified.
    """
    if v not in ("t", "x"):
        raise ValueError("differentiation variable must be 't' or 'x'")
    kind = e.kind
    if kind in ("num", "param"):
        return ZERO
    if kind == "var":
        return ONE if e.data == v else ZERO
    if kind == "func":
        name, order, argvar = e.data
        return funcsym(name, order + 1, argvar) if argvar == v else ZERO
    if kind == "add":
        return add(*(differentiate(c, v) for c in e.children))
    if kind == "neg":
        return neg(differentiate(e.children[0], v))
    if kind == "mul":
        terms = []
        kids = e.children
        for i, c in enumerate(kids):
            dc = differentiate(c, v)
            if dc == ZERO:
                continue
            terms.append(mul(*kids[:i], dc, *kids[i + 1 :]))
        return add(*terms) if terms else ZERO
    if kind == "div":
        a, b = e.children
        da, db = differentiate(a, v), differentiate(b, v)
        return div(add(mul(da, b), neg(mul(a, db))), ipow(b, 2))
    if kind == "pow":
        k = e.data
        if k == 0:
            return ZERO
        base = e.children[0]
        dbase = differentiate(base, v)
        if dbase == ZERO:
            return ZERO
        return mul(number(k), ipow(base, k - 1), dbase)
    if kind == "ln":
        u = e.children[0]
        return div(differentiate(u, v), u)
    if kind == "exp":
        u = e.children[0]
        return mul(differentiate(u, v), e)
    raise ValueError(f"unknown node kind {kind!r}")  # pragma: no cover


def free_symbols(e: Expr) -> tuple[set[str], set[str], set[tuple[str, int]]]:
    """Free (variables, parameters, function-symbol/order pairs) of e."""
    variables: set[str] = set()
    params: set[str] = set()
    funcs: set[tuple[str, int]] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if node.kind == "var":
            variables.add(node.data)
        elif node.kind == "param":
            params.add(node.data)
        elif node.kind == "func":
            name, order, _ = node.data
            funcs.add((name, order))
        stack.extend(node.children)
    return variables, params, funcs


def function_names(e: Expr) -> set[str]:
    return {name for name, _ in free_symbols(e)[2]}


def substitute(
    e: Expr,
    variables: dict[str, Expr] | None = None,
    params: dict[str, Expr] | None = None,
    functions: dict[str, Expr] | None = None,
) -> Expr:
    """Replace symbols in e.

    variables: maps 't'/'x' to replacement expressions.  Substituting a
      non-variable expression for v is rejected when some f^(k)(v) appears,
      since f composed with a general expression is not representable.
    params: maps parameter names to expressions.
    functions: maps a function-symbol name to a concrete expression in a
      single variable; f^(k)(w) becomes the k-th derivative of that
      expression, written in w.  The replacement must not itself contain
      function symbols.
    """
    variables = variables or {}
    params = params or {}
    functions = functions or {}
    fn_cache: dict[tuple[str, int, str], Expr] = {}

    def fn_value(name: str, order: int, argvar: str) -> Expr:
        key = (name, order, argvar)
        got = fn_cache.get(key)
        if got is not None:
            return got
        body = functions[name]
        fvars, _, ffuncs = free_symbols(body)
        if ffuncs:
            raise SubstitutionError(
                f"replacement for {name!r} must not contain function symbols"
            )
        if len(fvars) > 1:
            raise SubstitutionError(
                f"replacement for {name!r} must use a single variable"
            )
        homevar = next(iter(fvars)) if fvars else argvar
        for _ in range(order):
            body = differentiate(body, homevar)
        if homevar != argvar:
            body = substitute(body, variables={homevar: variable(argvar)})
        fn_cache[key] = body
        return body

    def walk(node: Expr) -> Expr:
        kind = node.kind
        if kind == "num":
            return node
        if kind == "var":
            return variables.get(node.data, node)
        if kind == "param":
            return params.get(node.data, node)
        if kind == "func":
            name, order, argvar = node.data
            if name in functions:
                body = fn_value(name, order, argvar)
                repl = variables.get(argvar)
                if repl is not None:
                    body = substitute(body, variables={argvar: repl})
                return body
            repl = variables.get(argvar)
            if repl is None:
                return node
            if repl.kind == "var":
                return funcsym(name, order, repl.data)
            raise SubstitutionError(
                f"cannot substitute {argvar} -> non-variable inside {name}(...)"
            )
        kids = tuple(walk(c) for c in node.children)
        if kids == node.children:
            return node
        if kind == "add":
            return add(*kids)
        if kind == "mul":
            return mul(*kids)
        if kind == "div":
            return div(*kids)
        if kind == "pow":
            return ipow(kids[0], node.data)
        if kind == "neg":
            return neg(kids[0])
        if kind == "ln":
            return ln(kids[0])
        if kind == "exp":
            return exp(kids[0])
        raise ValueError(f"unknown node kind {kind!r}")  # pragma: no cover

    return walk(e)
