"""Immutable expression trees over t, x, named parameters and opaque
function symbols.

Node kinds: rational constant, parameter, variable, function-symbol
application f^(k)(t|x), n-ary sum and product, quotient, integer power,
ln, exp, and negation.  Trees are immutable; every node carries a
precomputed structural hash and sort key so that canonical orderings are
reproducible across processes (no reliance on randomized str hashing).
"""

from __future__ import annotations

import zlib
from fractions import Fraction

__all__ = [
    "Expr",
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
]

VARIABLES = ("t", "x")

_KIND_RANK = {
    "num": 0,
    "param": 1,
    "var": 2,
    "func": 3,
    "add": 4,
    "mul": 5,
    "div": 6,
    "pow": 7,
    "neg": 8,
    "ln": 9,
    "exp": 10,
}

_MASK = (1 << 63) - 1


def _mix(*parts: int) -> int:
    h = 0x345678
    for p in parts:
        h = ((h ^ (p & _MASK)) * 1000003 + 0x9E3779B9) & _MASK
    return h


def _str_code(s: str) -> int:
    return zlib.crc32(s.encode("utf-8"))


class Expr:
    """One node of an immutable expression tree."""

    __slots__ = ("kind", "data", "children", "_hash", "_key")

    def __init__(self, kind: str, data, children: tuple["Expr", ...]):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "children", children)
        if kind == "num":
            dcode: tuple = (data.numerator, data.denominator)
        elif kind in ("param", "var"):
            dcode = (_str_code(data),)
        elif kind == "func":
            name, order, argvar = data
            dcode = (_str_code(name), order, _str_code(argvar))
        elif kind == "pow":
            dcode = (data,)
        else:
            dcode = ()
        h = _mix(_KIND_RANK[kind], *dcode, *(c._hash for c in children))
        object.__setattr__(self, "_hash", h)
        # Sort key: deterministic total order on trees.
        if kind == "num":
            dkey: tuple = (data.numerator, data.denominator)
        elif kind in ("param", "var"):
            dkey = (data,)
        elif kind == "func":
            dkey = data
        elif kind == "pow":
            dkey = (data,)
        else:
            dkey = ()
        key = (_KIND_RANK[kind], dkey, tuple(c._key for c in children))
        object.__setattr__(self, "_key", key)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        if self._hash != other._hash:
            return False
        return (
            self.kind == other.kind
            and self.data == other.data
            and self.children == other.children
        )

    def sort_key(self) -> tuple:
        return self._key

    def __repr__(self) -> str:
        from .printer import to_text

        return f"Expr({to_text(self)!r})"

    # Convenience arithmetic (used heavily when assembling invariants).
    def __add__(self, other) -> "Expr":
        return add(self, as_expr(other))

    def __radd__(self, other) -> "Expr":
        return add(as_expr(other), self)

    def __sub__(self, other) -> "Expr":
        return sub(self, as_expr(other))

    def __rsub__(self, other) -> "Expr":
        return sub(as_expr(other), self)

    def __mul__(self, other) -> "Expr":
        return mul(self, as_expr(other))

    def __rmul__(self, other) -> "Expr":
        return mul(as_expr(other), self)

    def __truediv__(self, other) -> "Expr":
        return div(self, as_expr(other))

    def __rtruediv__(self, other) -> "Expr":
        return div(as_expr(other), self)

    def __pow__(self, k: int) -> "Expr":
        return ipow(self, k)

    def __neg__(self) -> "Expr":
        return neg(self)


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return number(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Expr")


def number(value) -> Expr:
    """Rational constant, stored in lowest terms."""
    return Expr("num", Fraction(value), ())


def parameter(name: str) -> Expr:
    return Expr("param", name, ())


def variable(name: str) -> Expr:
    if name not in VARIABLES:
        raise ValueError(f"variable must be one of {VARIABLES}, got {name!r}")
    return Expr("var", name, ())


def funcsym(name: str, order: int, argvar: str) -> Expr:
    """Application f^(order)(argvar) of an opaque function symbol."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if argvar not in VARIABLES:
        raise ValueError(f"function argument must be one of {VARIABLES}")
    return Expr("func", (name, order, argvar), ())


def add(*terms) -> Expr:
    """n-ary sum; nested sums are flattened."""
    flat: list[Expr] = []
    for e in terms:
        e = as_expr(e)
        if e.kind == "add":
            flat.extend(e.children)
        else:
            flat.append(e)
    if not flat:
        return ZERO
    if len(flat) == 1:
        return flat[0]
    return Expr("add", None, tuple(flat))


def sub(a, b) -> Expr:
    return add(as_expr(a), neg(as_expr(b)))


def mul(*factors) -> Expr:
    """n-ary product; nested products are flattened."""
    flat: list[Expr] = []
    for e in factors:
        e = as_expr(e)
        if e.kind == "mul":
            flat.extend(e.children)
        else:
            flat.append(e)
    if not flat:
        return ONE
    if len(flat) == 1:
        return flat[0]
    return Expr("mul", None, tuple(flat))


def div(a, b) -> Expr:
    return Expr("div", None, (as_expr(a), as_expr(b)))


def ipow(base, exponent: int) -> Expr:
    if not isinstance(exponent, int):
        raise TypeError("exponent must be an integer")
    return Expr("pow", exponent, (as_expr(base),))


def neg(a) -> Expr:
    a = as_expr(a)
    if a.kind == "num":
        return number(-a.data)
    if a.kind == "neg":
        return a.children[0]
    return Expr("neg", None, (a,))


def ln(a) -> Expr:
    return Expr("ln", None, (as_expr(a),))


def exp(a) -> Expr:
    return Expr("exp", None, (as_expr(a),))


T = variable("t")
X = variable("x")
ZERO = number(0)
ONE = number(1)
