"""Compact text rendering of expression trees.

Output reparses to an evaluation-equivalent tree: parenthesization follows
the grammar's precedence so ``parse(to_text(e))`` agrees with ``e`` up to
the parser's left-associative shapes.
"""

from __future__ import annotations

from fractions import Fraction

from .nodes import Expr

__all__ = ["to_text"]


def _frac_text(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def _is_negative(e: Expr) -> bool:
    return (e.kind == "num" and e.data < 0) or e.kind == "neg"


def _atom_text(e: Expr) -> str | None:
    if e.kind == "num":
        return _frac_text(e.data)
    if e.kind in ("param", "var"):
        return e.data
    if e.kind == "func":
        name, order, argvar = e.data
        primes = "'" * order
        return f"{name}{primes}({argvar})"
    if e.kind == "ln":
        return f"ln({to_text(e.children[0])})"
    if e.kind == "exp":
        return f"exp({to_text(e.children[0])})"
    return None


def _paren(s: str) -> str:
    return f"({s})"


def _render_factor(e: Expr) -> str:
    """Render e so it can stand as a '*' or '/' operand."""
    atom = _atom_text(e)
    if atom is not None:
        if e.kind == "num" and (e.data < 0 or e.data.denominator != 1):
            return _paren(atom)
        return atom
    if e.kind == "pow":
        return _render_power(e)
    return _paren(to_text(e))


def _render_power(e: Expr) -> str:
    base = e.children[0]
    btext = _atom_text(base)
    if btext is None or (base.kind == "num" and (base.data < 0 or base.data.denominator != 1)):
        btext = _paren(to_text(base))
    k = e.data
    return f"{btext}^{k}"


def _render_term(e: Expr) -> str:
    """Render e so it can stand as a '+'/'-' operand."""
    if e.kind == "mul":
        return "*".join(_render_factor(c) for c in e.children)
    if e.kind == "div":
        a, b = e.children
        left = _render_term(a) if a.kind in ("mul", "div") else _render_factor(a)
        return f"{left}/{_render_factor(b)}"
    if e.kind == "neg":
        inner = e.children[0]
        if inner.kind in ("add", "mul", "div"):
            return "-" + _paren(to_text(inner))
        return "-" + _render_term(inner)
    if e.kind == "num" and e.data < 0:
        return "-" + _frac_text(-e.data)
    return _render_factor(e)


def to_text(e: Expr) -> str:
    if e.kind == "add":
        parts = [_render_term(e.children[0])]
        for c in e.children[1:]:
            if c.kind == "neg":
                inner = c.children[0]
                if inner.kind in ("add", "mul", "div"):
                    parts.append("-" + _paren(to_text(inner)))
                else:
                    parts.append("-" + _render_term(inner))
            elif c.kind == "num" and c.data < 0:
                parts.append("-" + _frac_text(-c.data))
            else:
                parts.append("+" + _render_term(c))
        return "".join(parts)
    return _render_term(e)
