"""Recursive-descent parser for the expression language.

Grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := number | name | name '(' ('t'|'x') ')' | '(' expr ')'
            | '-' factor | 'ln' '(' expr ')' | 'exp' '(' expr ')'

Names not followed by '(' are parameters; 't' and 'x' are the variables;
primes on applied names (p', p'') denote formal derivatives.  Number
literals may be integers or decimals and become exact rationals.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .nodes import (
    Expr,
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
    VARIABLES,
)

__all__ = ["parse"]

_OPERATORS = "+-*/^()"


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind  # "num" | "name" | "op" | "end"
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPERATORS:
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE" and (
                j + 1 < n and (text[j + 1].isdigit() or text[j + 1] in "+-" and j + 2 < n and text[j + 2].isdigit())
            ):
                j += 2 if text[j + 1] in "+-" else 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(_Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            while j < n and text[j] == "'":
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unknown operator {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


def _number_value(tok: _Token) -> Fraction:
    text = tok.text
    mantissa, exp10 = text, 0
    for e in "eE":
        if e in text:
            mantissa, exppart = text.split(e, 1)
            exp10 = int(exppart)
            break
    if mantissa.count(".") > 1:
        raise ParseError(f"malformed number {text!r}", tok.pos)
    if "." in mantissa:
        whole, frac = mantissa.split(".")
        value = Fraction(int(whole or "0")) + Fraction(int(frac or "0"), 10 ** len(frac))
    else:
        value = Fraction(int(mantissa))
    if exp10 >= 0:
        return value * 10**exp10
    return value / 10**-exp10


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.pos)
        return self.advance()

    def parse_expr(self) -> Expr:
        e = self.parse_term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.parse_term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def parse_term(self) -> Expr:
        e = self.parse_factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            rhs = self.parse_factor()
            e = mul(e, rhs) if op == "*" else div(e, rhs)
        return e

    def parse_factor(self) -> Expr:
        base = self.parse_base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            sign = 1
            if self.peek().kind == "op" and self.peek().text in "+-":
                if self.advance().text == "-":
                    sign = -1
            tok = self.peek()
            if tok.kind != "num":
                raise ParseError("expected integer exponent after '^'", tok.pos)
            value = _number_value(tok)
            if value.denominator != 1:
                raise ParseError(f"non-integer exponent {tok.text!r}", tok.pos)
            self.advance()
            return ipow(base, sign * value.numerator)
        return base

    def parse_base(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return number(_number_value(tok))
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return neg(self.parse_factor())
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.parse_expr()
            self.expect_op(")")
            return e
        if tok.kind == "name":
            self.advance()
            name = tok.text.rstrip("'")
            order = len(tok.text) - len(name)
            applied = self.peek().kind == "op" and self.peek().text == "("
            if name in ("ln", "exp"):
                if order:
                    raise ParseError(f"{name} cannot carry primes", tok.pos)
                self.expect_op("(")
                arg = self.parse_expr()
                self.expect_op(")")
                return ln(arg) if name == "ln" else exp(arg)
            if applied:
                if name in VARIABLES:
                    raise ParseError(f"variable {name!r} cannot be applied", tok.pos)
                self.expect_op("(")
                argtok = self.peek()
                if argtok.kind != "name" or argtok.text not in VARIABLES:
                    raise ParseError("function argument must be t or x", argtok.pos)
                self.advance()
                self.expect_op(")")
                return funcsym(name, order, argtok.text)
            if order:
                raise ParseError(
                    f"primed name {tok.text!r} must be applied to a variable", tok.pos
                )
            if name in VARIABLES:
                return variable(name)
            return parameter(name)
        raise ParseError(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input", tok.pos)


def parse(text: str) -> Expr:
    p = _Parser(text)
    e = p.parse_expr()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected trailing {tok.text!r}", tok.pos)
    return e
