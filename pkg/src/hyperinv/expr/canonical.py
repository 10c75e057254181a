"""Canonical rational form and simplification.

Every expression is rewritten as a single quotient num/den of expanded
polynomials in its atoms (variables, parameters, function symbols, and
ln/exp subtrees with canonicalized arguments).  The pair is reduced by a
polynomial GCD and the denominator is normalized to a primitive integer
polynomial with positive leading coefficient, which makes the form unique
and `simplify` idempotent.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SymbolicDivisionError
from .nodes import Expr, ONE, ZERO, add, div, ipow, mul, neg, number
from .nodes import exp as exp_node
from .nodes import ln as ln_node
from .poly import Poly, poly_gcd

__all__ = ["RationalForm", "rational_form", "simplify", "is_rational_in_symbols"]


class RationalForm:
    """Reduced num/den polynomial pair; den is primitive with positive lead."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero:
            raise SymbolicDivisionError("division by identically zero expression")
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalForm)
            and self.num == other.num
            and self.den == other.den
        )

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def atoms(self) -> set:
        return self.num.atoms() | self.den.atoms()


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero:
        return num, Poly.const(1)
    if not den.is_const and not num.is_const:
        g = poly_gcd(num, den)
        if not g.is_const:
            num = num.exact_div(g)
            den = den.exact_div(g)
    return _normalize_scale(num, den)


def _normalize_scale(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Make den a primitive integer polynomial with positive lead."""
    c = den.frac_content()
    if den.terms[den.leading_key()] < 0:
        c = -c
    if c != 1:
        num = num.scaled(1 / c)
        den = den.scaled(1 / c)
    return num, den


def _coprime(num: Poly, den: Poly) -> RationalForm:
    """Wrap a pair known to be reduced; only the scale gets normalized."""
    if num.is_zero:
        return RationalForm(num, Poly.const(1), reduce=False)
    num, den = _normalize_scale(num, den)
    rf = RationalForm(num, den, reduce=False)
    return rf


def _rf_add(a: RationalForm, b: RationalForm) -> RationalForm:
    """Sum with small-piece cancellation: common factors of a sum live in
    gcd(D1, D2), and the residual reduction only needs gcd(num, g)."""
    if a.num.is_zero:
        return b
    if b.num.is_zero:
        return a
    if a.den == b.den:
        return RationalForm(a.num + b.num, a.den)
    if a.den.is_const or b.den.is_const:
        return _coprime(a.num * b.den + b.num * a.den, a.den * b.den)
    g = poly_gcd(a.den, b.den)
    if g.is_const:
        return _coprime(a.num * b.den + b.num * a.den, a.den * b.den)
    d1 = a.den.exact_div(g)
    d2 = b.den.exact_div(g)
    num = a.num * d2 + b.num * d1
    if num.is_zero:
        return RationalForm(num, Poly.const(1), reduce=False)
    h = poly_gcd(num, g)
    if not h.is_const:
        num = num.exact_div(h)
        g = g.exact_div(h)
    return _coprime(num, g * d1 * d2)


def _rf_mul(a: RationalForm, b: RationalForm) -> RationalForm:
    """Product with cross-reduction, so the result is already coprime."""
    n1, d1 = a.num, a.den
    n2, d2 = b.num, b.den
    if not n1.is_zero and not d2.is_const and not n1.is_const:
        g = poly_gcd(n1, d2)
        if not g.is_const:
            n1 = n1.exact_div(g)
            d2 = d2.exact_div(g)
    if not n2.is_zero and not d1.is_const and not n2.is_const:
        g = poly_gcd(n2, d1)
        if not g.is_const:
            n2 = n2.exact_div(g)
            d1 = d1.exact_div(g)
    return _coprime(n1 * n2, d1 * d2)


def _rf_div(a: RationalForm, b: RationalForm) -> RationalForm:
    if b.num.is_zero:
        raise SymbolicDivisionError("division by identically zero expression")
    inv = _coprime(b.den, b.num)
    return _rf_mul(a, inv)


def _rf_pow(a: RationalForm, k: int) -> RationalForm:
    if k == 0:
        return RationalForm(Poly.const(1), Poly.const(1), reduce=False)
    if k > 0:
        # num/den already coprime, and primitivity survives powers, so the
        # powered pair needs no second reduction.
        return RationalForm(a.num.power(k), a.den.power(k), reduce=False)
    if a.num.is_zero:
        raise SymbolicDivisionError("zero raised to a negative power")
    return RationalForm(a.den.power(-k), a.num.power(-k))


_CACHE: dict[Expr, RationalForm] = {}
_CACHE_LIMIT = 200_000


def rational_form(e: Expr) -> RationalForm:
    """Canonical num/den pair of e (raises SymbolicDivisionError on 1/0)."""
    cached = _CACHE.get(e)
    if cached is not None:
        return cached
    kind = e.kind
    if kind == "num":
        rf = RationalForm(Poly.const(e.data), Poly.const(1), reduce=False)
    elif kind in ("param", "var", "func"):
        rf = RationalForm(Poly.atom(e), Poly.const(1), reduce=False)
    elif kind == "add":
        acc = rational_form(e.children[0])
        for c in e.children[1:]:
            acc = _rf_add(acc, rational_form(c))
        rf = acc
    elif kind == "mul":
        acc = rational_form(e.children[0])
        for c in e.children[1:]:
            acc = _rf_mul(acc, rational_form(c))
        rf = acc
    elif kind == "div":
        rf = _rf_div(rational_form(e.children[0]), rational_form(e.children[1]))
    elif kind == "pow":
        rf = _rf_pow(rational_form(e.children[0]), e.data)
    elif kind == "neg":
        inner = rational_form(e.children[0])
        rf = RationalForm(-inner.num, inner.den, reduce=False)
    elif kind == "ln":
        arg = simplify(e.children[0])
        if arg == ONE:
            rf = RationalForm(Poly.const(0), Poly.const(1), reduce=False)
        else:
            rf = RationalForm(Poly.atom(ln_node(arg)), Poly.const(1), reduce=False)
    elif kind == "exp":
        arg = simplify(e.children[0])
        if arg == ZERO:
            rf = RationalForm(Poly.const(1), Poly.const(1), reduce=False)
        else:
            rf = RationalForm(Poly.atom(exp_node(arg)), Poly.const(1), reduce=False)
    else:  # pragma: no cover
        raise ValueError(f"unknown node kind {kind!r}")
    if len(_CACHE) > _CACHE_LIMIT:
        _CACHE.clear()
    _CACHE[e] = rf
    return rf


def _monomial_expr(m, coef: Fraction) -> Expr:
    factors: list[Expr] = []
    if coef != 1 or not m:
        factors.append(number(coef))
    for atom, k in m:
        factors.append(atom if k == 1 else ipow(atom, k))
    return mul(*factors)


def _display_sorted(p: Poly) -> list:
    """Monomials in graded lexicographic order, largest first."""
    atoms = sorted(p.atoms(), key=lambda a: a.sort_key())
    index = {a: i for i, a in enumerate(atoms)}

    def dense(m):
        vec = [0] * len(atoms)
        total = 0
        for a, k in m:
            vec[index[a]] = k
            total += k
        return (total, tuple(vec))

    return sorted(p.terms, key=dense, reverse=True)


def poly_to_expr(p: Poly) -> Expr:
    if p.is_zero:
        return ZERO
    terms = []
    for m in _display_sorted(p):
        c = p.terms[m]
        if c < 0:
            terms.append(neg(_monomial_expr(m, -c)))
        else:
            terms.append(_monomial_expr(m, c))
    return add(*terms)


def to_expr(rf: RationalForm) -> Expr:
    if rf.den.is_const and rf.den.const_value() == 1:
        return poly_to_expr(rf.num)
    if len(rf.num.terms) == 1 and next(iter(rf.num.terms.values())) < 0:
        return neg(div(poly_to_expr(-rf.num), poly_to_expr(rf.den)))
    return div(poly_to_expr(rf.num), poly_to_expr(rf.den))


def simplify(e: Expr) -> Expr:
    """Canonical form of e; leaves e unchanged if a subterm divides by an
    identically-zero expression (evaluation is singular everywhere there)."""
    try:
        return to_expr(rational_form(e))
    except SymbolicDivisionError:
        return e


def is_rational_in_symbols(rf: RationalForm) -> bool:
    """True iff no ln/exp atoms appear, so polynomial zero-ness is exact."""
    return all(a.kind in ("param", "var", "func") for a in rf.atoms())
