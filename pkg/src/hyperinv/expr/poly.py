"""Sparse multivariate polynomials over Q in expression atoms.

An *atom* is any Expr node treated as an indeterminate: a variable, a
parameter, a function-symbol application, or an ln/exp subtree.  A
monomial is a tuple of (atom, exponent) pairs sorted by the atom's
structural key; a polynomial maps monomials to Fraction coefficients.

GCDs try the integer-evaluation heuristic first (substitute a large
integer for one atom, take the gcd one level down, reconstruct the
coefficients from balanced base-xi digits, verify by exact division) and
fall back to the subresultant polynomial remainder sequence when the
heuristic gives up.  Both routes are exact: the heuristic's answers are
accepted only after the trial divisions succeed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .nodes import Expr

__all__ = ["Poly", "poly_gcd"]

Monomial = tuple  # tuple[tuple[Expr, int], ...]

_EMPTY: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        (ea, ka), (eb, kb) = a[i], b[j]
        ak, bk = ea.sort_key(), eb.sort_key()
        if ak == bk:
            out.append((ea, ka + kb))
            i += 1
            j += 1
        elif ak < bk:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_key(m: Monomial) -> tuple:
    return (sum(k for _, k in m), tuple((e.sort_key(), k) for e, k in m))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        if any(not c for c in terms.values()):
            terms = {m: c for m, c in terms.items() if c}
        self.terms = terms

    @staticmethod
    def zero() -> "Poly":
        return Poly({})

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly({_EMPTY: c}) if c else Poly({})

    @staticmethod
    def atom(e: Expr, k: int = 1) -> "Poly":
        return Poly({((e, k),): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[_EMPTY]

    def atoms(self) -> set:
        out = set()
        for m in self.terms:
            for e, _ in m:
                out.add(e)
        return out

    def degree_in(self, atom: Expr) -> int:
        d = 0
        for m in self.terms:
            for e, k in m:
                if e == atom and k > d:
                    d = k
        return d

    def total_degree(self) -> int:
        return max((sum(k for _, k in m) for m in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    def __add__(self, other: "Poly") -> "Poly":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return Poly(terms)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly({})
        if other.is_const:
            c = other.const_value()
            return Poly({m: cc * c for m, cc in self.terms.items()})
        if self.is_const:
            c = self.const_value()
            return Poly({m: cc * c for m, cc in other.terms.items()})
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                s = terms.get(m)
                if s is None:
                    terms[m] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
        return Poly(terms)

    def scaled(self, c: Fraction) -> "Poly":
        if not c:
            return Poly({})
        return Poly({m: cc * c for m, cc in self.terms.items()})

    def power(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # ---- univariate view in one atom -------------------------------------

    def to_univariate(self, atom: Expr) -> dict:
        """View as a polynomial in `atom` with Poly coefficients."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            k = 0
            rest = []
            for e, d in m:
                if e == atom:
                    k = d
                else:
                    rest.append((e, d))
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly(v) for k, v in out.items()}

    @staticmethod
    def from_univariate(coeffs: dict, atom: Expr) -> "Poly":
        terms: dict = {}
        for k, poly in coeffs.items():
            if k == 0:
                for m, c in poly.terms.items():
                    terms[m] = terms.get(m, Fraction(0)) + c
            else:
                mk = ((atom, k),)
                for m, c in poly.terms.items():
                    mm = _mono_mul(m, mk)
                    terms[mm] = terms.get(mm, Fraction(0)) + c
        return Poly({m: c for m, c in terms.items() if c})

    # ---- exact division ---------------------------------------------------

    def exact_div(self, other: "Poly"):
        """Return self/other if the division is exact, else None."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return Poly({})
        if other.is_const:
            c = other.const_value()
            return Poly({m: cc / c for m, cc in self.terms.items()})
        atom = max(other.atoms(), key=lambda e: e.sort_key())
        num = self.to_univariate(atom)
        den = other.to_univariate(atom)
        db = max(den)
        lead = den[db]
        quotient: dict[int, Poly] = {}
        while num:
            da = max(num)
            if da < db:
                return None
            qc = num[da].exact_div(lead)
            if qc is None:
                return None
            quotient[da - db] = qc
            for k, coeff in den.items():
                kk = k + da - db
                cur = num.get(kk, Poly.zero()) - qc * coeff
                if cur.is_zero:
                    num.pop(kk, None)
                else:
                    num[kk] = cur
        return Poly.from_univariate(quotient, atom)

    # ---- normalization ----------------------------------------------------

    def frac_content(self) -> Fraction:
        """Positive rational c with self = c * (primitive integer poly)."""
        if self.is_zero:
            return Fraction(1)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = int_gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // int_gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def leading_key(self):
        return max(self.terms, key=_mono_key)

    def normalized(self) -> "Poly":
        """Primitive integer coefficients with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.frac_content()
        if self.terms[self.leading_key()] < 0:
            c = -c
        return self.scaled(1 / c)

    def __repr__(self):
        from .printer import to_text

        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                to_text(e) if k == 1 else f"{to_text(e)}^{k}" for e, k in m
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Poly(" + (" + ".join(parts) if parts else "0") + ")"


def _content_of_coeffs(coeffs: dict) -> Poly:
    polys = list(coeffs.values())
    g = polys[0]
    for p in polys[1:]:
        if g.is_const and not g.is_zero:
            break
        g = poly_gcd(g, p)
    return g


def _primitive_uni(coeffs: dict):
    """Split a univariate-view polynomial into (content, primitive part)."""
    if not coeffs:
        return Poly.const(1), coeffs
    cont = _content_of_coeffs(coeffs)
    if cont.is_const:
        cont = Poly.const(1)
        return cont, coeffs
    prim = {k: p.exact_div(cont) for k, p in coeffs.items()}
    return cont, prim


def _pseudo_rem(a: dict, b: dict) -> dict:
    """Exact pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    db = max(b)
    lead_b = b[db]
    rem = dict(a)
    scale_left = max(rem) - db + 1
    while rem:
        dr = max(rem)
        if dr < db:
            break
        lead_r = rem[dr]
        shift = dr - db
        scale_left -= 1
        new: dict[int, Poly] = {}
        for k, c in rem.items():
            new[k] = c * lead_b
        for k, c in b.items():
            kk = k + shift
            cur = new.get(kk, Poly.zero()) - lead_r * c
            new[kk] = cur
        rem = {k: c for k, c in new.items() if not c.is_zero}
    if rem and scale_left > 0:
        scale = lead_b.power(scale_left)
        rem = {k: c * scale for k, c in rem.items()}
    return rem


def _exact_coeff_div(coeffs: dict, divisor: Poly) -> dict:
    out = {}
    for k, c in coeffs.items():
        q = c.exact_div(divisor)
        if q is None:  # pragma: no cover - subresultant divisions are exact
            raise ArithmeticError("inexact division in subresultant sequence")
        out[k] = q
    return out


# ---- heuristic gcd ----------------------------------------------------------

_HEU_TRIES = 6
_HEU_MAX_BITS = 120_000


def _eval_atom(p: Poly, atom: Expr, xi: int) -> Poly:
    terms: dict = {}
    for m, c in p.terms.items():
        k = 0
        rest = []
        for e, d in m:
            if e == atom:
                k = d
            else:
                rest.append((e, d))
        key = tuple(rest)
        terms[key] = terms.get(key, Fraction(0)) + c * xi**k
    return Poly(terms)


def _balanced_digit(p: Poly, xi: int) -> Poly:
    half = xi // 2
    return Poly(
        {m: Fraction(((c.numerator + half) % xi) - half) for m, c in p.terms.items()}
    )


def _interpolate(g: Poly, xi: int, atom: Expr) -> Poly | None:
    out = Poly.zero()
    i = 0
    while not g.is_zero:
        if i > 4000:
            return None
        digit = _balanced_digit(g, xi)
        if not digit.is_zero:
            out = out + (digit * Poly.atom(atom, i) if i else digit)
        g = (g - digit).scaled(Fraction(1, xi))
        if any(c.denominator != 1 for c in g.terms.values()):
            return None  # pragma: no cover - digits are exact by construction
        i += 1
    return out


def _heu_gcd(a: Poly, b: Poly) -> Poly | None:
    """Heuristic gcd of primitive integer polynomials, or None."""
    if a.is_zero or b.is_zero:
        return None
    atoms = a.atoms() | b.atoms()
    if not atoms:
        va = abs(a.const_value().numerator)
        vb = abs(b.const_value().numerator)
        return Poly.const(int_gcd(va, vb))
    atom = min(
        atoms, key=lambda e: (max(a.degree_in(e), b.degree_in(e)), e.sort_key())
    )
    deg = max(a.degree_in(atom), b.degree_in(atom))
    ha = max(abs(c.numerator) for c in a.terms.values())
    hb = max(abs(c.numerator) for c in b.terms.values())
    xi = 2 * min(ha, hb) + 29
    for _ in range(_HEU_TRIES):
        if xi.bit_length() * (deg + 1) > _HEU_MAX_BITS:
            return None
        ea = _eval_atom(a, atom, xi)
        eb = _eval_atom(b, atom, xi)
        if not (ea.is_zero or eb.is_zero):
            g = _heu_gcd(ea, eb)
            if g is not None:
                cand = _interpolate(g, xi, atom)
                if cand is not None and not cand.is_zero:
                    cand = cand.normalized()
                    if (
                        a.exact_div(cand) is not None
                        and b.exact_div(cand) is not None
                    ):
                        return cand
        xi = xi * 73794 // 27011
    return None


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """GCD, primitive with positive leading term (heuristic, then PRS)."""
    if a.is_zero:
        return b.normalized()
    if b.is_zero:
        return a.normalized()
    if a.is_const or b.is_const:
        return Poly.const(1)
    common = a.atoms() & b.atoms()
    if not common:
        return Poly.const(1)
    heu = _heu_gcd(a.normalized(), b.normalized())
    if heu is not None:
        return heu
    atom = min(
        common, key=lambda e: (min(a.degree_in(e), b.degree_in(e)), e.sort_key())
    )
    ua = a.to_univariate(atom)
    ub = b.to_univariate(atom)
    cont_a, ua = _primitive_uni(ua)
    cont_b, ub = _primitive_uni(ub)
    cont = poly_gcd(cont_a, cont_b)
    if max(ua) < max(ub):
        ua, ub = ub, ua
    g = Poly.const(1)
    h = Poly.const(1)
    while True:
        d = max(ua) - max(ub)
        rem = _pseudo_rem(ua, ub)
        if not rem:
            _, pp = _primitive_uni(ub)
            return (Poly.from_univariate(pp, atom) * cont).normalized()
        if max(rem) == 0:
            return cont.normalized()
        rem = _exact_coeff_div(rem, g * h.power(d))
        ua, ub = ub, rem
        g = ua[max(ua)]
        if d == 1:
            h = g
        elif d > 1:
            h = g.power(d).exact_div(h.power(d - 1))
            if h is None:  # pragma: no cover
                raise ArithmeticError("inexact division in subresultant sequence")
