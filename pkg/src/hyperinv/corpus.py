"""Reference corpus: one witness equation per subclass, plus the
functional families whose invariants reduce to prescribed functions.

The functional S2 family (s2_functional) has P = p(t), Q = q(t) and a
basic third invariant

    J2 = -2/(p'(t)*(t+x)) - p''(t)/p'(t)^2 - q'(t)/(p'(t)*q(t)),

so P and Q alone cannot generate J2 when both depend on t only; the
mirror S3 family behaves the same way in x.  These are the stress cases
for the cross-relation checks.
"""

from __future__ import annotations

from .equations import HyperbolicEquation, make_equation

__all__ = [
    "wave",
    "s2_monomial",
    "s3_monomial",
    "s4_polynomial",
    "s5_family",
    "s5_concrete",
    "s6_scaling",
    "s6_euler_poisson",
    "s2_functional",
    "s2_functional_concrete",
    "s3_functional",
    "witnesses",
]


def wave() -> HyperbolicEquation:
    """u_tx = 0 (subclass S1)."""
    return make_equation("0", "0", "0")


def s2_monomial() -> HyperbolicEquation:
    """u_tx = t^2*x^2*u_t + u (subclass S2)."""
    return make_equation("t^2*x^2", "0", "1")


def s3_monomial() -> HyperbolicEquation:
    """u_tx = x^2*u_x + u (subclass S3)."""
    return make_equation("0", "x^2", "1")


def s4_polynomial() -> HyperbolicEquation:
    """u_tx = (t-x)^3*u_x + (t-x)^2*u (subclass S4)."""
    return make_equation("0", "(t-x)^3", "(t-x)^2")


def s5_family() -> HyperbolicEquation:
    """P = lambda, Q = q(x) with symbolic q (subclass S5)."""
    return make_equation(
        "-2*(lambda-1)/(q(x)*(t+x))",
        "1",
        "2*(lambda+(lambda-1)*(t+x))/(q(x)*(t+x)^2)",
    )


def s5_concrete(lam: str = "3") -> HyperbolicEquation:
    """The S5 family with q(x) = x and a numeric lambda (for manifolds)."""
    return make_equation(
        f"-2*({lam}-1)/(x*(t+x))",
        "1",
        f"2*({lam}+({lam}-1)*(t+x))/(x*(t+x)^2)",
    )


def s6_scaling(lam: str = "lambda") -> HyperbolicEquation:
    """u_tx = -t*u_t - lam*x*u_x - lam*t*x*u: P = lam, Q = 0 (subclass S6)."""
    return make_equation(f"-t", f"-{lam}*x", f"-{lam}*t*x")


def s6_euler_poisson(lam: str = "lambda", mu: str = "mu") -> HyperbolicEquation:
    """Euler-Poisson equation with P = lam, Q = mu (subclass S6)."""
    return make_equation(
        f"2/({mu}*(t+x))",
        f"2*{lam}/({mu}*(t+x))",
        f"-4*{lam}/({mu}^2*(t+x)^2)",
    )


def s2_functional() -> HyperbolicEquation:
    """The functional S2 family with symbolic p(t), q(t)."""
    return make_equation(
        "1",
        "2*(p(t)-1)/(q(t)*(t+x))",
        "2*(1-(p(t)-1)*(t+x))/(q(t)*(t+x)^2)",
    )


def s2_functional_concrete(p: str = "t", q: str = "t+2") -> HyperbolicEquation:
    """The functional S2 family specialized to concrete p(t), q(t)."""
    return make_equation(
        "1",
        f"2*(({p})-1)/(({q})*(t+x))",
        f"2*(1-(({p})-1)*(t+x))/(({q})*(t+x)^2)",
    )


def s3_functional() -> HyperbolicEquation:
    """Mirror family with P = p(x), Q = q(x) and L depending on t."""
    return make_equation(
        "-2*(p(x)-1)/(q(x)*(t+x))",
        "1",
        "2*(p(x)+(p(x)-1)*(t+x))/(q(x)*(t+x)^2)",
    )


def witnesses() -> dict:
    """The seven classification witnesses keyed by expected subclass tag."""
    return {
        "S1": wave(),
        "S2": s2_monomial(),
        "S3": s3_monomial(),
        "S4": s4_polynomial(),
        "S5": s5_family(),
        "S6a": s6_scaling(),
        "S6b": s6_euler_poisson(),
    }
