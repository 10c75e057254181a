"""Six-way contact-invariant classification.

Decision tree (each predicate is an identity test on the sampled
coefficient field):

    H == 0 and K == 0        -> S1   (contact equivalent to u_tx = 0)
    exactly one of H,K == 0  -> swap t <-> x so that H != 0
    P_t != 0                 -> S2
    P_x != 0                 -> S3
    Q_t != 0                 -> S4   (P constant from here on)
    Q_x != 0                 -> S5
    otherwise                -> S6   (P, Q both constant)

Equations in S1 are equivalent to the wave equation; equations in S6 are
equivalent to one of the two canonical constant-invariant equations with
the same (P, Q).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .equations import HyperbolicEquation, make_equation, swap_variables
from .expr import (
    DEFAULT_POLICY,
    Expr,
    IndeterminateZeroTest,
    ZeroTestPolicy,
    differentiate,
    is_constant,
    simplify,
    to_text,
    zero_test,
)
from .invariants import (
    InvariantFrame,
    build_frame,
    laplace_invariants,
    ovsiannikov_invariants,
)

__all__ = [
    "Subclass",
    "ClassificationReport",
    "ClassificationError",
    "classify",
    "canonical_form",
]


class Subclass(str, Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    S5 = "S5"
    S6 = "S6"


class ClassificationError(RuntimeError):
    """A zero test came back indeterminate; no subclass was assigned."""

    def __init__(self, predicate: str, detail: str):
        super().__init__(f"classification failed at predicate {predicate}: {detail}")
        self.predicate = predicate


@dataclass(frozen=True)
class ClassificationReport:
    subclass: Subclass
    frame: InvariantFrame
    decisions: tuple  # of (predicate, verdict, method)
    swapped: bool
    equation: HyperbolicEquation  # post-substitution, post-swap equation

    def to_json_dict(self) -> dict:
        invariants = {
            name: to_text(expr)
            for name, expr in self.frame.named_invariants().items()
        }
        return {
            "subclass": self.subclass.value,
            "swapped": self.swapped,
            "invariants": invariants,
            "decisions": [
                {"predicate": p, "verdict": v, "method": m}
                for p, v, m in self.decisions
            ],
        }


def _tested(e: Expr, predicate: str, decisions: list, policy: ZeroTestPolicy) -> bool:
    try:
        result = zero_test(e, policy)
    except IndeterminateZeroTest as exc:
        decisions.append((predicate, "indeterminate", "probabilistic"))
        raise ClassificationError(predicate, str(exc)) from exc
    decisions.append((predicate, "zero" if result.is_zero else "nonzero", result.method))
    return result.is_zero


def classify(
    eq: HyperbolicEquation, policy: ZeroTestPolicy = DEFAULT_POLICY
) -> ClassificationReport:
    """Classify the equation, producing its invariant frame.

    Parameters carrying assigned numeric values are substituted first;
    unassigned parameters act as generic nonzero constants.  When H == 0
    but K != 0 the variables are renamed so that H != 0, and the renaming
    is recorded in the report.
    """
    work = eq.substituted()
    decisions: list = []
    H, K = laplace_invariants(work)
    h_zero = _tested(H, "H==0", decisions, policy)
    k_zero = _tested(K, "K==0", decisions, policy)
    if h_zero and k_zero:
        frame = InvariantFrame(Subclass.S1.value, H, K, None, None, {}, None, None)
        return ClassificationReport(
            Subclass.S1, frame, tuple(decisions), False, work
        )
    swapped = False
    if h_zero:
        swapped = True
        decisions.append(("swap t<->x", "applied", "symbolic"))
        work = swap_variables(work)
        H, K = laplace_invariants(work)
    P, Q = ovsiannikov_invariants(work, H, K)
    if not _tested(differentiate(P, "t"), "P_t==0", decisions, policy):
        tag = Subclass.S2
    elif not _tested(differentiate(P, "x"), "P_x==0", decisions, policy):
        tag = Subclass.S3
    elif not _tested(differentiate(Q, "t"), "Q_t==0", decisions, policy):
        tag = Subclass.S4
    elif not _tested(differentiate(Q, "x"), "Q_x==0", decisions, policy):
        tag = Subclass.S5
    else:
        tag = Subclass.S6
    frame = build_frame(tag.value, H, K, P, Q)
    return ClassificationReport(tag, frame, tuple(decisions), swapped, work)


def canonical_form(
    report: ClassificationReport, policy: ZeroTestPolicy = DEFAULT_POLICY
) -> HyperbolicEquation | None:
    """Canonical equivalent equation for S1 and S6 reports.

    S1 maps to the wave equation.  An S6 equation with Q == 0 maps to
    u_tx = -t*u_t - P*x*u_x - P*t*x*u; with Q != 0 to the Euler-Poisson
    equation with (lambda, mu) = (P, Q).
    """
    if report.subclass == Subclass.S1:
        return make_equation("0", "0", "0")
    if report.subclass != Subclass.S6:
        raise ValueError(
            f"no canonical form in scope for subclass {report.subclass.value}"
        )
    lam = is_constant(report.frame.P, policy)
    mu = is_constant(report.frame.Q, policy)
    if lam is None or mu is None:  # pragma: no cover - S6 guarantees constancy
        raise ClassificationError("canonical_form", "P or Q not constant on an S6 report")
    from .expr import T as t_var
    from .expr import X as x_var
    from .expr import div, ipow, mul, neg, number

    if zero_test(mu, policy).is_zero:
        T = neg(t_var)
        Xc = simplify(neg(mul(lam, x_var)))
        U = simplify(neg(mul(lam, t_var, x_var)))
        return make_equation(T, Xc, U)
    s = t_var + x_var
    T = simplify(div(number(2), mul(mu, s)))
    Xc = simplify(div(mul(number(2), lam), mul(mu, s)))
    U = simplify(neg(div(mul(number(4), lam), mul(ipow(mu, 2), ipow(s, 2)))))
    return make_equation(T, Xc, U)
