"""Differential invariants and invariant differentiation.

Laplace semi-invariants of u_tx = T*u_t + X*u_x + U*u:

    H = -T_t + T*X + U,     K = -X_x + T*X + U

and the derived invariants

    P = K/H,    Q = (H*H_tx - H_t*H_x)/H^3

(the log-free form of Q, valid for either sign of H).  Each subclass of
the six-way classification carries its own extra invariants and a pair of
invariant differentiation operators D1 = a1*D_t, D2 = a2*D_x:

    S2 (P_t != 0):            J1 = -P_tx/H, J2 = (H_t*P_t - H*P_tt)/(H*P_t^2)
                              a1 = 1/P_t,   a2 = P_t/H
    S3 (P_t == 0, P_x != 0):  L = (H*P_xx - H_x*P_x)/(H*P_x^2)
                              a1 = P_x/H,   a2 = 1/P_x
    S4 (P const, Q_t != 0):   M1 = -Q_tx/H, M2 = (H_t*Q_t - H*Q_tt)/(H*Q_t^2)
                              a1 = 1/Q_t,   a2 = Q_t/H
    S5 (P const, Q_t == 0,
        Q_x != 0):            N = (H*Q_xx - H_x*Q_x)/(H*Q_x^2)
                              a1 = Q_x/H,   a2 = 1/Q_x

The commutator of the operator pair closes on first-order invariants:

    S2: [D1,D2] = -J1*D1 - J2*D2        S3: [D1,D2] = -L*D1
    S4: [D1,D2] = -M1*D1 - M2*D2        S5: [D1,D2] = -N*D1

(the S3 right-hand side carries a minus sign, forced by d(xi^1) =
L xi^1 ^ xi^2 in the structure equations and verified symbolically in the
test suite), giving the syzygies J1 = -D1(D2(P)) - J2*D2(P) on S2 and
M1 = -D1(D2(Q)) - M2*D2(Q) on S4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .equations import HyperbolicEquation
from .expr import (
    Expr,
    ONE,
    ZERO,
    differentiate,
    div,
    ipow,
    is_identically_zero,
    mul,
    neg,
    simplify,
    sub,
)

__all__ = [
    "InvariantFrame",
    "laplace_invariants",
    "ovsiannikov_invariants",
    "subclass_invariants",
    "build_frame",
    "invariant_derivative",
    "derived_invariant",
    "commutator_residual",
    "syzygy_residual",
    "jmws_relations",
    "ibragimov_relations",
    "DegenerateInvariantError",
]

OPERATOR_TAGS = ("S2", "S3", "S4", "S5")

_EXTRA_NAMES = {
    "S1": (),
    "S2": ("J1", "J2"),
    "S3": ("L",),
    "S4": ("M1", "M2"),
    "S5": ("N",),
    "S6": (),
}


class DegenerateInvariantError(ArithmeticError):
    """Division by an identically-zero quantity; the subclass conditions
    certifying non-vanishing were violated upstream."""


def _d(e: Expr, v: str) -> Expr:
    return simplify(differentiate(e, v))


@dataclass(frozen=True)
class InvariantFrame:
    """Subclass tag with the invariants and operator coefficients."""

    tag: str
    H: Expr
    K: Expr
    P: Expr | None
    Q: Expr | None
    extras: dict
    d1_coeff: Expr | None
    d2_coeff: Expr | None
    _derived_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def has_operators(self) -> bool:
        return self.d1_coeff is not None

    def named_invariants(self) -> dict:
        out: dict[str, Expr] = {"H": self.H, "K": self.K}
        if self.P is not None:
            out["P"] = self.P
        if self.Q is not None:
            out["Q"] = self.Q
        out.update(self.extras)
        return out


def laplace_invariants(eq: HyperbolicEquation) -> tuple[Expr, Expr]:
    """(H, K) = (-T_t + T*X + U, -X_x + T*X + U), simplified."""
    TX = mul(eq.T, eq.X)
    H = simplify(neg(differentiate(eq.T, "t")) + TX + eq.U)
    K = simplify(neg(differentiate(eq.X, "x")) + TX + eq.U)
    return H, K


def ovsiannikov_invariants(
    eq: HyperbolicEquation, H: Expr, K: Expr
) -> tuple[Expr, Expr]:
    """(P, Q) = (K/H, (H*H_tx - H_t*H_x)/H^3); requires H not identically zero."""
    if is_identically_zero(H):
        raise DegenerateInvariantError("H is identically zero; P and Q undefined")
    Ht = _d(H, "t")
    Hx = _d(H, "x")
    Htx = _d(Ht, "x")
    P = simplify(div(K, H))
    Q = simplify(div(sub(mul(H, Htx), mul(Ht, Hx)), ipow(H, 3)))
    return P, Q


def _ratio_invariant(H: Expr, F: Expr, v: str) -> Expr:
    """(H_v*F_v - H*F_vv) / (H*F_v^2) for the J2/M2 family."""
    Hv = _d(H, v)
    Fv = _d(F, v)
    Fvv = _d(Fv, v)
    if is_identically_zero(Fv):
        raise DegenerateInvariantError(f"required derivative d{v} vanishes")
    return simplify(div(sub(mul(Hv, Fv), mul(H, Fvv)), mul(H, ipow(Fv, 2))))


def _curvature_invariant(H: Expr, F: Expr) -> Expr:
    """(H*F_xx - H_x*F_x) / (H*F_x^2) for the L/N family."""
    Hx = _d(H, "x")
    Fx = _d(F, "x")
    Fxx = _d(Fx, "x")
    if is_identically_zero(Fx):
        raise DegenerateInvariantError("required derivative dx vanishes")
    return simplify(div(sub(mul(H, Fxx), mul(Hx, Fx)), mul(H, ipow(Fx, 2))))


def _mixed_invariant(H: Expr, F: Expr) -> Expr:
    """-F_tx / H for the J1/M1 family."""
    return simplify(div(neg(_d(_d(F, "t"), "x")), H))


def subclass_invariants(tag: str, H: Expr, P: Expr, Q: Expr) -> dict:
    """Extra invariants for the tag: {J1,J2} on S2, {L} on S3, {M1,M2} on
    S4, {N} on S5, empty otherwise."""
    if tag == "S2":
        return {
            "J1": _mixed_invariant(H, P),
            "J2": _ratio_invariant(H, P, "t"),
        }
    if tag == "S3":
        return {"L": _curvature_invariant(H, P)}
    if tag == "S4":
        return {
            "M1": _mixed_invariant(H, Q),
            "M2": _ratio_invariant(H, Q, "t"),
        }
    if tag == "S5":
        return {"N": _curvature_invariant(H, Q)}
    if tag in ("S1", "S6"):
        return {}
    raise ValueError(f"unknown subclass tag {tag!r}")


def _operator_coeffs(tag: str, H: Expr, P: Expr, Q: Expr):
    if tag == "S2":
        Pt = _d(P, "t")
        return simplify(div(ONE, Pt)), simplify(div(Pt, H))
    if tag == "S3":
        Px = _d(P, "x")
        return simplify(div(Px, H)), simplify(div(ONE, Px))
    if tag == "S4":
        Qt = _d(Q, "t")
        return simplify(div(ONE, Qt)), simplify(div(Qt, H))
    if tag == "S5":
        Qx = _d(Q, "x")
        return simplify(div(Qx, H)), simplify(div(ONE, Qx))
    return None, None


def build_frame(
    tag: str, H: Expr, K: Expr, P: Expr | None, Q: Expr | None
) -> InvariantFrame:
    extras = subclass_invariants(tag, H, P, Q) if tag in OPERATOR_TAGS else {}
    d1, d2 = (None, None) if tag not in OPERATOR_TAGS else _operator_coeffs(tag, H, P, Q)
    return InvariantFrame(tag, H, K, P, Q, extras, d1, d2)


def invariant_derivative(frame: InvariantFrame, F: Expr, which: int) -> Expr:
    """D1(F) = d1_coeff * D_t(F) or D2(F) = d2_coeff * D_x(F), simplified."""
    if not frame.has_operators:
        raise DegenerateInvariantError(
            f"subclass {frame.tag} has no invariant differentiation operators"
        )
    if which == 1:
        return simplify(mul(frame.d1_coeff, differentiate(F, "t")))
    if which == 2:
        return simplify(mul(frame.d2_coeff, differentiate(F, "x")))
    raise ValueError("which must be 1 or 2")


def derived_invariant(frame: InvariantFrame, base: Expr, j: int, k: int) -> Expr:
    """D1^j(D2^k(base)), simplified, with memoization on the frame."""
    if j < 0 or k < 0:
        raise ValueError("derivative orders must be non-negative")
    if j == 0 and k == 0:
        return base
    cache = frame._derived_cache
    key = (base, j, k)
    got = cache.get(key)
    if got is not None:
        return got
    if j > 0:
        out = invariant_derivative(frame, derived_invariant(frame, base, j - 1, k), 1)
    else:
        out = invariant_derivative(frame, derived_invariant(frame, base, 0, k - 1), 2)
    cache[key] = out
    return out


def _commutator_rhs(frame: InvariantFrame, d1F: Expr, d2F: Expr) -> Expr:
    tag = frame.tag
    if tag in ("S2", "S4"):
        a, b = (frame.extras["J1"], frame.extras["J2"]) if tag == "S2" else (
            frame.extras["M1"],
            frame.extras["M2"],
        )
        return simplify(neg(mul(a, d1F)) - mul(b, d2F))
    if tag == "S3":
        return simplify(neg(mul(frame.extras["L"], d1F)))
    if tag == "S5":
        return simplify(neg(mul(frame.extras["N"], d1F)))
    raise DegenerateInvariantError(f"subclass {tag} has no commutator identity")


def commutator_residual(frame: InvariantFrame, F: Expr) -> Expr:
    """[D1,D2]F minus the subclass right-hand side; identically zero."""
    d1F = invariant_derivative(frame, F, 1)
    d2F = invariant_derivative(frame, F, 2)
    bracket = sub(
        invariant_derivative(frame, d2F, 1), invariant_derivative(frame, d1F, 2)
    )
    return simplify(sub(bracket, _commutator_rhs(frame, d1F, d2F)))


def syzygy_residual(frame: InvariantFrame) -> Expr:
    """J1 + D1(D2(P)) + J2*D2(P) on S2 (M1/Q analogue on S4); zero."""
    if frame.tag == "S2":
        lead, coeff, base = frame.extras["J1"], frame.extras["J2"], frame.P
    elif frame.tag == "S4":
        lead, coeff, base = frame.extras["M1"], frame.extras["M2"], frame.Q
    else:
        raise DegenerateInvariantError(f"no syzygy for subclass {frame.tag}")
    d2b = derived_invariant(frame, base, 0, 1)
    d12b = derived_invariant(frame, base, 1, 1)
    return simplify(lead + d12b + mul(coeff, d2b))


def _second_order_basis(frame: InvariantFrame):
    """H/K-level building blocks shared by the cross-relation checks."""
    H, K = frame.H, frame.K
    Ht, Hx = _d(H, "t"), _d(H, "x")
    Kt, Kx = _d(K, "t"), _d(K, "x")
    return H, K, Ht, Hx, Kt, Kx


def jmws_relations(frame: InvariantFrame, probe: Expr | None = None) -> dict:
    """Cross-check the five-invariant basis built directly from H and K.

    Returns residuals of the three third-order invariants computed two ways
    (direct H/K formulas versus P, Q, J2 and invariant derivatives), plus
    the two alternative operators checked on a probe function.  When
    D2(P) is identically zero those operators are undefined and reported
    as skipped, which is exactly the degeneracy the functional witness
    family exhibits.
    """
    if frame.tag != "S2":
        raise DegenerateInvariantError("relations defined on subclass S2 frames")
    H, K, Ht, Hx, Kt, Kx = _second_order_basis(frame)
    Htx = _d(Ht, "x")
    Ktx = _d(Kt, "x")
    Htt, Ktt = _d(Ht, "t"), _d(Kt, "t")
    Hxx, Kxx = _d(Hx, "x"), _d(Kx, "x")
    P, Q, J2 = frame.P, frame.Q, frame.extras["J2"]

    j13_direct = simplify(
        div(mul(K, Htx) + mul(H, Ktx) - mul(Ht, Kx) - mul(Hx, Kt), ipow(H, 3))
    )
    j23_direct = simplify(
        div(
            mul(
                ipow(sub(mul(H, Kx), mul(K, Hx)), 2),
                mul(H, K, Htt) - mul(ipow(H, 2), Ktt) - mul(3, K, ipow(Ht, 2)) + mul(3, H, Ht, Kt),
            ),
            ipow(H, 9),
        )
    )
    j33_direct = simplify(
        div(
            mul(
                ipow(sub(mul(H, Kt), mul(K, Ht)), 2),
                mul(H, K, Hxx) - mul(ipow(H, 2), Kxx) - mul(3, K, ipow(Hx, 2)) + mul(3, H, Hx, Kx),
            ),
            ipow(H, 9),
        )
    )

    d2P = derived_invariant(frame, P, 0, 1)
    d12P = derived_invariant(frame, P, 1, 1)
    d22P = derived_invariant(frame, P, 0, 2)
    j13_derived = simplify(mul(2, P, Q) + d12P + mul(J2, d2P))
    j23_derived = simplify(mul(J2, ipow(d2P, 2)))
    j33_derived = simplify(mul(d2P, d12P + mul(J2, d2P)) - d22P)

    out = {
        "J13": simplify(sub(j13_direct, j13_derived)),
        "J23": simplify(sub(j23_direct, j23_derived)),
        "J33": simplify(sub(j33_direct, j33_derived)),
        "J13_value": j13_direct,
        "J23_value": j23_direct,
        "J33_value": j33_direct,
    }

    if is_identically_zero(d2P):
        out["X1_residual"] = "skipped"
        out["X2_residual"] = "skipped"
        return out
    probe = probe if probe is not None else simplify(mul(frame.P, frame.Q))
    # X1 = (H*K_x - K*H_x)/H^3 * D_t  and  X2 = H^2/(H*K_x - K*H_x) * D_x
    w = simplify(div(sub(mul(H, Kx), mul(K, Hx)), ipow(H, 3)))
    x1_probe = simplify(mul(w, differentiate(probe, "t")))
    x2_probe = simplify(div(differentiate(probe, "x"), mul(w, H)))
    d1_probe = invariant_derivative(frame, probe, 1)
    d2_probe = invariant_derivative(frame, probe, 2)
    out["X1_residual"] = simplify(sub(x1_probe, mul(d2P, d1_probe)))
    out["X2_residual"] = simplify(sub(x2_probe, div(d2_probe, d2P)))
    return out


def ibragimov_relations(frame: InvariantFrame) -> dict:
    """Check the four-invariant bases: I = D2(P) and the K-level Qtilde
    against its expression through P, Q, J2; skips where undefined."""
    if frame.tag != "S2":
        raise DegenerateInvariantError("relations defined on subclass S2 frames")
    H, K, Ht, Hx, Kt, Kx = _second_order_basis(frame)
    P, Q, J2 = frame.P, frame.Q, frame.extras["J2"]
    Pt, Px = _d(P, "t"), _d(P, "x")
    d2P = derived_invariant(frame, P, 0, 1)
    i_direct = simplify(div(mul(Pt, Px), H))
    out: dict = {
        "I": simplify(sub(i_direct, d2P)),
        "I_value": i_direct,
    }
    if is_identically_zero(K):
        out["Qtilde"] = "skipped"
        return out
    Ktx = _d(Kt, "x")
    qt_direct = simplify(div(sub(mul(K, Ktx), mul(Kt, Kx)), ipow(K, 3)))
    d12P = derived_invariant(frame, P, 1, 1)
    qt_derived = simplify(
        div(Q, P) + div(mul(J2, d2P), ipow(P, 2)) + div(d12P, ipow(P, 2)) - div(d2P, ipow(P, 3))
    )
    out["Qtilde"] = simplify(sub(qt_direct, qt_derived))
    out["Qtilde_value"] = qt_direct
    return out
