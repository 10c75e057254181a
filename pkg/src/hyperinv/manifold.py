"""Sampled classifying manifolds and the numerical overlap test.

The s-th order classifying manifold of an equation is the image of the
sample domain under all derived invariants of order <= s:

    S2: (P_jk, Q_jk, J2_jk)     S3: (P, Q_jk, L_jk)
    S4: (P, Q_jk, M2_jk)        S5: (P, Q, N_jk)

with F_jk = D1^j(D2^k(F)) and 0 <= j+k <= s.  Two same-subclass equations
are locally contact equivalent exactly when these manifolds locally
overlap; "overlap" is decided numerically by a two-sided point-to-surface
residual (coarse grid search plus bisection-shrink refinement over the
two sample coordinates), with per-coordinate normalization by the
invariant's range so that wildly different scales cannot mask each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import ClassificationError, ClassificationReport, Subclass, classify
from .expr import (
    DEFAULT_POLICY,
    Expr,
    ZeroTestPolicy,
    eval_array,
    is_identically_zero,
    poly_to_expr,
    rational_form,
    simplify,
    sub,
)
from .invariants import InvariantFrame, derived_invariant

__all__ = [
    "ClassifyingManifold",
    "EquivalenceVerdict",
    "ManifoldError",
    "build_manifold",
    "overlap_residual",
    "decide_equivalence",
    "DEFAULT_DOMAIN",
    "DEFAULT_GRID",
    "DEFAULT_TOL_MATCH",
]

DEFAULT_DOMAIN = ((0.1, 1.1), (0.2, 1.2))
DEFAULT_GRID = (20, 20)
DEFAULT_TOL_MATCH = 1e-6
MIN_VALID_SAMPLES = 25
SINGULAR_DEN = 1e-12
NOT_EQUIV_FACTOR = 100.0
MATCH_FRACTION = 0.9
REFINE_ITERATIONS = 40


class ManifoldError(RuntimeError):
    pass


def coordinate_labels(tag: str, s: int) -> list[str]:
    """Ordered coordinate labels for the tag, lexicographic in (label, j, k)."""
    towers = {
        "S2": ("P", "Q", "J2"),
        "S3": ("Q", "L"),
        "S4": ("Q", "M2"),
        "S5": ("N",),
    }
    if tag not in towers:
        raise ManifoldError(f"subclass {tag} has no classifying manifold")
    plain = {"S2": (), "S3": ("P",), "S4": ("P",), "S5": ("P", "Q")}[tag]
    labels = list(plain)
    for name in towers[tag]:
        for j in range(s + 1):
            for k in range(s + 1 - j):
                labels.append(f"{name}_{j}{k}")
    return sorted(labels, key=_label_key)


def _label_key(label: str):
    if "_" in label:
        name, jk = label.rsplit("_", 1)
        return (name, int(jk[0]), int(jk[1]))
    return (label, -1, -1)


def _coordinate_exprs(frame: InvariantFrame, s: int) -> dict[str, Expr]:
    bases = {
        "P": frame.P,
        "Q": frame.Q,
        "J2": frame.extras.get("J2"),
        "L": frame.extras.get("L"),
        "M2": frame.extras.get("M2"),
        "N": frame.extras.get("N"),
    }
    out: dict[str, Expr] = {}
    for label in coordinate_labels(frame.tag, s):
        if "_" in label:
            name, jk = label.rsplit("_", 1)
            j, k = int(jk[0]), int(jk[1])
            out[label] = derived_invariant(frame, bases[name], j, k)
        else:
            out[label] = bases[label]
    return out


@dataclass(frozen=True)
class ClassifyingManifold:
    order: int
    tag: str
    labels: tuple
    points: np.ndarray  # (n, 2) sample (t, x)
    values: np.ndarray  # (n, len(labels))
    domain: tuple  # ((t0, t1), (x0, x1))
    grid: tuple  # (nt, nx)

    def __len__(self) -> int:
        return len(self.points)


class _CoordinateMap:
    """Vectorized evaluation of the derived invariants of one equation."""

    def __init__(self, frame: InvariantFrame, s: int):
        self.labels = tuple(coordinate_labels(frame.tag, s))
        exprs = _coordinate_exprs(frame, s)
        self.pairs = []
        for label in self.labels:
            rf = rational_form(exprs[label])
            self.pairs.append((poly_to_expr(rf.num), poly_to_expr(rf.den)))

    def evaluate(self, tval: np.ndarray, xval: np.ndarray):
        """(values, valid): stacked coordinates and the validity mask."""
        cols = []
        valid = np.ones(np.broadcast(tval, xval).shape, dtype=bool)
        for num, den in self.pairs:
            nv = eval_array(num, tval, xval)
            dv = eval_array(den, tval, xval)
            good = np.isfinite(nv) & np.isfinite(dv) & (np.abs(dv) >= SINGULAR_DEN)
            col = np.where(good, nv, np.nan) / np.where(good, dv, 1.0)
            good &= np.isfinite(col)
            valid &= good
            cols.append(col)
        return np.stack(cols, axis=-1), valid


def _grid_points(domain, grid):
    (t0, t1), (x0, x1) = domain
    nt, nx = grid
    ts = np.linspace(t0, t1, nt)
    xs = np.linspace(x0, x1, nx)
    tg, xg = np.meshgrid(ts, xs, indexing="ij")
    return tg.ravel(), xg.ravel()


def build_manifold(
    eq_or_report,
    frame: InvariantFrame | None = None,
    s: int = 2,
    domain=DEFAULT_DOMAIN,
    grid=DEFAULT_GRID,
) -> ClassifyingManifold:
    """Evaluate the order-s derived invariants on a grid over the domain.

    Accepts either (equation, frame) or a ClassificationReport.  Grid
    points where any coordinate is singular (denominator within 1e-12 of
    zero, or non-finite value) are skipped; fewer than 25 surviving
    samples is an error asking for a larger domain or grid.
    """
    if isinstance(eq_or_report, ClassificationReport):
        frame = eq_or_report.frame
    if frame is None:
        raise TypeError("build_manifold needs an InvariantFrame")
    if s < 0:
        raise ValueError("order must be >= 0")
    cmap = _CoordinateMap(frame, s)
    tv, xv = _grid_points(domain, grid)
    values, valid = cmap.evaluate(tv, xv)
    n_valid = int(valid.sum())
    if n_valid < MIN_VALID_SAMPLES:
        raise ManifoldError(
            f"only {n_valid} valid samples (< {MIN_VALID_SAMPLES}); "
            "enlarge the domain or grid"
        )
    points = np.stack([tv[valid], xv[valid]], axis=-1)
    return ClassifyingManifold(
        s, frame.tag, cmap.labels, points, values[valid], domain, grid
    )


def overlap_residual(
    manifold: ClassifyingManifold,
    frame_b: InvariantFrame,
    domain_b=None,
    grid_b=None,
) -> tuple[float, float]:
    """(max residual, matched fraction) of manifold A against equation B.

    For each A sample the residual is the minimum over (t,x) in B's
    domain of the normalized sup-distance between A's invariant vector
    and B's invariant map, found by coarse grid search plus 40
    bisection-shrink refinement steps.  Coordinates are normalized by
    1 + (range over A).  Raises ManifoldError when fewer than 90% of A's
    samples can be matched against any finite B evaluation.
    """
    if frame_b.tag != manifold.tag:
        raise ManifoldError(
            f"subclass mismatch: manifold {manifold.tag} vs equation {frame_b.tag}"
        )
    domain_b = domain_b or manifold.domain
    grid_b = grid_b or manifold.grid
    cmap_b = _CoordinateMap(frame_b, manifold.order)
    if cmap_b.labels != tuple(manifold.labels):
        raise ManifoldError("coordinate labels disagree")

    norm = 1.0 + (manifold.values.max(axis=0) - manifold.values.min(axis=0))
    va = manifold.values / norm

    tb, xb = _grid_points(domain_b, grid_b)
    vb, valid_b = cmap_b.evaluate(tb, xb)
    if not valid_b.any():
        raise ManifoldError("no valid samples on the comparison grid")
    tb, xb, vb = tb[valid_b], xb[valid_b], vb[valid_b] / norm

    # Coarse assignment: nearest grid point in normalized sup-distance.
    dist = np.abs(va[:, None, :] - vb[None, :, :]).max(axis=-1)
    best_idx = dist.argmin(axis=1)
    best = dist[np.arange(len(va)), best_idx]
    ct, cx = tb[best_idx].copy(), xb[best_idx].copy()

    (t0, t1), (x0, x1) = domain_b
    nt, nx = grid_b
    ht = (t1 - t0) / max(nt - 1, 1)
    hx = (x1 - x0) / max(nx - 1, 1)
    offsets = [(dt, dx) for dt in (-1, 0, 1) for dx in (-1, 0, 1) if (dt, dx) != (0, 0)]
    for _ in range(REFINE_ITERATIONS):
        moved = False
        for dt, dx in offsets:
            cand_t = np.clip(ct + dt * ht, t0, t1)
            cand_x = np.clip(cx + dx * hx, x0, x1)
            vc, okc = cmap_b.evaluate(cand_t, cand_x)
            dc = np.abs(va - vc / norm).max(axis=-1)
            dc = np.where(okc & np.isfinite(dc), dc, np.inf)
            better = dc < best
            if better.any():
                moved = True
                best = np.where(better, dc, best)
                ct = np.where(better, cand_t, ct)
                cx = np.where(better, cand_x, cx)
        ht *= 0.5
        hx *= 0.5
        if not moved and ht < 1e-15 and hx < 1e-15:
            break

    finite = np.isfinite(best)
    if finite.sum() < MATCH_FRACTION * len(best):
        raise ManifoldError(
            f"only {int(finite.sum())}/{len(best)} samples evaluable; "
            "pervasive singularity"
        )
    residual = float(best[finite].max())
    matched = float(finite.sum()) / float(len(best))
    return residual, matched


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "equivalent" | "not_equivalent" | "indeterminate"
    residual_ab: float | None
    residual_ba: float | None
    matched_fraction: float | None
    subclass_a: str
    subclass_b: str
    notes: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "residual_ab": self.residual_ab,
            "residual_ba": self.residual_ba,
            "matched_fraction": self.matched_fraction,
            "subclass_a": self.subclass_a,
            "subclass_b": self.subclass_b,
            "notes": list(self.notes),
        }


def _constant_invariants_match(
    frame_a: InvariantFrame, frame_b: InvariantFrame, tol: float, policy
) -> bool:
    """S6 equality of (P, Q): symbolic when parameters stay symbolic."""
    from .expr import evaluate, Binding, free_symbols

    for fa, fb in ((frame_a.P, frame_b.P), (frame_a.Q, frame_b.Q)):
        delta = simplify(sub(fa, fb))
        _, params, funcs = free_symbols(delta)
        if params or funcs:
            if not is_identically_zero(delta, policy):
                return False
        else:
            if abs(evaluate(delta, Binding({"t": 0.5, "x": 0.5}))) >= tol:
                return False
    return True


def decide_equivalence(
    eq_a,
    eq_b,
    s: int = 2,
    domain_a=DEFAULT_DOMAIN,
    domain_b=None,
    grid=DEFAULT_GRID,
    tol_match: float = DEFAULT_TOL_MATCH,
    policy: ZeroTestPolicy = DEFAULT_POLICY,
) -> EquivalenceVerdict:
    """Two-sided local-equivalence decision.

    Different subclasses are never equivalent.  S1 pairs always are; S6
    pairs compare their constant (P, Q).  For S2..S5 both one-sided
    overlap residuals must fall below tol_match (with at least 90% of
    samples matched); residuals above 100*tol_match are reported as
    not_equivalent and the band between as indeterminate.
    """
    domain_b = domain_b or domain_a
    notes: list[str] = []
    try:
        rep_a = classify(eq_a, policy)
        rep_b = classify(eq_b, policy)
    except ClassificationError as exc:
        return EquivalenceVerdict(
            "indeterminate", None, None, None, "?", "?", (str(exc),)
        )
    tag_a, tag_b = rep_a.subclass, rep_b.subclass
    if tag_a != tag_b:
        return EquivalenceVerdict(
            "not_equivalent",
            None,
            None,
            None,
            tag_a.value,
            tag_b.value,
            ("different subclasses",),
        )
    if tag_a == Subclass.S1:
        return EquivalenceVerdict(
            "equivalent", 0.0, 0.0, 1.0, "S1", "S1", ("both equivalent to the wave equation",)
        )
    if tag_a == Subclass.S6:
        same = _constant_invariants_match(rep_a.frame, rep_b.frame, tol_match, policy)
        status = "equivalent" if same else "not_equivalent"
        note = "constant invariants " + ("match" if same else "differ")
        return EquivalenceVerdict(
            status, 0.0 if same else None, 0.0 if same else None,
            1.0 if same else None, "S6", "S6", (note,),
        )
    try:
        man_a = build_manifold(rep_a, s=s, domain=domain_a, grid=grid)
        man_b = build_manifold(rep_b, s=s, domain=domain_b, grid=grid)
        res_ab, frac_ab = overlap_residual(man_a, rep_b.frame, domain_b, grid)
        res_ba, frac_ba = overlap_residual(man_b, rep_a.frame, domain_a, grid)
    except ManifoldError as exc:
        return EquivalenceVerdict(
            "indeterminate", None, None, None, tag_a.value, tag_b.value, (str(exc),)
        )
    matched = min(frac_ab, frac_ba)
    worst = max(res_ab, res_ba)
    if worst < tol_match and matched >= MATCH_FRACTION:
        status = "equivalent"
    elif worst > NOT_EQUIV_FACTOR * tol_match:
        status = "not_equivalent"
    else:
        status = "indeterminate"
        notes.append("residual inside the indeterminate band")
    return EquivalenceVerdict(
        status, res_ab, res_ba, matched, tag_a.value, tag_b.value, tuple(notes)
    )
