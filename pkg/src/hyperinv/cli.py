"""Command-line front end.

Subcommands:

    classify <eq.json>                  classification report as JSON
    invariants <eq.json>                invariant map as JSON
    equivalence <eqA.json> <eqB.json>   equivalence verdict as JSON
    manifold <eq.json> --out m.csv      sampled classifying manifold as CSV
    selftest                            witness corpus + identity suites

Exit codes: 0 success/equivalent, 1 not_equivalent, 2 indeterminate,
3 input error.  JSON output is canonical: sorted keys, floats rendered
with 12 significant digits, so identical configurations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import corpus
from .cartan import cartan_test_identity, character_table
from .classify import ClassificationError, Subclass, canonical_form, classify
from .equations import equation_from_json, gauge_transform
from .expr import (
    ExprError,
    IndeterminateZeroTest,
    ZeroTestPolicy,
    is_identically_zero,
    parse,
    simplify,
    sub,
    to_text,
)
from .invariants import commutator_residual, syzygy_residual
from .manifold import (
    DEFAULT_DOMAIN,
    DEFAULT_GRID,
    DEFAULT_TOL_MATCH,
    ManifoldError,
    build_manifold,
    decide_equivalence,
)

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_INDETERMINATE = 2
EXIT_INPUT_ERROR = 3


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    order: int = 2
    domain: tuple = DEFAULT_DOMAIN
    grid: tuple = DEFAULT_GRID
    seed: int = 42
    tol_match: float = DEFAULT_TOL_MATCH
    assume: dict = field(default_factory=dict)
    output: str | None = None

    @property
    def policy(self) -> ZeroTestPolicy:
        return ZeroTestPolicy(seed=self.seed)


def _format_float(v: float) -> float:
    return float(f"{v:.12g}")


def _canonical(obj):
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, dict):
        return {k: _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def emit_json(doc: dict, stream=None) -> None:
    stream = stream or sys.stdout
    json.dump(_canonical(doc), stream, sort_keys=True, indent=2)
    stream.write("\n")


def _load_equation(path: str, assume: dict):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise SystemExit(_input_error(f"cannot read {path}: {exc}"))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SystemExit(_input_error(f"{path}: malformed JSON at byte {exc.pos}"))
    try:
        eq = equation_from_json(data)
    except ExprError as exc:
        raise SystemExit(_input_error(f"{path}: {exc}"))
    except ValueError as exc:
        raise SystemExit(_input_error(f"{path}: {exc}"))
    if assume:
        params = dict(eq.parameters)
        unknown = assume.keys() - params.keys()
        if unknown:
            raise SystemExit(
                _input_error(f"{path}: --assume names not in params: {sorted(unknown)}")
            )
        params.update(assume)
        eq = type(eq)(eq.T, eq.X, eq.U, params, eq.functions)
    return eq


def _input_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT_ERROR


def _parse_assume(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise SystemExit(_input_error(f"--assume expects name=value, got {pair!r}"))
        name, value = pair.split("=", 1)
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise SystemExit(_input_error(f"--assume value not numeric: {pair!r}"))
    return out


def _parse_domain(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise SystemExit(_input_error(f"--domain expects t0,t1,x0,x1, got {text!r}"))
    t0, t1, x0, x1 = (float(p) for p in parts)
    return ((t0, t1), (x0, x1))


def _parse_grid(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise SystemExit(_input_error(f"--grid expects N,M, got {text!r}"))
    return (int(parts[0]), int(parts[1]))


def cmd_classify(cfg: RunConfig) -> int:
    eq = _load_equation(cfg.inputs[0], cfg.assume)
    try:
        report = classify(eq, cfg.policy)
    except (ClassificationError, IndeterminateZeroTest) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    doc = report.to_json_dict()
    if report.subclass in (Subclass.S1, Subclass.S6):
        target = canonical_form(report, cfg.policy)
        doc["canonical_target"] = {
            "T": to_text(target.T),
            "X": to_text(target.X),
            "U": to_text(target.U),
        }
    emit_json(doc)
    return EXIT_OK


def cmd_invariants(cfg: RunConfig) -> int:
    eq = _load_equation(cfg.inputs[0], cfg.assume)
    try:
        report = classify(eq, cfg.policy)
    except (ClassificationError, IndeterminateZeroTest) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    doc = {
        "subclass": report.subclass.value,
        "invariants": {
            name: to_text(expr)
            for name, expr in report.frame.named_invariants().items()
        },
    }
    if report.frame.has_operators:
        doc["d1_coeff"] = to_text(report.frame.d1_coeff)
        doc["d2_coeff"] = to_text(report.frame.d2_coeff)
    emit_json(doc)
    return EXIT_OK


def cmd_equivalence(cfg: RunConfig) -> int:
    eq_a = _load_equation(cfg.inputs[0], cfg.assume)
    eq_b = _load_equation(cfg.inputs[1], cfg.assume)
    verdict = decide_equivalence(
        eq_a,
        eq_b,
        s=cfg.order,
        domain_a=cfg.domain,
        grid=cfg.grid,
        tol_match=cfg.tol_match,
        policy=cfg.policy,
    )
    emit_json(verdict.to_json_dict())
    if verdict.status == "equivalent":
        return EXIT_OK
    if verdict.status == "not_equivalent":
        return EXIT_NOT_EQUIVALENT
    return EXIT_INDETERMINATE


def cmd_manifold(cfg: RunConfig) -> int:
    eq = _load_equation(cfg.inputs[0], cfg.assume)
    try:
        report = classify(eq, cfg.policy)
        manifold = build_manifold(report, s=cfg.order, domain=cfg.domain, grid=cfg.grid)
    except (ClassificationError, IndeterminateZeroTest, ManifoldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    lines = ["point_t,point_x," + ",".join(manifold.labels)]
    for point, row in zip(manifold.points, manifold.values):
        cells = [f"{point[0]:.12g}", f"{point[1]:.12g}"]
        cells.extend(f"{v:.12g}" for v in row)
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _selftest_checks(policy: ZeroTestPolicy):
    """Yield (name, passed) pairs for the witness corpus and identities."""
    expected = {
        "S1": "S1",
        "S2": "S2",
        "S3": "S3",
        "S4": "S4",
        "S5": "S5",
        "S6a": "S6",
        "S6b": "S6",
    }
    reports = {}
    for key, eq in corpus.witnesses().items():
        try:
            report = classify(eq, policy)
            reports[key] = report
            yield f"classify[{key}]=={expected[key]}", report.subclass.value == expected[key]
        except (ClassificationError, IndeterminateZeroTest):
            yield f"classify[{key}]=={expected[key]}", False
    probe = parse("t*x")
    for key in ("S2", "S3", "S4", "S5"):
        report = reports.get(key)
        if report is None or not report.frame.has_operators:
            yield f"commutator[{key}]", False
            continue
        residual = commutator_residual(report.frame, probe)
        yield f"commutator[{key}]", is_identically_zero(residual, policy)
    for key in ("S2", "S4"):
        report = reports.get(key)
        if report is None:
            yield f"syzygy[{key}]", False
            continue
        residual = syzygy_residual(report.frame)
        yield f"syzygy[{key}]", is_identically_zero(residual, policy)
    fn = corpus.s2_functional()
    rep = classify(fn, policy)
    p_res = sub(rep.frame.P, parse("p(t)"))
    q_res = sub(rep.frame.Q, parse("q(t)"))
    yield "functional P==p(t)", is_identically_zero(p_res, policy)
    yield "functional Q==q(t)", is_identically_zero(q_res, policy)
    eq = corpus.s2_monomial()
    gauged = gauge_transform(eq, parse("1+t*x+t^2"), policy)
    ha = classify(eq, policy).frame.H
    hb = classify(gauged, policy).frame.H
    yield "gauge preserves H", is_identically_zero(sub(ha, hb), policy)
    yield "cartan identity n=1..50", all(cartan_test_identity(n) for n in range(1, 51))
    table = character_table(2)
    yield "characters(2)==(8,7,6,3,1)", table.characters == (8, 7, 6, 3, 1)
    yield "indeterminacy(2)==57", table.r1 == 57 and table.weighted_sum == 57


def cmd_selftest(cfg: RunConfig) -> int:
    failures = 0
    for name, ok in _selftest_checks(cfg.policy):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1
    print(f"selftest: {'ok' if failures == 0 else f'{failures} failures'}")
    return EXIT_OK if failures == 0 else EXIT_INDETERMINATE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperinv",
        description="Classify linear hyperbolic equations u_tx = T*u_t + X*u_x + U*u "
        "by contact-invariant subclass and decide local equivalence.",
    )
    sub_parsers = ap.add_subparsers(dest="command", required=True)

    def common(p, n_inputs):
        for i in range(n_inputs):
            p.add_argument(f"input{i}" if n_inputs > 1 else "input", help="equation JSON document")
        p.add_argument("--order", type=int, default=2, help="derived-invariant order s (default 2)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL_MATCH, help="match tolerance")
        p.add_argument("--domain", default="0.1,1.1,0.2,1.2", help="t0,t1,x0,x1")
        p.add_argument("--grid", default="20,20", help="N,M grid resolution")
        p.add_argument("--seed", type=int, default=42, help="zero-test PRNG seed")
        p.add_argument("--assume", action="append", default=[], metavar="NAME=VAL",
                       help="assign a numeric value to a parameter")

    p = sub_parsers.add_parser("classify", help="classify one equation")
    common(p, 1)
    p = sub_parsers.add_parser("invariants", help="print the invariant map")
    common(p, 1)
    p = sub_parsers.add_parser("equivalence", help="decide equivalence of two equations")
    common(p, 2)
    p = sub_parsers.add_parser("manifold", help="sample the classifying manifold as CSV")
    common(p, 1)
    p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    p = sub_parsers.add_parser("selftest", help="run the built-in witness and identity suite")
    p.add_argument("--seed", type=int, default=42)
    return ap


def _config_from_args(args) -> RunConfig:
    inputs = []
    for name in ("input", "input0", "input1"):
        if hasattr(args, name):
            inputs.append(getattr(args, name))
    return RunConfig(
        command=args.command,
        inputs=inputs,
        order=getattr(args, "order", 2),
        domain=_parse_domain(getattr(args, "domain", "0.1,1.1,0.2,1.2")),
        grid=_parse_grid(getattr(args, "grid", "20,20")),
        seed=getattr(args, "seed", 42),
        tol_match=getattr(args, "tol", DEFAULT_TOL_MATCH),
        assume=_parse_assume(getattr(args, "assume", [])),
        output=getattr(args, "out", None),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    handlers = {
        "classify": cmd_classify,
        "invariants": cmd_invariants,
        "equivalence": cmd_equivalence,
        "manifold": cmd_manifold,
        "selftest": cmd_selftest,
    }
    return handlers[cfg.command](cfg)


if __name__ == "__main__":
    raise SystemExit(main())
