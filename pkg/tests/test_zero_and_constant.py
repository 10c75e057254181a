"""Identity-zero testing and constancy detection."""

import pytest

from hyperinv.expr import (
    IndeterminateZeroTest,
    ZeroTestPolicy,
    is_constant,
    is_identically_zero,
    parse,
    simplify,
    to_text,
    zero_test,
)
from hyperinv import corpus, laplace_invariants, ovsiannikov_invariants
from hyperinv.expr import differentiate


def test_zero_literal():
    assert is_identically_zero(parse("0"))


def test_scaling_family_H_before_and_after_simplify():
    # H of the constant-invariant scaling family is 1 + lambda*t*x - lambda*t*x
    h = parse("1+lambda*t*x-lambda*t*x")
    assert not is_identically_zero(h)
    assert is_identically_zero(h - parse("1"))
    assert simplify(h - parse("1")) == parse("0")


def test_Pt_of_pure_x_equation_is_zero():
    eq = corpus.s3_monomial()
    H, K = laplace_invariants(eq)
    P, _ = ovsiannikov_invariants(eq, H, K)
    assert to_text(simplify(P)) == "-(2*x)+1"
    assert is_identically_zero(differentiate(P, "t"))
    assert not is_identically_zero(differentiate(P, "x"))


def test_zero_test_reports_method():
    assert zero_test(parse("t-t")).method == "symbolic"
    assert zero_test(parse("exp(t)*exp(-t)-1")).method == "probabilistic"
    assert not zero_test(parse("exp(t)-t")).is_zero


def test_function_symbols_are_independent_transcendentals():
    # p'(t) and q'(t) get independent sample values, so this is nonzero
    assert not is_identically_zero(parse("1/p'(t)-1/q'(t)"))


def test_indeterminate_when_everything_is_singular():
    # ln of a negative square is singular at every sample point
    policy = ZeroTestPolicy(seed=1, max_draws=30)
    with pytest.raises(IndeterminateZeroTest):
        zero_test(parse("ln(-1-t^2)"), policy)


def test_zero_test_deterministic_under_seed():
    e = parse("exp(t+x)-exp(t)*exp(x)")
    r1 = zero_test(e, ZeroTestPolicy(seed=7))
    r2 = zero_test(e, ZeroTestPolicy(seed=7))
    assert r1 == r2


def test_is_constant_on_parameters_and_rationals():
    lam = parse("lambda")
    assert is_constant(lam) == lam
    assert is_constant(parse("3/4+1/4")) == parse("1")
    assert is_constant(parse("t+x")) is None


def test_is_constant_scaling_family_P(witness_reports):
    frame = witness_reports["S6a"].frame
    assert to_text(is_constant(frame.P)) == "lambda"


def test_is_constant_euler_poisson(witness_reports):
    frame = witness_reports["S6b"].frame
    assert to_text(is_constant(frame.P)) == "lambda"
    assert to_text(is_constant(frame.Q)) == "mu"


def test_is_constant_empty_for_s2_witness(witness_reports):
    frame = witness_reports["S2"].frame
    assert is_constant(frame.P) is None
