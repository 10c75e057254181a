"""Equation model: gauge scaling, reparametrization, JSON documents."""

import random

import pytest

from hyperinv import (
    equation_from_json,
    equation_to_json,
    gauge_transform,
    laplace_invariants,
    make_equation,
    ovsiannikov_invariants,
    reparametrize,
    swap_variables,
)
from hyperinv.equations import InverseCheckError, UndeclaredSymbolError
from hyperinv.expr import is_identically_zero, parse, simplify, sub, to_text


def random_rational_equation(rng):
    pool = ["t", "x", "t+x", "t*x", "1+t^2", "2-x", "t-x+1", "x^2", "t^2*x"]
    return make_equation(rng.choice(pool), rng.choice(pool), rng.choice(pool))


def random_gauge(rng):
    pool = ["1+t*x", "2+t^2", "1+t+x", "(1+t^2)*(2+x^2)", "3+x", "1+t*x^2"]
    return parse(rng.choice(pool))


def test_make_equation_infers_symbols():
    eq = make_equation("t^2*x^2", "0", "1")
    assert eq.parameters == {}
    assert eq.functions == frozenset()
    eq = make_equation("lambda*t", "p(x)", "0")
    assert set(eq.parameters) == {"lambda"}
    assert eq.functions == frozenset({"p"})


def test_make_equation_rejects_undeclared():
    with pytest.raises(UndeclaredSymbolError):
        make_equation("lambda*t", "0", "0", parameters={}, functions=set())


def test_gauge_of_wave_by_exp_tx():
    # u = exp(t*x)*v turns the wave equation into (-t, -x, -(1+t*x))
    wave = make_equation("0", "0", "0")
    out = gauge_transform(wave, parse("exp(t*x)"))
    assert simplify(out.T) == parse("-t")
    assert simplify(out.X) == parse("-x")
    assert simplify(sub(out.U, parse("-(1+t*x)"))) == parse("0")
    H, K = laplace_invariants(out)
    assert is_identically_zero(H)
    assert is_identically_zero(K)


def test_identity_gauge_is_identity():
    eq = make_equation("t^2*x^2", "0", "1")
    out = gauge_transform(eq, parse("1"))
    assert simplify(out.T) == simplify(eq.T)
    assert simplify(out.X) == simplify(eq.X)
    assert simplify(out.U) == simplify(eq.U)


def test_gauge_rejects_zero_factor():
    eq = make_equation("0", "0", "0")
    with pytest.raises(ValueError):
        gauge_transform(eq, parse("t-t"))


def test_gauge_preserves_laplace_invariants_random():
    # spec property: 50 random rational (eq, c) pairs, symbolic identity
    rng = random.Random(23)
    for _ in range(50):
        eq = random_rational_equation(rng)
        c = random_gauge(rng)
        out = gauge_transform(eq, c)
        H0, K0 = laplace_invariants(eq)
        H1, K1 = laplace_invariants(out)
        assert is_identically_zero(sub(H0, H1))
        assert is_identically_zero(sub(K0, K1))


def test_gauge_composition():
    rng = random.Random(5)
    eq = random_rational_equation(rng)
    c1, c2 = parse("1+t*x"), parse("2+x^2")
    once = gauge_transform(gauge_transform(eq, c1), c2)
    both = gauge_transform(eq, simplify(c1 * c2))
    for a, b in zip(once.coefficients(), both.coefficients()):
        assert is_identically_zero(sub(a, b))


def test_pq_invariant_under_gauge():
    rng = random.Random(31)
    for _ in range(10):
        eq = make_equation("t^2*x^2", "0", "1")
        c = random_gauge(rng)
        out = gauge_transform(eq, c)
        H0, K0 = laplace_invariants(eq)
        H1, K1 = laplace_invariants(out)
        P0, Q0 = ovsiannikov_invariants(eq, H0, K0)
        P1, Q1 = ovsiannikov_invariants(out, H1, K1)
        assert is_identically_zero(sub(P0, P1))
        assert is_identically_zero(sub(Q0, Q1))


def test_swap_exchanges_H_and_K():
    eq = make_equation("0", "x^2", "1")
    H0, K0 = laplace_invariants(eq)
    swapped = swap_variables(eq)
    H1, K1 = laplace_invariants(swapped)
    # H1(t,x) = K0(x,t) and vice versa
    from hyperinv.expr import substitute, variable

    flip = {"t": variable("x"), "x": variable("t")}
    assert is_identically_zero(sub(H1, simplify(substitute(K0, variables=flip))))
    assert is_identically_zero(sub(K1, simplify(substitute(H0, variables=flip))))


def test_reparametrize_identity():
    eq = make_equation("t^2*x^2", "0", "1")
    out = reparametrize(eq, "t", "x", "t", "x")
    for a, b in zip(out.coefficients(), eq.coefficients()):
        assert is_identically_zero(sub(a, b))


def test_reparametrize_scaling_of_wave():
    wave = make_equation("0", "0", "0")
    out = reparametrize(wave, "2*t", "x", "t/2", "x")
    for coeff in out.coefficients():
        assert simplify(coeff) == parse("0")


def test_reparametrize_swap_variant():
    eq = make_equation("t^2*x^2", "0", "1")
    out = reparametrize(eq, "t", "x", "t", "x", swap=True)
    assert is_identically_zero(sub(out.T, parse("0")))
    assert is_identically_zero(sub(out.X, parse("x^2*t^2")))
    assert is_identically_zero(sub(out.U, parse("1")))


def test_reparametrize_checks_inverses():
    eq = make_equation("t", "x", "1")
    with pytest.raises(InverseCheckError):
        reparametrize(eq, "2*t", "x", "t", "x")


def test_reparametrize_preserves_pq():
    eq = make_equation("t^2*x^2", "0", "1")
    H0, K0 = laplace_invariants(eq)
    P0, Q0 = ovsiannikov_invariants(eq, H0, K0)
    out = reparametrize(eq, "2*t", "3*x", "t/2", "x/3")
    H1, K1 = laplace_invariants(out)
    P1, Q1 = ovsiannikov_invariants(out, H1, K1)
    # composing the new invariants with (f, g) must reproduce the old ones
    from hyperinv.expr import substitute

    compose = {"t": parse("2*t"), "x": parse("3*x")}
    assert is_identically_zero(sub(simplify(substitute(P1, variables=compose)), P0))
    assert is_identically_zero(sub(simplify(substitute(Q1, variables=compose)), Q0))


def test_json_round_trip():
    doc = {
        "T": "0",
        "X": "2*lambda/(mu*(t+x))",
        "U": "p(t)*x",
        "params": {"lambda": 3.0, "mu": None},
        "functions": ["p"],
    }
    eq = equation_from_json(doc)
    assert eq.parameters["lambda"] == 3.0
    assert eq.parameters["mu"] is None
    assert eq.functions == frozenset({"p"})
    out = equation_to_json(eq)
    assert out["functions"] == ["p"]
    again = equation_from_json(out)
    assert to_text(again.T) == to_text(eq.T)


def test_json_missing_field():
    with pytest.raises(UndeclaredSymbolError):
        equation_from_json({"T": "0", "X": "0"})
