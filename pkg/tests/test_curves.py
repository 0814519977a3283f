import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lojbound.catalog import nondegenerate_entries
from lojbound.curves import (
    INFINITY,
    CurveBudget,
    MonomialCurve,
    curve_exponent,
    curve_orders,
    modified_gradient_pair,
    sample_lower_bound,
)
from lojbound.gaussian import QQi
from lojbound.mixedpoly import parse, weighted_order, wirtinger_derivative

from conftest import mixed_functions, random_torus_curve

CYCLIC = parse("z1^2*z2+z2^3*z3+z3^4*z1+z4^2")


def _real_stack(vec):
    out = []
    for c in vec:
        c = complex(float(c.re), float(c.im)) if isinstance(c, QQi) else complex(c)
        out.append(c)
    return [c.real for c in out] + [c.imag for c in out]


def _gram_det(u, v):
    uu = sum(a * a for a in u)
    vv = sum(b * b for b in v)
    uv = sum(a * b for a, b in zip(u, v))
    return uu * vv - uv * uv


def test_exact_polar_curve_on_cyclic_example():
    C = MonomialCurve(4, (0, 1, 2), (9, 7, 4),
                      (QQi(Fraction(-16, 9)), QQi(Fraction(8, 9)), QQi(Fraction(-4, 3))))
    o = curve_orders(CYCLIC, C)
    assert (o.ord_z, o.ord_grad, o.exponent) == (4, 21, Fraction(21, 4))
    assert o.exact


def test_float_polar_curve_on_cyclic_example():
    with mpmath.workdps(60):
        a1 = mpmath.root(mpmath.mpf(3) / 4, 4) * 1j
        a2 = mpmath.root(mpmath.mpf(1) / 12, 4) * 1j
    C = MonomialCurve(4, (0, 1, 2), (9, 7, 4), (a1, a2, mpmath.mpc(-1)))
    o = curve_orders(CYCLIC, C)
    assert o.holomorphic_orders == (INFINITY, INFINITY, 21, INFINITY)
    assert o.exponent == Fraction(21, 4)
    assert curve_exponent(CYCLIC, C, force_mixed=True) == Fraction(21, 4)


def test_brieskorn_witness_family():
    f = parse("z1^3+z2^7")
    C = MonomialCurve(2, (0, 1), (7, 1), (QQi(1), QQi(1)))
    assert curve_exponent(f, C) == 6


def test_curve_inside_the_singular_locus_has_infinite_exponent():
    f = parse("z1^2*z2^2")
    C = MonomialCurve(2, (0,), (1,), (QQi(1),))
    assert curve_orders(f, C).ord_grad == INFINITY


@given(mixed_functions(max_n=3), st.randoms(use_true_random=False))
def test_component_orders_bound_below(f, rnd):
    C = random_torus_curve(rnd, f.n, max_weight=6)
    o = curve_orders(f, C)
    P = C.weight_vector()
    for j in range(f.n):
        for conj, orders in ((False, o.holomorphic_orders), (True, o.conjugate_orders)):
            if orders is None:
                continue
            g = wirtinger_derivative(f, j, conj)
            if g.is_zero:
                assert orders[j] == INFINITY
            else:
                assert orders[j] >= weighted_order(g, P)


@pytest.mark.parametrize("entry", nondegenerate_entries(), ids=lambda e: e.name)
def test_gradient_order_bounded_above(entry):
    f = entry.function
    rng = random.Random(entry.name)
    for _ in range(20):
        C = random_torus_curve(rng, f.n)
        P = C.weight_vector()
        assert curve_orders(f, C).ord_grad <= weighted_order(f, P) - min(P)


@pytest.mark.parametrize("entry", nondegenerate_entries(), ids=lambda e: e.name)
def test_modified_pair_limits_are_independent(entry):
    f = entry.function
    rng = random.Random(1 + len(entry.name))
    for _ in range(10):
        C = random_torus_curve(rng, f.n, max_weight=9)
        pair = modified_gradient_pair(f, C, force_mixed=True)
        u, v = (_real_stack(x) for x in pair.limit_vectors)
        assert _gram_det(u, v) > 1e-20


@pytest.mark.parametrize("entry", [e for e in nondegenerate_entries() if e.function.is_holomorphic],
                         ids=lambda e: e.name)
def test_mixed_path_agrees_on_holomorphic_input(entry):
    f = entry.function
    rng = random.Random(7)
    for _ in range(10):
        C = random_torus_curve(rng, f.n, max_weight=12)
        assert curve_exponent(f, C, force_mixed=True) == curve_exponent(f, C)


def test_sampler_on_small_examples():
    assert sample_lower_bound(parse("z1^3+z2^7"), budget=CurveBudget(curves=200)).lower == 6
    assert sample_lower_bound(parse("z1^2+z2^2"), budget=CurveBudget(curves=50)).lower == 1


def test_sampler_is_deterministic():
    f = parse("z1^3+z1*z2^2+z2*z3^3+z3^5")
    a = sample_lower_bound(f, budget=CurveBudget(curves=120, seed=4))
    b = sample_lower_bound(f, budget=CurveBudget(curves=120, seed=4))
    assert a.to_json() == b.to_json()


def test_curve_validation():
    with pytest.raises(ValueError):
        MonomialCurve(2, (0,), (0,), (QQi(1),))
    with pytest.raises(ValueError):
        MonomialCurve(2, (0,), (1,), (QQi(0),))
