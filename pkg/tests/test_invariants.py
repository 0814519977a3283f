import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lojbound.catalog import nondegenerate_entries
from lojbound.dualfan import STRICTLY_POSITIVE, fan_vertices, jacobian_diagram, vanishing_subspaces
from lojbound.errors import NonIsolatedSingularityError
from lojbound.invariants import (
    axis_monomial_table,
    convenient_profile,
    derivative_order,
    eta,
    eta_ij,
    eta_prime,
    invariant_sheet,
    normalize,
)
from lojbound.mixedpoly import face_function, parse, weighted_order, wirtinger_derivative
from lojbound.newton import build_polyhedron

from conftest import admissible_pair

JDUAL = parse("(z1^9+z2^3+z3^6)*z2+z3^7+z4^7")
CYCLIC = parse("z1^2*z2+z2^3*z3+z3^4*z1+z4^2")
HOLO = [e for e in nondegenerate_entries() if e.function.is_holomorphic]


def test_jdual_values():
    assert eta(JDUAL, (7, 21, 12, 12)) == 11
    assert eta(JDUAL, (2, 6, 3, 3)) == Fraction(19, 2)
    assert eta_prime(JDUAL, (2, 6, 3, 3), 0, 0) == 11
    sheet = invariant_sheet(JDUAL, jacobian_diagram(JDUAL))
    assert (sheet.eta_max, sheet.eta_J_max, sheet.eta_prime_J_max, sheet.eta_dprime) == (11, 11, 11, 11)


def test_cyclic_values():
    nw = normalize(CYCLIC, (18, 14, 8, 25))
    assert nw.hat == (Fraction(9, 25), Fraction(7, 25), Fraction(4, 25), Fraction(1, 2))
    assert eta(CYCLIC, (18, 14, 8, 25)) == Fraction(21, 4)


def test_convenient_profiles():
    p = convenient_profile(parse("z1^3+z2^7"))
    assert p.convenient and p.B == 7 and p.b == (3, 7) and p.has_non_exceptional
    p = convenient_profile(parse("z1^7+z1^4*z2+z2^7"))
    assert p.exceptional_flags == (True, False)
    assert not convenient_profile(JDUAL).convenient


def test_axis_monomials():
    subs = vanishing_subspaces(JDUAL)
    table = axis_monomial_table(JDUAL, subs)
    assert table.finite_values() == [9]
    assert table.xi == 9
    assert axis_monomial_table(CYCLIC, vanishing_subspaces(CYCLIC)).xi == 4


def test_non_isolated_is_reported():
    f = parse("z1^2*z2^2 + z1^5")
    with pytest.raises(NonIsolatedSingularityError):
        axis_monomial_table(f, vanishing_subspaces(f))


@pytest.mark.parametrize("entry", HOLO, ids=lambda e: e.name)
def test_eta_two_ways(entry):
    f = entry.function
    for v in fan_vertices(f):
        if v.kind != STRICTLY_POSITIVE:
            continue
        nw = normalize(f, v.weight)
        assert eta(f, v.weight) == 1 / nw.m - 1 == weighted_order(f, v.weight) / min(v.weight) - 1
        for i in range(f.n):
            for j in range(f.n):
                if nw.hat[i] == nw.m and nw.hat[j] >= nw.m:
                    assert eta_ij(f, nw.hat, i, j) <= eta(f, nw.hat)


@pytest.mark.parametrize("entry", HOLO, ids=lambda e: e.name)
def test_derivative_orders_on_fan_vertices(entry):
    f = entry.function
    for v in jacobian_diagram(f).vertices:
        if v.kind != STRICTLY_POSITIVE:
            continue
        d = weighted_order(f, v.weight)
        fP = face_function(f, v.weight)
        for j in range(f.n):
            fj = wirtinger_derivative(f, j)
            if fj.is_zero:
                continue
            dj = weighted_order(fj, v.weight)
            assert dj >= d - v.weight[j]
            if j in fP.variables():
                assert dj == d - v.weight[j]
            assert derivative_order(f, v.weight, j) == dj


@given(st.integers(1, 12))
def test_invariants_scale(k):
    for P in [(7, 21, 12, 12), (2, 6, 3, 3)]:
        kP = [k * p for p in P]
        assert eta(JDUAL, kP) == eta(JDUAL, P)
        assert eta_ij(JDUAL, kP, 0, 1) == eta_ij(JDUAL, P, 0, 1)
        assert eta_prime(JDUAL, kP, 1, 2) == eta_prime(JDUAL, P, 1, 2)


@pytest.mark.parametrize("entry", HOLO[:6], ids=lambda e: e.name)
def test_segment_monotonicity_sample(entry):
    f = entry.function
    poly = build_polyhedron(f)
    rng = random.Random(3)
    for _ in range(25):
        P, Q = admissible_pair(rng, poly)
        Ph, Qh = normalize(f, P).hat, normalize(f, Q).hat
        for s in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
            R = [s * a + (1 - s) * b for a, b in zip(Ph, Qh)]
            assert weighted_order(f, R) == 1
            assert eta(f, R) <= max(eta(f, Ph), eta(f, Qh))
