from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lojbound.errors import ParseError, ZeroFunctionError
from lojbound.gaussian import QQi
from lojbound.mixedpoly import (
    ExponentPair,
    MixedFunction,
    VariableSubset,
    compress,
    embed,
    face_function,
    format_function,
    interaction_components,
    parse,
    radial_degree,
    restrict,
    weighted_order,
    wirtinger_derivative,
)

from conftest import mixed_functions, weights

JDUAL = "(z1^9+z2^3+z3^6)*z2+z3^7+z4^7"


def test_norm_square_value():
    f = parse("z1*~z1")
    assert f.evaluate([QQi(3, 4)]) == QQi(25)


def test_expansion_of_product():
    f = parse(JDUAL)
    g = parse("z1^9*z2 + z2^4 + z2*z3^6 + z3^7 + z4^7")
    assert f == g
    assert f.n == 4 and f.is_holomorphic


def test_face_function_of_jdual():
    f = parse(JDUAL)
    assert face_function(f, (7, 21, 12, 12)) == parse("z1^9*z2+z2^4+z3^7+z4^7")
    assert weighted_order(f, (7, 21, 12, 12)) == 84


def test_coefficients_and_conjugates():
    f = parse("(1/2-2i)*z1^2*~z2 - 3/4i*z2 + 2*~z1^3")
    d = f.as_dict
    assert d[ExponentPair((2, 0), (0, 1))] == QQi(Fraction(1, 2), -2)
    assert d[ExponentPair((0, 1), (0, 0))] == QQi(0, Fraction(-3, 4))
    assert d[ExponentPair((0, 0), (3, 0))] == QQi(2)
    assert not f.is_holomorphic
    assert parse(format_function(f)) == f


def test_implicit_product_and_powers():
    assert parse("2z1 z2^2") == parse("2*z1*z2*z2")
    assert parse("(z1+z2)^2") == parse("z1^2+2*z1*z2+z2^2")
    assert parse("z1^3/3") == MixedFunction.holomorphic(1, {(3,): Fraction(1, 3)})


@pytest.mark.parametrize("text, where", [("z1 + ", 4), ("z1 ** z2", 4), ("z1^", 3)])
def test_syntax_errors_carry_position(text, where):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.position == where


def test_rejects_zero_constant_and_negative_powers():
    with pytest.raises(ZeroFunctionError):
        parse("z1 - z1")
    with pytest.raises(ParseError):
        parse("1 + z1")
    with pytest.raises(ParseError):
        parse("z1^-2")


def test_interaction_components():
    comps = interaction_components(parse(JDUAL))
    assert [c.one_based() for c in comps] == [[1, 2, 3], [4]]


def test_compress_embed_inverse():
    f = parse("z2^3*~z4 + z4^2")
    g = compress(f, [1, 3])
    assert g.n == 2
    assert embed(g, [1, 3], 4) == f


def test_evaluate_float_matches_exact():
    f = parse("(1+i)*z1^2*~z2 + z2^3 - 2*z1*~z1")
    z = [QQi(Fraction(1, 2), 1), QQi(-1, Fraction(1, 3))]
    exact = f.evaluate(z)
    approx = f.evaluate_float(np.array([[complex(0.5, 1), complex(-1, 1 / 3)]]))[0]
    assert abs(approx - complex(float(exact.re), float(exact.im))) < 1e-12


@given(mixed_functions())
def test_format_parse_round_trip(f):
    assert parse(format_function(f), n_hint=f.n) == f


@given(mixed_functions(), mixed_functions(), st.integers(0, 2), st.booleans())
def test_derivative_is_linear(f, g, j, conj):
    if f.n != g.n or j >= f.n:
        return
    lhs = wirtinger_derivative(f + g, j, conj)
    rhs = wirtinger_derivative(f, j, conj) + wirtinger_derivative(g, j, conj)
    assert lhs == rhs


@given(mixed_functions(max_terms=1), st.integers(0, 2), st.booleans())
def test_derivative_of_monomial_has_at_most_one_term(f, j, conj):
    if j < f.n:
        assert len(wirtinger_derivative(f, j, conj)) <= 1


@given(mixed_functions(holomorphic=True), st.integers(0, 2))
def test_holomorphic_functions_have_no_conjugate_derivative(f, j):
    if j < f.n:
        assert wirtinger_derivative(f, j, conjugated=True).is_zero


@given(mixed_functions(), st.sets(st.integers(0, 2)), st.sets(st.integers(0, 2)))
def test_restrict_composes_as_intersection(f, a, b):
    I, J = VariableSubset(tuple(a)), VariableSubset(tuple(b))
    assert restrict(restrict(f, I), J) == restrict(f, I & J)


@given(st.data())
def test_face_function_degrees(data):
    f = data.draw(mixed_functions())
    P = data.draw(weights(f.n))
    d = weighted_order(f, P)
    face = face_function(f, P)
    kept = {e for e, _ in face.terms}
    for e, _ in f.terms:
        if e in kept:
            assert radial_degree(P, e) == d
        else:
            assert radial_degree(P, e) > d
