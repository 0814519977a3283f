import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lojbound.hull import cone_facets, dot, rank
from lojbound.mixedpoly import MixedFunction, parse
from lojbound.newton import build_polyhedron, hull_of_points, min_face

from conftest import mixed_functions, weights

JDUAL = parse("(z1^9+z2^3+z3^6)*z2+z3^7+z4^7")


def test_jdual_facets():
    poly = build_polyhedron(JDUAL)
    got = {(fc.normal, fc.offset) for fc in poly.facets}
    assert got == {
        ((0, 0, 0, 1), 0), ((0, 0, 1, 0), 0), ((0, 1, 0, 0), 0), ((1, 0, 0, 0), 0),
        ((0, 7, 1, 1), 7), ((7, 21, 12, 12), 84),
    }
    assert poly.boundary_dim == 3


def test_boundary_dimension_of_a_single_monomial():
    assert build_polyhedron(parse("z1^2*z2")).boundary_dim == 0
    assert build_polyhedron(parse("z1^3+z2^7")).boundary_dim == 1


def test_one_variable():
    poly = build_polyhedron(parse("z1^5 + 3*z1^2"))
    assert [(fc.normal, fc.offset) for fc in poly.facets] == [((1,), 2)]


def test_conjugates_share_the_combined_exponent():
    poly = build_polyhedron(parse("z1^2*~z1 + z1*~z1^2 + z2^3"))
    assert poly.points == ((0, 3), (3, 0))
    assert len(poly.support[1].sources) == 2


def test_cone_facets_over_a_diamond():
    gens = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
    normals = sorted(w for w, _ in cone_facets(gens))
    assert normals == [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)]


def test_matches_scipy_hull_on_random_sets():
    spatial = pytest.importorskip("scipy.spatial")
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 3)
        pts = sorted({tuple(rng.randint(0, 6) for _ in range(n)) for _ in range(rng.randint(n + 1, 9))})
        if rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) < n:
            continue
        hull = spatial.ConvexHull(pts)
        ours = hull_of_points(pts, n)
        # every strictly positive facet of ours supports a facet of the plain hull
        for fc in ours:
            if fc.strictly_positive:
                assert any(
                    all(abs(sum(a * b for a, b in zip(eq[:-1], p)) + eq[-1]) < 1e-9 for p in fc.points)
                    for eq in hull.equations
                )


@given(mixed_functions())
def test_support_lies_above_every_facet(f):
    poly = build_polyhedron(f)
    for fc in poly.facets:
        assert all(x >= 0 for x in fc.normal) and any(fc.normal)
        for p in poly.points:
            assert dot(fc.normal, p) >= fc.offset
        assert all(dot(fc.normal, p) == fc.offset for p in fc.points)


@given(st.data(), st.integers(1, 7), st.integers(1, 7))
def test_min_face_is_scale_invariant(data, a, b):
    f = data.draw(mixed_functions())
    P = data.draw(weights(f.n))
    poly = build_polyhedron(f)
    base = min_face(poly, P)
    scaled = min_face(poly, [p * Fraction(a, b) for p in P])
    assert scaled.points == base.points
    assert scaled.value == base.value * Fraction(a, b)


@given(st.data())
def test_segment_face_is_the_intersection(data):
    f = data.draw(mixed_functions(max_n=3, max_terms=6))
    poly = build_polyhedron(f)
    P = data.draw(weights(f.n, lo=0, hi=5))
    Q = data.draw(weights(f.n, lo=0, hi=5))
    if not any(P) or not any(Q):
        return
    FP, FQ = min_face(poly, P).points, min_face(poly, Q).points
    common = FP & FQ
    if not common:
        return
    for s in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        R = [s * p + (1 - s) * q for p, q in zip(P, Q)]
        assert min_face(poly, R).points == common


@given(mixed_functions(), st.randoms(use_true_random=False))
def test_facets_do_not_depend_on_term_order(f, rnd):
    terms = list(f.terms)
    rnd.shuffle(terms)
    g = MixedFunction.from_dict(f.n, dict(terms))
    assert build_polyhedron(g).facets == build_polyhedron(f).facets


def test_dimension_cap():
    f = MixedFunction.holomorphic(7, {tuple(int(i == j) * 2 for j in range(7)): 1 for i in range(7)})
    with pytest.raises(ValueError):
        build_polyhedron(f)
