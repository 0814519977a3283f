import mpmath
import pytest

from lojbound.catalog import CATALOG, nondegenerate_entries
from lojbound.dualfan import vanishing_subspaces
from lojbound.invariants import axis_monomial_table
from lojbound.mixedpoly import gradient, parse
from lojbound.nondeg import (
    DEGENERATE,
    PRESUMED_OK,
    NDBudget,
    check_face_nondegeneracy,
    check_loj_nondegeneracy,
    critical_rows,
    torus_search,
)

from conftest import FAST_ND

HOLO_OK = [e for e in nondegenerate_entries() if e.function.is_holomorphic]


def _scaled_gradient_norm(f, z):
    """|grad f(z)| over the sum of term moduli of grad f, in 50 digits."""
    with mpmath.workdps(50):
        zz = [mpmath.mpc(c.real, c.imag) for c in z]
        num = den = mpmath.mpf(0)
        for g in gradient(f):
            val = mpmath.mpc(0)
            for e, c in g.terms:
                t = mpmath.mpc(float(c.re), float(c.im))
                for zi, k in zip(zz, e.nu):
                    t *= zi ** k
                val += t
                den += abs(t)
            num += abs(val) ** 2
        return float(mpmath.sqrt(num) / den)


def test_square_of_a_line_is_degenerate():
    f = parse("(z1+z2)^2")
    v = check_face_nondegeneracy(f, NDBudget(seed=1))
    assert v.status == DEGENERATE
    z1, z2 = v.witness.point
    assert abs(z1 + z2) < 1e-8
    assert _scaled_gradient_norm(f, v.witness.point) < 1e-9
    assert all(abs(c) >= mpmath.exp(-5) * 0.999 for c in v.witness.point)


def test_norm_square_is_degenerate():
    v = check_face_nondegeneracy(parse("z1*~z1+z2*~z2"), NDBudget(seed=1))
    assert v.status == DEGENERATE


def test_mixed_critical_face():
    # the vertex face z1^2*~z1 + z1*~z1^2 is real valued, so every torus point is critical
    v = check_face_nondegeneracy(parse("z1^2*~z1 + z1*~z1^2 + z2^3"), FAST_ND)
    assert v.status == DEGENERATE


def test_single_monomial_faces_are_skipped():
    # z1^2*z2^3 alone: every compact face is that one monomial
    v = check_face_nondegeneracy(parse("z1^2*z2^3"), FAST_ND)
    assert v.status == PRESUMED_OK
    assert v.effort["runs"] == 0


@pytest.mark.parametrize("entry", nondegenerate_entries(), ids=lambda e: e.name)
def test_catalog_is_presumed_ok(entry):
    f = entry.function
    assert check_face_nondegeneracy(f, FAST_ND).status == PRESUMED_OK
    subs = vanishing_subspaces(f)
    if subs:
        assert check_loj_nondegeneracy(f, axis_monomial_table(f, subs), FAST_ND).status == PRESUMED_OK


@pytest.mark.parametrize("entry", HOLO_OK, ids=lambda e: e.name)
def test_mixed_checker_agrees_on_holomorphic_input(entry):
    f = entry.function
    assert check_face_nondegeneracy(f, FAST_ND, force_mixed=True).status == PRESUMED_OK


def test_mixed_checker_finds_holomorphic_degeneracy():
    v = check_face_nondegeneracy(parse("(z1+z2)^2 + z1^5"), FAST_ND, force_mixed=True)
    assert v.status == DEGENERATE


def test_lojasiewicz_degenerate_example():
    f = parse("z1^2*z3-z2^2*z3+z3^3")
    table = axis_monomial_table(f, vanishing_subspaces(f))
    v = check_loj_nondegeneracy(f, table, FAST_ND)
    assert v.status == DEGENERATE
    assert "I={1,2}" in v.witness.face


def test_same_seed_same_witness():
    f = parse("(z1+z2)^2 + z1^3*z3 + z3^4")
    a = check_face_nondegeneracy(f, NDBudget(seed=11))
    b = check_face_nondegeneracy(f, NDBudget(seed=11))
    assert a == b
    assert a.witness.point == b.witness.point


def test_torus_search_finds_the_critical_point():
    # grad = (z1^2 - 4 z2, 2 z2 - 4 z1) vanishes on the torus only at (8, 16)
    res = torus_search(critical_rows(parse("z1^3/3 - 4*z1*z2 + z2^2")), 2, FAST_ND, (0,))
    assert res.residual < 1e-9
    z = [complex(mpmath.exp(res.X[i] + 1j * res.X[2 + i])) for i in range(2)]
    assert abs(z[0] - 8) < 1e-6 and abs(z[1] - 16) < 1e-6


@pytest.mark.parametrize("entry", [e for e in CATALOG if not e.nondegenerate], ids=lambda e: e.name)
def test_degenerate_entries_are_caught(entry):
    f = entry.function
    face = check_face_nondegeneracy(f, FAST_ND)
    if face.status == DEGENERATE:
        return
    v = check_loj_nondegeneracy(f, axis_monomial_table(f, vanishing_subspaces(f)), FAST_ND)
    assert v.status == DEGENERATE
