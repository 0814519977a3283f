import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lojbound.bounds import BoundConfig
from lojbound.curves import CurveBudget, MonomialCurve
from lojbound.gaussian import QQi
from lojbound.mixedpoly import ExponentPair, MixedFunction
from lojbound.nondeg import NDBudget

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# small budgets keep the property suites quick without changing verdicts on the catalog
FAST_ND = NDBudget(starts=16, iters=120)
FAST = BoundConfig(nd=FAST_ND, curves=CurveBudget(curves=150))

gaussian_ints = st.builds(QQi, st.integers(-4, 4), st.integers(-4, 4)).filter(lambda c: c != QQi(0))


@st.composite
def mixed_functions(draw, max_n=3, max_exp=3, max_terms=5, holomorphic=False):
    n = draw(st.integers(1, max_n))
    vec = st.tuples(*[st.integers(0, max_exp)] * n)
    zero = (0,) * n
    mu_strategy = st.just(zero) if holomorphic else vec
    pairs = st.builds(ExponentPair, vec, mu_strategy).filter(lambda e: sum(e.nu) + sum(e.mu) > 0)
    terms = draw(st.dictionaries(pairs, gaussian_ints, min_size=1, max_size=max_terms))
    return MixedFunction.from_dict(n, terms)


@st.composite
def weights(draw, n, lo=1, hi=12):
    return tuple(Fraction(draw(st.integers(lo, hi))) for _ in range(n))


def random_torus_curve(rng: random.Random, n: int, max_weight: int = 20, exact: bool = True) -> MonomialCurve:
    ws = tuple(rng.randint(1, max_weight) for _ in range(n))
    if exact:
        cs = []
        while len(cs) < n:
            c = QQi(Fraction(rng.randint(-9, 9), rng.randint(1, 4)), Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
            if c != QQi(0):
                cs.append(c)
    else:
        cs = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(n)]
    return MonomialCurve(n, tuple(range(n)), ws, tuple(cs))


@pytest.fixture
def rng():
    return random.Random(20240611)


def admissible_pair(rng: random.Random, poly, tries: int = 200):
    """Two strictly positive weights whose minimal faces share a support point.

    Both are non-negative combinations of facet normals through one point, so
    that point is minimal for each of them.
    """
    for _ in range(tries):
        p = rng.choice(poly.points)
        normals = [fc.normal for fc in poly.facets if p in fc.points]

        def draw():
            w = [0] * poly.n
            for nrm in normals:
                c = rng.randint(0, 5)
                w = [a + c * b for a, b in zip(w, nrm)]
            return tuple(w)

        P, Q = draw(), draw()
        if all(P) and all(Q):
            return P, Q
    return None


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_report = rep


class _Criterion:
    def __init__(self):
        self.detail = ""


@pytest.fixture
def criterion(request, capsys):
    """Prints one PASS/FAIL line per acceptance criterion once the test has run."""
    c = _Criterion()
    yield c
    rep = getattr(request.node, "call_report", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] {request.node.name}: {c.detail}")
