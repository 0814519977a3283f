"""Reference germs with known behaviour, plus a generator of random sparse ones."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import QQi
from .mixedpoly import ExponentPair, MixedFunction, parse


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    expression: str
    nondegenerate: bool = True
    expected_upper: Fraction | None = None
    expected_lower: Fraction | None = None

    @property
    def function(self) -> MixedFunction:
        return parse(self.expression)


def _q(a, b=1):
    return Fraction(a, b)


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry("jdual", "(z1^9+z2^3+z3^6)*z2+z3^7+z4^7", expected_upper=_q(11), expected_lower=_q(11)),
    CatalogEntry("cyclic-weighted", "z1^2*z2+z2^3*z3+z3^4*z1+z4^2",
                 expected_upper=_q(21, 4), expected_lower=_q(21, 4)),
    CatalogEntry("a1", "z1^2+z2^2", expected_upper=_q(1), expected_lower=_q(1)),
    CatalogEntry("a2", "z1^2+z2^3", expected_upper=_q(2), expected_lower=_q(2)),
    CatalogEntry("e6", "z1^3+z2^4", expected_upper=_q(3), expected_lower=_q(3)),
    CatalogEntry("brieskorn-3-7", "z1^3+z2^7", expected_upper=_q(6), expected_lower=_q(6)),
    CatalogEntry("exceptional-axis", "z1^7+z1^4*z2+z2^7"),
    CatalogEntry("binary-quartic", "z1^3*z2+z2^3*z1", expected_upper=_q(3), expected_lower=_q(3)),
    CatalogEntry("e7", "z1^3+z1*z2^3"),
    CatalogEntry("d5", "z1^2*z2+z2^4"),
    CatalogEntry("ternary-cubic", "z1^3+z2^3+z3^3", expected_upper=_q(2), expected_lower=_q(2)),
    CatalogEntry("ternary-2-3-4", "z1^2+z2^3+z3^4", expected_upper=_q(3), expected_lower=_q(3)),
    CatalogEntry("chain-3", "z1^3+z1*z2^2+z2*z3^3+z3^5"),
    CatalogEntry("mixed-cusp", "z1^2*~z1+z2^3", expected_upper=_q(2)),
    CatalogEntry("mixed-a1", "z1^2+z2*~z2^2"),
    # degenerate on purpose
    CatalogEntry("square-of-line", "(z1+z2)^2", nondegenerate=False),
    CatalogEntry("norm-square", "z1*~z1+z2*~z2", nondegenerate=False),
    CatalogEntry("loj-degenerate", "z1^2*z3-z2^2*z3+z3^3", nondegenerate=False),
)


def nondegenerate_entries() -> list[CatalogEntry]:
    return [e for e in CATALOG if e.nondegenerate]


def holomorphic_entries() -> list[CatalogEntry]:
    return [e for e in nondegenerate_entries() if e.function.is_holomorphic]


def entry(name: str) -> CatalogEntry:
    for e in CATALOG:
        if e.name == name:
            return e
    raise KeyError(name)


def brieskorn(a: int, b: int) -> MixedFunction:
    return MixedFunction.holomorphic(2, {(a, 0): 1, (0, b): 1})


def shift_variables(f: MixedFunction, offset: int, n: int) -> MixedFunction:
    """Move f's variables up by offset inside an n-variable ambient space."""
    pad_lo, pad_hi = (0,) * offset, (0,) * (n - offset - f.n)
    return MixedFunction.from_dict(n, {
        ExponentPair(pad_lo + e.nu + pad_hi, pad_lo + e.mu + pad_hi): c for e, c in f.terms
    })


def join(g: MixedFunction, h: MixedFunction) -> MixedFunction:
    """g(z') + h(z'') on disjoint variable blocks."""
    n = g.n + h.n
    return shift_variables(g, 0, n) + shift_variables(h, g.n, n)


def random_sparse(rng: random.Random, max_n: int = 4, max_terms: int = 8, max_exp: int = 6,
                  mixed_rate: float = 0.0) -> MixedFunction:
    """Random sparse germ vanishing at the origin.

    Each variable gets a pure power with high probability so that a fair share
    of draws has an isolated singularity.
    """
    n = rng.randint(1, max_n)
    terms: dict[ExponentPair, QQi] = {}

    def coeff():
        c = QQi(rng.randint(-3, 3), rng.randint(-3, 3) if rng.random() < 0.3 else 0)
        return c if c != QQi(0) else QQi(1)

    for i in range(n):
        if rng.random() < 0.85:
            nu = [0] * n
            nu[i] = rng.randint(2, max_exp)
            terms[ExponentPair(tuple(nu), (0,) * n)] = coeff()
    while len(terms) < rng.randint(max(1, len(terms)), max_terms):
        nu = [rng.randint(0, max_exp // 2) for _ in range(n)]
        mu = [0] * n
        if rng.random() < mixed_rate:
            k = rng.randrange(n)
            mu[k] = rng.randint(1, 2)
        if sum(nu) + sum(mu) < 2:
            continue
        terms[ExponentPair(tuple(nu), tuple(mu))] = coeff()
    return MixedFunction.from_dict(n, terms)
