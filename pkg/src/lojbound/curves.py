"""Gradient orders along monomial test curves, modified gradient pairs for mixed
functions, curve exponents and a sampled lower bound for the gradient exponent.

A curve z_i(t) = a_i t^{p_i} (+ optional higher terms) is substituted into the
Wirtinger derivatives; t is a real parameter, so conj(z_i(t)) has conjugated
coefficients and the same exponents. Curves whose coefficients are all
Gaussian rationals are handled exactly. Other coefficients (roots found
numerically) go through a 60-digit mpmath path, and every order obtained that
way is re-validated from the slope of |grad f| between two values of t.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import mpmath
import numpy as np

from .errors import IterationBoundError, LojboundError, NonIsolatedSingularityError
from .gaussian import QQi
from .mixedpoly import (
    MixedFunction,
    compress,
    face_function,
    interaction_components,
    restrict,
    weighted_order,
    wirtinger_derivative,
)

INFINITY = math.inf
DPS = 60
# a float coefficient counts as cancelled below this fraction of its term mass
RTOL = mpmath.mpf(10) ** -30


@dataclass(frozen=True)
class MonomialCurve:
    """z_i(t) = a_i t^{p_i} for i in ``support`` (0-based), zero elsewhere."""

    n: int
    support: tuple[int, ...]
    weights: tuple[int, ...]
    coeffs: tuple
    higher_terms: tuple[tuple[int, object, int], ...] = ()

    def __post_init__(self):
        if len(self.support) != len(self.weights) or len(self.support) != len(self.coeffs):
            raise ValueError("support, weights and coeffs must align")
        if any(p < 1 for p in self.weights):
            raise ValueError("curve weights must be positive integers")
        if any(not c for c in self.coeffs):
            raise ValueError("curve coefficients must be non-zero")
        if not self.support:
            raise ValueError("a test curve needs at least one non-zero coordinate")

    @property
    def exact(self) -> bool:
        return all(isinstance(c, QQi) for c in self.coeffs) and all(
            isinstance(c, QQi) for _, c, _ in self.higher_terms
        )

    @property
    def ord_z(self) -> int:
        orders = list(self.weights) + [e for _, _, e in self.higher_terms]
        return min(orders)

    def weight_vector(self) -> tuple[int, ...]:
        """Weights with 0 outside the support."""
        w = [0] * self.n
        for i, p in zip(self.support, self.weights):
            w[i] = p
        return tuple(w)

    def describe(self) -> list[str]:
        out = []
        for i in range(self.n):
            if i in self.support:
                k = self.support.index(i)
                out.append(f"z{i + 1} = ({_fmt_coeff(self.coeffs[k])})*t^{self.weights[k]}")
            else:
                out.append(f"z{i + 1} = 0")
        for i, c, e in self.higher_terms:
            out.append(f"z{i + 1} += ({_fmt_coeff(c)})*t^{e}")
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "support": [i + 1 for i in self.support],
            "weights": list(self.weights),
            "coeffs": [_fmt_coeff(c) for c in self.coeffs],
            "exact": self.exact,
        }


def _fmt_coeff(c) -> str:
    if isinstance(c, QQi):
        return str(c)
    c = complex(c)
    return f"{c.real:.12g}{c.imag:+.12g}i"


# ---------------------------------------------------------------------------
# series arithmetic: dict exponent -> [value, mass]; mass only matters in float mode


class _Exact:
    float_mode = False

    @staticmethod
    def coeff(c):
        return QQi.coerce(c)

    @staticmethod
    def conj(x):
        return x.conjugate()

    @staticmethod
    def mass(x):
        return 0

    @staticmethod
    def zero():
        return QQi(0)

    @staticmethod
    def is_zero(v, m) -> bool:
        return not v


class _Float:
    float_mode = True

    @staticmethod
    def coeff(c):
        if isinstance(c, QQi):
            return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                              mpmath.mpf(c.im.numerator) / c.im.denominator)
        return mpmath.mpc(c)

    @staticmethod
    def conj(x):
        return mpmath.conj(x)

    @staticmethod
    def mass(x):
        return abs(x)

    @staticmethod
    def zero():
        return mpmath.mpc(0)

    @staticmethod
    def is_zero(v, m) -> bool:
        return abs(v) <= RTOL * m


def _arith(curve: MonomialCurve):
    return _Exact if curve.exact else _Float


def _series_mul(A: dict, B: dict, ar) -> dict:
    out: dict = {}
    for e1, (v1, m1) in A.items():
        for e2, (v2, m2) in B.items():
            e = e1 + e2
            if e in out:
                v, m = out[e]
                out[e] = [v + v1 * v2, m + m1 * m2]
            else:
                out[e] = [v1 * v2, m1 * m2]
    return out


class _Substituter:
    """Caches coordinate powers of one curve for repeated substitution."""

    def __init__(self, curve: MonomialCurve):
        self.curve = curve
        self.ar = _arith(curve)
        ar = self.ar
        self.coord: dict[int, dict] = {}
        for i, p, c in zip(curve.support, curve.weights, curve.coeffs):
            v = ar.coeff(c)
            self.coord[i] = {p: [v, ar.mass(v)]}
        for i, c, e in curve.higher_terms:
            v = ar.coeff(c)
            s = self.coord.setdefault(i, {})
            if e in s:
                s[e] = [s[e][0] + v, s[e][1] + ar.mass(v)]
            else:
                s[e] = [v, ar.mass(v)]
        self.conj_coord = {
            i: {e: [ar.conj(v), m] for e, (v, m) in s.items()} for i, s in self.coord.items()
        }
        self.simple = not curve.higher_terms
        self._pow: dict = {}

    def _power(self, i: int, k: int, conj: bool) -> dict:
        key = (i, k, conj)
        if key not in self._pow:
            base = (self.conj_coord if conj else self.coord)[i]
            if k == 1:
                self._pow[key] = base
            else:
                self._pow[key] = _series_mul(self._power(i, k - 1, conj), base, self.ar)
        return self._pow[key]

    def __call__(self, g: MixedFunction) -> dict:
        ar = self.ar
        out: dict = {}
        for e, c in g.terms:
            if any((a or b) and i not in self.coord for i, (a, b) in enumerate(zip(e.nu, e.mu))):
                continue
            cv = ar.coeff(c)
            term = {0: [cv, ar.mass(cv)]}
            for i, (a, b) in enumerate(zip(e.nu, e.mu)):
                if a:
                    term = _series_mul(term, self._power(i, a, False), ar)
                if b:
                    term = _series_mul(term, self._power(i, b, True), ar)
            for ex, (v, m) in term.items():
                if ex in out:
                    out[ex] = [out[ex][0] + v, out[ex][1] + m]
                else:
                    out[ex] = [v, m]
        return out


def _order(series: dict, ar) -> tuple[float | int, object]:
    for e in sorted(series):
        v, m = series[e]
        if not ar.is_zero(v, m):
            return e, v
    return INFINITY, None


@dataclass(frozen=True)
class CurveOrders:
    ord_z: int
    holomorphic_orders: tuple
    conjugate_orders: tuple | None
    ord_grad: float | int
    exponent: Fraction | float
    exact: bool

    def to_json(self) -> dict:
        def enc(o):
            return "inf" if o == INFINITY else o
        return {
            "ord_z": self.ord_z,
            "orders": [enc(o) for o in self.holomorphic_orders],
            "conjugate_orders": None if self.conjugate_orders is None else [enc(o) for o in self.conjugate_orders],
            "ord_grad": enc(self.ord_grad),
            "exponent": "inf" if self.exponent == INFINITY else str(self.exponent),
        }


def _ratio(num, den) -> Fraction | float:
    return INFINITY if num == INFINITY else Fraction(num, den)


def _derivative_series(f: MixedFunction, sub: _Substituter, conjugated: bool) -> list[dict]:
    return [sub(wirtinger_derivative(f, j, conjugated)) for j in range(f.n)]


def curve_orders(f: MixedFunction, C: MonomialCurve, validate: bool = True) -> CurveOrders:
    """Exact t-orders of every Wirtinger derivative along C."""
    if C.n != f.n:
        raise ValueError("curve and function dimensions differ")
    with mpmath.workdps(DPS):
        sub = _Substituter(C)
        ar = sub.ar
        hol = tuple(_order(s, ar)[0] for s in _derivative_series(f, sub, False))
        conj = None
        if not f.is_holomorphic:
            conj = tuple(_order(s, ar)[0] for s in _derivative_series(f, sub, True))
        ord_grad = min(hol + (conj or ()))
        if ar.float_mode and validate and ord_grad != INFINITY:
            _validate_slope(f, C, ord_grad)
    return CurveOrders(C.ord_z, hol, conj, ord_grad, _ratio(ord_grad, C.ord_z), C.exact)


# ---------------------------------------------------------------------------
# float-path validation


class OrderValidationError(ArithmeticError):
    """A floating order disagreed with the observed growth of |grad f|."""


def _grad_norm_at(f: MixedFunction, C: MonomialCurve, t) -> mpmath.mpf:
    z = [mpmath.mpc(0)] * f.n
    for i, p, c in zip(C.support, C.weights, C.coeffs):
        z[i] += _Float.coeff(c) * t ** p
    for i, c, e in C.higher_terms:
        z[i] += _Float.coeff(c) * t ** e
    zb = [mpmath.conj(x) for x in z]
    total = mpmath.mpf(0)
    for conj in ((False, True) if not f.is_holomorphic else (False,)):
        for j in range(f.n):
            g = wirtinger_derivative(f, j, conj)
            val = mpmath.mpc(0)
            for e, c in g.terms:
                term = _Float.coeff(c)
                for i, (a, b) in enumerate(zip(e.nu, e.mu)):
                    if a:
                        term *= z[i] ** a
                    if b:
                        term *= zb[i] ** b
                val += term
            total += abs(val) ** 2
    return mpmath.sqrt(total)


def _validate_slope(f: MixedFunction, C: MonomialCurve, order: int, tol: float = 1e-6):
    """Check log2(|grad f(t)| / |grad f(t/2)|) against ``order`` for a small t."""
    with mpmath.workdps(3 * DPS):
        last = None
        for k in range(2, 40):
            t = mpmath.mpf(2) ** (-3 * k)
            a = _grad_norm_at(f, C, t)
            b = _grad_norm_at(f, C, t / 2)
            if a == 0 or b == 0:
                continue
            slope = mpmath.log(a / b, 2)
            last = float(slope)
            if abs(slope - order) < tol:
                return
    raise OrderValidationError(f"float order {order} not confirmed (last slope {last})")


# ---------------------------------------------------------------------------
# modified gradient pairs


@dataclass(frozen=True)
class ModifiedPair:
    base: str
    correction: tuple[tuple[str, object, int], ...]
    orders: tuple
    limit_vectors: tuple
    iterations: int


def _vec_order(vec: list[dict], ar):
    best = INFINITY
    for s in vec:
        o, _ = _order(s, ar)
        best = min(best, o)
    if best == INFINITY:
        return INFINITY, None
    lead = []
    for s in vec:
        if best in s and not ar.is_zero(*s[best]):
            lead.append(s[best][0])
        else:
            lead.append(ar.zero())
    return best, lead


def _real_inner(u, v, ar):
    total = 0
    for a, b in zip(u, v):
        if ar.float_mode:
            total += (a * mpmath.conj(b)).real
        else:
            total += (a * b.conjugate()).re
    return total


def _combine(X: list[dict], Y: list[dict], rho, shift: int, ar) -> list[dict]:
    """X - rho t^shift Y, componentwise."""
    out = []
    for xs, ys in zip(X, Y):
        s = {e: list(v) for e, v in xs.items()}
        for e, (v, m) in ys.items():
            e2 = e + shift
            dv = v * rho
            dm = m * abs(rho) if ar.float_mode else 0
            if e2 in s:
                s[e2] = [s[e2][0] - dv, s[e2][1] + dm]
            else:
                s[e2] = [-dv, dm]
        if not ar.float_mode:
            s = {e: v for e, v in s.items() if v[0]}
        out.append(s)
    return out


def _pair_order_limit(f: MixedFunction, C: MonomialCurve) -> int | None:
    """d(P, f^I) - m(P) for the curve weight P, or None when f^I vanishes."""
    fI = restrict(f, C.support)
    if fI.is_zero:
        return None
    P = C.weight_vector()
    return int(weighted_order(fI, P)) - min(C.weights)


def modified_gradient_pair(f: MixedFunction, C: MonomialCurve, force_mixed: bool = False) -> ModifiedPair:
    """(d-bar g, d-bar h) along C for g = Re f, h = Im f, corrected until the
    normalized leading vectors are independent over the reals."""
    with mpmath.workdps(DPS):
        sub = _Substituter(C)
        ar = sub.ar
        half = QQi(1, 0) / 2 if not ar.float_mode else mpmath.mpf(1) / 2
        hol = _derivative_series(f, sub, False)
        if f.is_holomorphic and not force_mixed:
            o, lead = _vec_order(hol, ar)
            if o == INFINITY:
                raise NonIsolatedSingularityError("the gradient vanishes identically along the curve")
            vg = [ar.conj(x) * half for x in lead]
            vh = [ar.conj(x) * half * _imag_unit(ar) for x in lead]
            return ModifiedPair("trivial", (), (o, o), (tuple(vg), tuple(vh)), 0)
        anti = _derivative_series(f, sub, True)
        G, H = [], []
        iu = _imag_unit(ar)
        for a, b in zip(hol, anti):
            ca = {e: [ar.conj(v), m] for e, (v, m) in a.items()}
            gs, hs = {}, {}
            for e in set(ca) | set(b):
                bv, bm = b.get(e, [ar.zero(), 0])
                av, am = ca.get(e, [ar.zero(), 0])
                gs[e] = [(bv + av) * half, (bm + am) / 2 if ar.float_mode else 0]
                hs[e] = [(bv - av) * half / iu, (bm + am) / 2 if ar.float_mode else 0]
            if not ar.float_mode:
                gs = {e: v for e, v in gs.items() if v[0]}
                hs = {e: v for e, v in hs.items() if v[0]}
            G.append(gs)
            H.append(hs)
        limit = _pair_order_limit(f, C)
        oG, vG = _vec_order(G, ar)
        oH, vH = _vec_order(H, ar)
        start = min(oG, oH)
        if start == INFINITY:
            raise NonIsolatedSingularityError("the gradient vanishes identically along the curve")
        if limit is None:
            max_exp = max((e for s in G + H for e in s), default=0)
            limit = 2 * max_exp
        bound = max(1, limit - start + 1)
        corrections = []
        base = "d-bar g, d-bar h"
        it = 0
        while True:
            if oG == INFINITY or oH == INFINITY:
                raise IterationBoundError(
                    "one of the modified gradients vanishes identically along the curve"
                )
            a = _real_inner(vG, vG, ar)
            b = _real_inner(vG, vH, ar)
            c = _real_inner(vH, vH, ar)
            det = a * c - b * b
            dependent = (det <= RTOL * a * c) if ar.float_mode else det == 0
            if not dependent:
                return ModifiedPair(base, tuple(corrections), (oG, oH), (tuple(vG), tuple(vH)), it)
            it += 1
            if it > bound:
                raise IterationBoundError(
                    f"no good modified gradient pair after {bound} corrections"
                )
            if oG <= oH:
                rho = b / a
                H = _combine(H, G, rho, oH - oG, ar)
                corrections.append(("h", rho, oH - oG))
                base = "kept d-bar g"
                oH, vH = _vec_order(H, ar)
                new = oH
            else:
                rho = b / c
                G = _combine(G, H, rho, oG - oH, ar)
                corrections.append(("g", rho, oG - oH))
                base = "kept d-bar h"
                oG, vG = _vec_order(G, ar)
                new = oG
            if new != INFINITY and new > limit:
                raise IterationBoundError(
                    f"modified order {new} exceeds d(P, f^I) - m(P) = {limit}"
                )


def _imag_unit(ar):
    return mpmath.mpc(0, 1) if ar.float_mode else QQi(0, 1)


def curve_exponent(f: MixedFunction, C: MonomialCurve, force_mixed: bool = False) -> Fraction | float:
    """ord grad f / ord z (holomorphic) or max of the modified pair orders / ord z."""
    if f.is_holomorphic and not force_mixed:
        return curve_orders(f, C).exponent
    pair = modified_gradient_pair(f, C, force_mixed)
    if not C.exact:
        with mpmath.workdps(DPS):
            _validate_slope(f, C, curve_orders(f, C, validate=False).ord_grad)
    return _ratio(max(pair.orders), C.ord_z)


# ---------------------------------------------------------------------------
# sampling


@dataclass(frozen=True)
class CurveBudget:
    curves: int = 2000
    seed: int = 0
    max_weight: int = 50
    polar_starts: int = 16
    polar_limit: int = 60


@dataclass
class SampleResult:
    lower: Fraction | float | None
    witness: MonomialCurve | None
    orders: CurveOrders | None
    evaluated: int
    skipped: int = 0
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lower": None if self.lower is None else ("inf" if self.lower == INFINITY else str(self.lower)),
            "witness": None if self.witness is None else {
                **self.witness.to_json(),
                "curve": self.witness.describe(),
                "orders": None if self.orders is None else self.orders.to_json(),
            },
            "evaluated": self.evaluated,
            "skipped": self.skipped,
        }


def _rand_gauss_int(rng: random.Random, r: int = 3) -> QQi:
    while True:
        c = QQi(rng.randint(-r, r), rng.randint(-r, r))
        if c:
            return c


def _curve(n, idx, weights, coeffs) -> MonomialCurve:
    order = sorted(range(len(idx)), key=lambda k: idx[k])
    return MonomialCurve(n, tuple(idx[k] for k in order), tuple(int(weights[k]) for k in order),
                         tuple(coeffs[k] for k in order))


def _component_weights(g: MixedFunction) -> list[tuple[int, ...]]:
    """Fan vertices of the component and of its Jacobian refinement."""
    from .dualfan import jacobian_diagram
    from .newton import build_polyhedron
    try:
        jd = jacobian_diagram(g)
        ws = [v.weight for v in jd.fan] + [v.weight for v in jd.vertices]
    except (LojboundError, ValueError):
        ws = [fc.normal for fc in build_polyhedron(g).facets]
    seen = []
    for w in ws:
        if w not in seen:
            seen.append(w)
    return seen


def _polar_coefficients(g: MixedFunction, P: Sequence[int], budget: CurveBudget,
                        key: tuple[int, ...]) -> list[tuple[int, list]]:
    """Torus points a where low-order derivative face functions vanish.

    For each threshold on d(P, g_j) the derivatives below it are forced to
    vanish at leading order; solutions are found in floating point and
    polished to full precision with mpmath.findroot.
    """
    from .nondeg import NDBudget, torus_search

    m = g.n
    dj = []
    for j in range(m):
        gj = wirtinger_derivative(g, j)
        if gj.is_zero:
            continue
        dj.append((weighted_order(gj, P), j, face_function(gj, P)))
    dj.sort()
    out = []
    levels = sorted({d for d, _, _ in dj})
    for lvl in levels[:-1] if len(levels) > 1 else []:
        kill = [(j, fj) for d, j, fj in dj if d <= lvl]
        if len(kill) > m - 1 or any(len(fj) == 1 for _, fj in kill):
            break
        nd = NDBudget(starts=budget.polar_starts, iters=150, seed=budget.seed)
        found = torus_search([[(0, fj)] for _, fj in kill], m, nd, key + (int(lvl * 1000),))
        if found.residual > 1e-6:
            continue
        z0 = [complex(np.exp(found.X[i] + 1j * found.X[m + i])) for i in range(m)]
        polished = _polish([fj for _, fj in kill], z0)
        if polished is not None:
            out.append((len(kill), polished))
    return out


def _polish(eqs: list[MixedFunction], z0: list[complex]) -> list | None:
    """Newton-polish a torus zero of holomorphic equations at full precision.

    len(eqs) coordinates are solved for; the others stay at their floating
    values. Coordinate choices are tried until the square system converges.
    """
    m = len(z0)
    k = len(eqs)
    with mpmath.workdps(DPS + 20):
        fixed = [mpmath.mpc(z) for z in z0]
        for free in combinations(range(m), k):
            z = _solve_square(eqs, fixed, list(free))
            if z is not None:
                return z
    return None


def _solve_square(eqs, fixed, free):
    def F(*xs):
        z = list(fixed)
        for i, x in zip(free, xs):
            z[i] = x
        vals = []
        for g in eqs:
            acc = mpmath.mpc(0)
            for e, c in g.terms:
                term = _Float.coeff(c)
                for i, a in enumerate(e.nu):
                    if a:
                        term *= z[i] ** a
                acc += term
            vals.append(acc)
        return vals

    try:
        sol = mpmath.findroot(F, [fixed[i] for i in free],
                              tol=mpmath.mpf(10) ** -(2 * DPS), maxsteps=60)
    except (ValueError, ZeroDivisionError):
        return None
    sol = [sol[i] for i in range(len(free))] if isinstance(sol, mpmath.matrix) else [sol]
    z = list(fixed)
    for i, x in zip(free, sol):
        z[i] = x
    if any(abs(x) < mpmath.mpf(10) ** -8 for x in z):
        return None
    scale = max(abs(x) for x in z)
    if max(abs(v) for v in F(*sol)) > mpmath.mpf(10) ** -(DPS + 10) * (1 + scale) ** 40:
        return None
    return z


def sample_lower_bound(f: MixedFunction, diagram=None, budget: CurveBudget = CurveBudget(),
                       force_mixed: bool = False) -> SampleResult:
    """Best curve exponent over a generated population of monomial curves."""
    rng = random.Random(budget.seed)
    n = f.n
    result = SampleResult(None, None, None, 0)
    seen: set = set()

    def consider(C: MonomialCurve) -> bool:
        if result.evaluated >= budget.curves:
            return False
        key = (C.support, C.weights, tuple(str(c) for c in C.coeffs))
        if key in seen:
            return True
        seen.add(key)
        result.evaluated += 1
        try:
            val = curve_exponent(f, C, force_mixed)
        except (IterationBoundError, OrderValidationError) as exc:
            result.skipped += 1
            result.notes.append(f"{type(exc).__name__}: {exc}")
            return True
        except NonIsolatedSingularityError:
            val = INFINITY
        better = result.lower is None or val > result.lower or (
            val == result.lower and C.exact and result.witness is not None and not result.witness.exact
        )
        if better:
            result.lower = val
            result.witness = C
        return True

    comps = [c for c in interaction_components(f) if f.variables() & set(c.members)]
    comp_data = []
    for comp in comps:
        idx = list(comp.members)
        g = compress(f, idx)
        comp_data.append((idx, g))

    # (b) axis and two-variable curves
    for idx, g in comp_data:
        maxdeg = max(sum(e.combined) for e, _ in g.terms)
        for i in idx:
            consider(_curve(n, [i], [1], [QQi(1)]))
        for i, j in combinations(idx, 2):
            for N in range(1, min(budget.max_weight, maxdeg + 1) + 1):
                consider(_curve(n, [i, j], [N, 1], [QQi(1), QQi(1)]))
                consider(_curve(n, [i, j], [1, N], [QQi(1), QQi(1)]))

    # (a) fan vertices, their coordinate subsets and small perturbations
    polar_jobs = []
    for cidx, (idx, g) in enumerate(comp_data):
        if g.n < 1:
            continue
        for w in _component_weights(g):
            pos = [k for k in range(g.n) if w[k] > 0]
            if not pos:
                continue
            variants = [tuple(w)]
            big = 2 * max(w) + 1
            variants.append(tuple(x if x > 0 else big for x in w))
            for k in range(g.n):
                for dlt in (-1, 1):
                    v = list(w)
                    if v[k] + dlt >= 1:
                        v[k] += dlt
                        variants.append(tuple(v))
            for v in variants:
                sup = [k for k in range(g.n) if v[k] > 0]
                weights = [v[k] for k in sup]
                if max(weights) > 4 * budget.max_weight:
                    continue
                real_idx = [idx[k] for k in sup]
                consider(_curve(n, real_idx, weights, [QQi(1)] * len(sup)))
                consider(_curve(n, real_idx, weights, [_rand_gauss_int(rng) for _ in sup]))
            if all(x > 0 for x in w):
                polar_jobs.append((cidx, w))

    # (d) polar-style coefficients solving low-order face equations
    if f.is_holomorphic:
        for job, (cidx, w) in enumerate(polar_jobs[:budget.polar_limit]):
            idx, g = comp_data[cidx]
            for _, coeffs in _polar_coefficients(g, w, budget, (cidx, job)):
                exact = _rationalize(coeffs)
                consider(_curve(n, idx, list(w), exact if exact is not None else coeffs))

    # (c) random curves
    while result.evaluated < budget.curves:
        idx, g = comp_data[rng.randrange(len(comp_data))]
        size = rng.randint(1, len(idx))
        sup = sorted(rng.sample(idx, size))
        weights = [rng.randint(1, budget.max_weight) for _ in sup]
        before = result.evaluated
        consider(_curve(n, sup, weights, [_rand_gauss_int(rng) for _ in sup]))
        if result.evaluated == before:
            # duplicate draw; make sure the loop still terminates
            result.evaluated += 1
    if result.witness is not None and result.lower != INFINITY:
        try:
            result.orders = curve_orders(f, result.witness)
        except OrderValidationError:
            result.orders = None
    return result


def _rationalize(coeffs: Sequence) -> list | None:
    """Gaussian-rational coefficients when every value is one (small denominators)."""
    out = []
    for c in coeffs:
        c = complex(c)
        re = Fraction(c.real).limit_denominator(10_000)
        im = Fraction(c.imag).limit_denominator(10_000)
        if abs(float(re) - c.real) > 1e-12 * max(1, abs(c)) or abs(float(im) - c.imag) > 1e-12 * max(1, abs(c)):
            return None
        out.append(QQi(re, im))
    return out
