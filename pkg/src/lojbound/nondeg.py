"""Probabilistic verifiers for face non-degeneracy and Lojasiewicz non-degeneracy.

Every check is phrased as a system of rows N_j(z, theta) = sum_k e^{i s_k theta} G_jk(z, conj z)
that has a common zero on the torus (C*)^n exactly when the hypothesis fails.
A batched Levenberg-Marquardt search in log coordinates z = exp(u + i v)
minimises the scale-free residual sum |N_j / S_j|^2, where S_j is the sum of
the moduli of the terms of row j. A run ending below the tolerance is a
witness; it is re-evaluated with mpmath before being reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .mixedpoly import (
    MixedFunction,
    compress,
    face_function,
    gradient,
    wirtinger_derivative,
)
from .newton import NewtonPolyhedron, build_polyhedron, hull_of_points
from .dualfan import minkowski_support, DEFAULT_MINKOWSKI_CAP
from .errors import SizeCapError

PRESUMED_OK = "presumed-ok"
DEGENERATE = "degenerate-witness"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NDBudget:
    starts: int = 64
    iters: int = 200
    tol: float = 1e-9
    box: float = 5.0
    seed: int = 0
    # best residuals in (tol, suspicious] get a longer polish before a verdict
    suspicious: float = 1e-5
    cone_cap: int = 5000
    minkowski_cap: int = DEFAULT_MINKOWSKI_CAP


@dataclass(frozen=True)
class Witness:
    face: str
    point: tuple[complex, ...]
    residual: float
    theta: float | None = None


@dataclass(frozen=True)
class Verdict:
    check: str
    status: str
    witness: Witness | None = None
    effort: dict = field(default_factory=dict, compare=False)
    seed: int = 0
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == PRESUMED_OK


Row = Sequence[tuple[int, MixedFunction]]


class _TermTable:
    """Flattened term arrays for vectorised evaluation of all rows."""

    def __init__(self, rows: Sequence[Row], n: int):
        coef, alpha, beta, sgn, owner = [], [], [], [], []
        for j, row in enumerate(rows):
            for s, g in row:
                for e, c in g.terms:
                    coef.append(complex(c))
                    alpha.append([a + b for a, b in zip(e.nu, e.mu)])
                    beta.append([a - b for a, b in zip(e.nu, e.mu)])
                    sgn.append(s)
                    owner.append(j)
        self.n = n
        self.m = len(rows)
        self.coef = np.array(coef, dtype=complex)
        self.alpha = np.array(alpha, dtype=float).reshape(-1, n)
        self.beta = np.array(beta, dtype=float).reshape(-1, n)
        self.sgn = np.array(sgn, dtype=float)
        M = np.zeros((len(coef), self.m))
        M[np.arange(len(coef)), owner] = 1.0
        self.M = M
        self.uses_theta = bool(np.any(self.sgn))
        self.dim = 2 * n + (1 if self.uses_theta else 0)

    def split(self, X):
        n = self.n
        u, v = X[:, :n], X[:, n:2 * n]
        th = X[:, 2 * n] if self.uses_theta else np.zeros(X.shape[0])
        return u, v, th

    def residual(self, X, jac: bool = True):
        u, v, th = self.split(X)
        expo = u @ self.alpha.T + 1j * (v @ self.beta.T) + 1j * th[:, None] * self.sgn[None, :]
        vals = self.coef[None, :] * np.exp(expo)
        mags = np.abs(vals)
        N = vals @ self.M
        S = mags @ self.M
        S = np.where(S > 0, S, 1.0)
        R = N / S
        res = np.concatenate([R.real, R.imag], axis=1)
        if not jac:
            return res
        B = X.shape[0]
        J = np.empty((B, 2 * self.m, self.dim))
        for k in range(self.n):
            dN = (vals * self.alpha[:, k]) @ self.M
            dS = (mags * self.alpha[:, k]) @ self.M
            dR = dN / S - N * dS / S ** 2
            J[:, :self.m, k] = dR.real
            J[:, self.m:, k] = dR.imag
            dN = (vals * (1j * self.beta[:, k])) @ self.M
            dR = dN / S
            J[:, :self.m, self.n + k] = dR.real
            J[:, self.m:, self.n + k] = dR.imag
        if self.uses_theta:
            dR = ((vals * (1j * self.sgn)) @ self.M) / S
            J[:, :self.m, 2 * self.n] = dR.real
            J[:, self.m:, 2 * self.n] = dR.imag
        return res, J


def _lm(table: _TermTable, X: np.ndarray, iters: int, box: float) -> tuple[np.ndarray, np.ndarray]:
    n = table.n
    lam = np.full(X.shape[0], 1e-2)
    res, J = table.residual(X)
    cost = np.sum(res ** 2, axis=1)
    eye = np.eye(table.dim)
    for _ in range(iters):
        JT = np.transpose(J, (0, 2, 1))
        A = JT @ J + lam[:, None, None] * eye[None]
        g = np.einsum("bij,bj->bi", JT, res)
        try:
            step = np.linalg.solve(A, -g[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -g / (lam[:, None] + 1.0)
        Xn = X + step
        Xn[:, :n] = np.clip(Xn[:, :n], -box, box)
        rn, Jn = table.residual(Xn)
        cn = np.sum(rn ** 2, axis=1)
        better = cn < cost
        X = np.where(better[:, None], Xn, X)
        res = np.where(better[:, None], rn, res)
        J = np.where(better[:, None, None], Jn, J)
        cost = np.where(better, cn, cost)
        lam = np.where(better, np.maximum(lam / 3, 1e-12), np.minimum(lam * 4, 1e12))
        if np.all(cost < 1e-30):
            break
    return X, np.sqrt(cost)


def _mp_residual(rows: Sequence[Row], n: int, X: np.ndarray, uses_theta: bool) -> float:
    """Scale-free residual re-evaluated with 50-digit arithmetic."""
    with mpmath.workdps(50):
        u = [mpmath.mpf(float(x)) for x in X[:n]]
        v = [mpmath.mpf(float(x)) for x in X[n:2 * n]]
        th = mpmath.mpf(float(X[2 * n])) if uses_theta else mpmath.mpf(0)
        total = mpmath.mpf(0)
        for row in rows:
            N = mpmath.mpc(0)
            S = mpmath.mpf(0)
            for s, g in row:
                for e, c in g.terms:
                    cc = mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                                    mpmath.mpf(c.im.numerator) / c.im.denominator)
                    ex = sum((a + b) * u[i] for i, (a, b) in enumerate(zip(e.nu, e.mu)))
                    ph = sum((a - b) * v[i] for i, (a, b) in enumerate(zip(e.nu, e.mu))) + s * th
                    val = cc * mpmath.exp(ex + 1j * ph)
                    N += val
                    S += abs(val)
            if S > 0:
                total += abs(N / S) ** 2
        return float(mpmath.sqrt(total))


@dataclass
class SearchResult:
    residual: float
    X: np.ndarray
    runs: int
    iterations: int


def torus_search(rows: Sequence[Row], n: int, budget: NDBudget, key: Sequence[int]) -> SearchResult:
    """Multistart least squares for a common torus zero of the rows."""
    rows = [[(s, g) for s, g in row if not g.is_zero] for row in rows]
    rows = [row for row in rows if row]
    table = _TermTable(rows, n)
    rng = np.random.default_rng([budget.seed, *key])
    X = np.empty((budget.starts, table.dim))
    X[:, :n] = rng.uniform(-2.0, 2.0, (budget.starts, n))
    X[:, n:2 * n] = rng.uniform(0, 2 * np.pi, (budget.starts, n))
    if table.uses_theta:
        X[:, 2 * n] = rng.uniform(0, 2 * np.pi, budget.starts)
    X, r = _lm(table, X, budget.iters, budget.box)
    iterations = budget.iters
    best = int(np.argmin(r))
    if budget.tol <= r[best] <= budget.suspicious:
        close = np.argsort(r)[:8]
        Xp, rp = _lm(table, X[close], 4 * budget.iters, budget.box)
        iterations += 4 * budget.iters
        b2 = int(np.argmin(rp))
        if rp[b2] < r[best]:
            X[close[b2]] = Xp[b2]
            r[close[b2]] = rp[b2]
            best = int(close[b2])
    res = float(r[best])
    if res < budget.tol:
        res = _mp_residual(rows, n, X[best], table.uses_theta)
    return SearchResult(res, X[best], budget.starts, iterations)


def _point_of(X: np.ndarray, n: int) -> tuple[complex, ...]:
    return tuple(complex(np.exp(X[i] + 1j * X[n + i])) for i in range(n))


def _monomial_is_regular(g: MixedFunction) -> bool:
    """A single-term face function has no torus critical point iff nu != mu."""
    (e, _), = g.terms
    return e.nu != e.mu


def critical_rows(g: MixedFunction, force_mixed: bool = False) -> list[list[tuple[int, MixedFunction]]]:
    """Rows whose common torus zeros are the critical points of g: C*^n -> C.

    Holomorphic: the gradient. Mixed: e^{-i theta} g_j - e^{i theta} conj(g_~j),
    i.e. the real Jacobian of (Re g, Im g) has rank below two.
    """
    if g.is_holomorphic and not force_mixed:
        return [[(0, d)] for d in gradient(g)]
    rows = []
    for j in range(g.n):
        a = wirtinger_derivative(g, j)
        b = wirtinger_derivative(g, j, conjugated=True).conjugate()
        rows.append([(-1, a), (1, -b)])
    return rows


def check_face_nondegeneracy(
    f: MixedFunction,
    budget: NDBudget = NDBudget(),
    poly: NewtonPolyhedron | None = None,
    force_mixed: bool = False,
) -> Verdict:
    """Search every compact face function of f for a torus critical point."""
    poly = poly or build_polyhedron(f)
    mixed = force_mixed or not f.is_holomorphic
    faces = poly.compact_faces
    runs = iters = 0
    worst = 0.0
    suspicious = []
    for idx, (pts, w) in enumerate(faces):
        g = face_function(f, w)
        label = f"face {sorted(pts)} : {g}"
        if len(g) == 1:
            if mixed and not _monomial_is_regular(g):
                z = tuple(1 + 0j for _ in range(f.n))
                return Verdict("face", DEGENERATE, Witness(label, z, 0.0),
                               {"faces": idx + 1, "runs": runs}, budget.seed)
            continue
        found = torus_search(critical_rows(g, force_mixed), f.n, budget, (idx,))
        runs += found.runs
        iters += found.iterations
        if found.residual < budget.tol:
            th = float(found.X[2 * f.n]) if mixed else None
            return Verdict(
                "face", DEGENERATE,
                Witness(label, _point_of(found.X, f.n), found.residual, th),
                {"faces": idx + 1, "runs": runs, "iterations": iters}, budget.seed,
            )
        if found.residual <= budget.suspicious:
            suspicious.append(f"{label} residual {found.residual:.3g}")
        worst = max(worst, found.residual)
    effort = {"faces": len(faces), "runs": runs, "iterations": iters}
    if suspicious:
        return Verdict("face", INCONCLUSIVE, None, effort, budget.seed, tuple(suspicious))
    return Verdict("face", PRESUMED_OK, None, effort, budget.seed)


def _simplex(m: int) -> MixedFunction:
    return MixedFunction.holomorphic(m, {tuple(int(j == i) for j in range(m)): 1 for i in range(m)})


def loj_cone_representatives(
    family: Sequence[MixedFunction], m: int, cap: int, minkowski_cap: int = DEFAULT_MINKOWSKI_CAP
) -> list[tuple[int, ...]]:
    """One strictly positive weight per cone of the common refinement of the
    normal fans of ``family`` and of the argmin-coordinate fan, in m variables."""
    supports = [g.support() for g in family if not g.is_zero] + [_simplex(m).support()]
    product = minkowski_support(supports, m, minkowski_cap)
    facets = hull_of_points(product, m)
    poly = NewtonPolyhedron(m, (), tuple(facets))
    # compact faces of the product polyhedron enumerate all positive cones
    faces = poly.compact_faces
    if len(faces) > cap:
        raise SizeCapError(f"{len(faces)} cones exceed the cap {cap}")
    return [w for _, w in faces]


def _mixed_modulus_row(A: MixedFunction, B: MixedFunction) -> MixedFunction:
    """|A|^2 - |B|^2 as a mixed polynomial."""
    out = None
    for g, sign in ((A, 1), (B, -1)):
        if g.is_zero:
            continue
        term = (g * g.conjugate()) * sign
        out = term if out is None else out + term
    return out


def check_loj_nondegeneracy(f: MixedFunction, table, budget: NDBudget = NDBudget(),
                            force_mixed: bool = False) -> Verdict:
    """Search, per vanishing subset I and per refinement cone, for a torus point
    where the restricted derivative face functions fail the condition."""
    mixed = force_mixed or not f.is_holomorphic
    runs = iters = cones = 0
    suspicious = []
    for sidx, I in enumerate(table.subsets):
        idx = list(I.members)
        m = len(idx)
        J_all = sorted(table.J_of(I))
        hol = {j: compress(wirtinger_derivative(f, j), idx) for j in J_all}
        anti = {j: compress(wirtinger_derivative(f, j, True), idx) for j in J_all} if mixed else {}
        family = [g for g in list(hol.values()) + list(anti.values()) if not g.is_zero]
        try:
            reps = loj_cone_representatives(family, m, budget.cone_cap, budget.minkowski_cap)
        except SizeCapError as exc:
            return Verdict("lojasiewicz", INCONCLUSIVE, None, {"subset": str(I)}, budget.seed,
                           (f"subset {I}: {exc}",))
        for cidx, w in enumerate(reps):
            cones += 1
            pmin = min(w)
            Iprime = [idx[k] for k in range(m) if w[k] == pmin]
            JP = sorted(table.J_of(I, Iprime))
            rows = []
            trivial = False
            label_parts = []
            for j in JP:
                if not mixed:
                    g = face_function(hol[j], w)
                    label_parts.append(f"(f_{j + 1})_P = {g}")
                    if len(g) == 1:
                        trivial = True
                        break
                    rows.append([(0, g)])
                else:
                    A = hol[j]
                    B = anti[j]
                    dmin = min(
                        _order(g, w) for g in (A, B) if not g.is_zero
                    )
                    Af = _face_at(A, w, dmin)
                    Bf = _face_at(B, w, dmin)
                    label_parts.append(f"(f_{j + 1})_P = {Af}, (f_~{j + 1})_P = {Bf}")
                    if Af.is_zero != Bf.is_zero:
                        fnz = Af if not Af.is_zero else Bf
                        if len(fnz) == 1:
                            trivial = True
                            break
                    row = _mixed_modulus_row(Af, Bf)
                    if row is None or row.is_zero:
                        # |A| = |B| identically: the condition fails everywhere
                        z = tuple(1 + 0j for _ in range(m))
                        return Verdict("lojasiewicz", DEGENERATE,
                                       Witness(f"I={I} P={w}: " + "; ".join(label_parts), z, 0.0),
                                       {"cones": cones, "runs": runs}, budget.seed)
                    rows.append([(0, row)])
            if trivial or not rows:
                continue
            label = f"I={I} P={w}: " + "; ".join(label_parts)
            found = torus_search(rows, m, budget, (1000 + sidx, cidx))
            runs += found.runs
            iters += found.iterations
            if found.residual < budget.tol:
                return Verdict("lojasiewicz", DEGENERATE,
                               Witness(label, _point_of(found.X, m), found.residual),
                               {"cones": cones, "runs": runs, "iterations": iters}, budget.seed)
            if found.residual <= budget.suspicious:
                suspicious.append(f"{label} residual {found.residual:.3g}")
    effort = {"subsets": len(table.subsets), "cones": cones, "runs": runs, "iterations": iters}
    if suspicious:
        return Verdict("lojasiewicz", INCONCLUSIVE, None, effort, budget.seed, tuple(suspicious))
    return Verdict("lojasiewicz", PRESUMED_OK, None, effort, budget.seed)


def _order(g: MixedFunction, w) -> Fraction:
    return min(sum(Fraction(a) * b for a, b in zip(w, e.combined)) for e, _ in g.terms)


def _face_at(g: MixedFunction, w, d: Fraction) -> MixedFunction:
    if g.is_zero:
        return g
    return MixedFunction(g.n, tuple(
        (e, c) for e, c in g.terms if sum(Fraction(a) * b for a, b in zip(w, e.combined)) == d
    ))
