"""Exact rational invariants read off the Newton data: normalized weights, the
eta family, convenient-case data and the axis-monomial table."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dualfan import JacobianDiagram
from .errors import NonIsolatedSingularityError, ZeroFunctionError
from .mixedpoly import (
    ExponentPair,
    MixedFunction,
    VariableSubset,
    weighted_order,
    wirtinger_derivative,
)


@dataclass(frozen=True)
class NormalizedWeight:
    raw: tuple[Fraction, ...]
    d: Fraction
    hat: tuple[Fraction, ...]
    m: Fraction
    M: Fraction


def _frac(P: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(p) for p in P)


def normalize(f: MixedFunction, P: Sequence) -> NormalizedWeight:
    raw = _frac(P)
    d = weighted_order(f, raw)
    if d <= 0:
        raise ValueError(f"d(P, f) = {d}: weight {P} cannot be normalized")
    hat = tuple(p / d for p in raw)
    positive = [p for p in hat if p > 0]
    nw = NormalizedWeight(raw, d, hat, min(positive), max(positive))
    assert weighted_order(f, hat) == 1
    return nw


def eta(f: MixedFunction, P: Sequence) -> Fraction:
    """d(P,f)/m(P) - 1, equivalently 1/m(P_hat) - 1."""
    nw = normalize(f, P)
    return 1 / nw.m - 1


def eta_ij(f: MixedFunction, P: Sequence, i: int, j: int) -> Fraction:
    """(d(P,f) - p_j) / p_i with 0-based indices."""
    W = _frac(P)
    if W[i] == 0:
        raise ZeroDivisionError(f"p_{i + 1} = 0")
    return (weighted_order(f, W) - W[j]) / W[i]


def derivative_order(f: MixedFunction, P: Sequence, i: int) -> Fraction:
    """d(P, f_i), or for mixed f the min of d(P, f_i) and d(P, f_~i) over non-zero ones."""
    W = _frac(P)
    orders = []
    for conj in (False, True):
        g = wirtinger_derivative(f, i, conj)
        if not g.is_zero:
            orders.append(weighted_order(g, W))
    if not orders:
        raise ZeroFunctionError(f"every derivative with respect to variable {i + 1} vanishes")
    return min(orders)


def eta_prime(f: MixedFunction, P: Sequence, k: int, i: int) -> Fraction:
    """d(P, f_i) / p_k (mixed: conj-aware numerator), 0-based indices."""
    W = _frac(P)
    if W[k] == 0:
        raise ZeroDivisionError(f"p_{k + 1} = 0")
    return derivative_order(f, W, i) / W[k]


@dataclass(frozen=True)
class Contribution:
    weight: tuple[int, ...]
    label: str
    value: Fraction


@dataclass(frozen=True)
class InvariantSheet:
    eta_max: Fraction
    eta_J_max: Fraction
    eta_prime_J_max: Fraction | None
    eta_dprime: Fraction
    contributions: tuple[Contribution, ...] = ()

    @property
    def has_eta_prime(self) -> bool:
        return self.eta_prime_J_max is not None


def invariant_sheet(f: MixedFunction, diagram: JacobianDiagram) -> InvariantSheet:
    vplus = diagram.v_plus
    if not vplus:
        raise ValueError("no strictly positive vertex in the dual Newton diagram")
    contributions = []
    eta_max = None
    for v in vplus:
        val = eta(f, v.weight)
        contributions.append(Contribution(v.weight, "eta V+", val))
        eta_max = val if eta_max is None else max(eta_max, val)
    eta_J_max = eta_max
    eta_p = None
    active = [i for i in range(f.n)
              if not (wirtinger_derivative(f, i).is_zero and wirtinger_derivative(f, i, True).is_zero)]
    for v in diagram.vjpp:
        val = eta(f, v.weight)
        contributions.append(Contribution(v.weight, "eta VJ++", val))
        eta_J_max = max(eta_J_max, val)
        # max over k of d/p_k is attained at the smallest weight entry
        best_i = max(active, key=lambda i: derivative_order(f, v.weight, i))
        num = derivative_order(f, v.weight, best_i)
        k = min(range(f.n), key=lambda k: (v.weight[k], k))
        val = num / v.weight[k]
        contributions.append(Contribution(v.weight, f"eta' k={k + 1} i={best_i + 1}", val))
        eta_p = val if eta_p is None else max(eta_p, val)
    dprime = eta_J_max if eta_p is None else max(eta_J_max, eta_p)
    return InvariantSheet(eta_max, eta_J_max, eta_p, dprime, tuple(contributions))


@dataclass(frozen=True)
class ConvenientProfile:
    convenient: bool
    b: tuple[int | None, ...]
    B: int | None
    loj_monomials: tuple[tuple[int, ExponentPair], ...]
    exceptional_flags: tuple[bool, ...]

    @property
    def has_non_exceptional(self) -> bool:
        return any(not x for x in self.exceptional_flags)


def _axis_of(p: Sequence[int]) -> int | None:
    nz = [i for i, v in enumerate(p) if v]
    return nz[0] if len(nz) == 1 else None


def convenient_profile(f: MixedFunction) -> ConvenientProfile:
    n = f.n
    b: list[int | None] = [None] * n
    for p in f.support():
        i = _axis_of(p)
        if i is not None and (b[i] is None or p[i] < b[i]):
            b[i] = p[i]
    convenient = all(x is not None for x in b)
    if not convenient:
        return ConvenientProfile(False, tuple(b), None, (), ())
    B = max(b)
    support = set(f.support())
    monos = []
    flags = []
    for i in range(n):
        if b[i] != B:
            continue
        for e, _ in f.terms:
            if _axis_of(e.combined) == i and e.combined[i] == B:
                monos.append((i, e))
                flags.append(_undercut(support, n, i, B))
    return ConvenientProfile(True, tuple(b), B, tuple(monos), tuple(flags))


def _undercut(support: set, n: int, i: int, B: int) -> bool:
    """True if some z_i^B' w_j (j != i, w_j = z_j or conj z_j) has B' < B - 1."""
    for p in support:
        rest = [(j, v) for j, v in enumerate(p) if j != i and v]
        if len(rest) == 1 and rest[0][1] == 1 and p[i] < B - 1:
            return True
    return False


@dataclass(frozen=True)
class AxisEntry:
    i: int
    j: int
    n_ij: int
    point: tuple[int, ...]


@dataclass(frozen=True)
class AxisMonomialTable:
    """Per vanishing subset I: the finite n_ij entries (absent means infinite)."""

    subsets: tuple[VariableSubset, ...]
    entries: dict = field(compare=False)
    J: dict = field(compare=False)
    xi_I: dict = field(compare=False)
    xi: int | None = None
    missing: tuple[tuple[VariableSubset, int], ...] = ()

    def n_ij(self, I: VariableSubset, i: int, j: int) -> int | None:
        for e in self.entries[I]:
            if e.i == i and e.j == j:
                return e.n_ij
        return None

    def J_of(self, I: VariableSubset, indices=None) -> set[int]:
        """J(I) = union of J_i over i in ``indices`` (default all of I)."""
        idx = I.members if indices is None else indices
        out = set()
        for i in idx:
            out |= self.J[I][i]
        return out

    def finite_values(self) -> list[int]:
        return [e.n_ij for es in self.entries.values() for e in es]


def axis_monomial_table(
    f: MixedFunction, subspaces: Sequence[VariableSubset], strict: bool = True
) -> AxisMonomialTable:
    n = f.n
    support = f.support()
    entries = {}
    J = {}
    xi_I = {}
    missing = []
    for I in subspaces:
        rows = []
        J[I] = {}
        for i in I:
            J[I][i] = set()
            for j in range(n):
                if j in I:
                    continue
                best = None
                for p in support:
                    if p[j] == 1 and p[i] >= 1 and all(
                        v == 0 for k, v in enumerate(p) if k not in (i, j)
                    ):
                        if best is None or p[i] < best[i]:
                            best = p
                if best is not None:
                    rows.append(AxisEntry(i, j, best[i], best))
                    J[I][i].add(j)
            if not J[I][i]:
                missing.append((I, i))
        entries[I] = tuple(rows)
        xi_I[I] = max((e.n_ij for e in rows), default=None)
    finite = [v for v in xi_I.values() if v is not None]
    table = AxisMonomialTable(
        tuple(subspaces), entries, J, xi_I, max(finite) if finite else None, tuple(missing)
    )
    if strict and missing:
        I, i = missing[0]
        raise NonIsolatedSingularityError(
            f"no monomial z{i + 1}^a*z_j with j outside {I}: "
            "the singularity at the origin is not isolated"
        )
    return table
