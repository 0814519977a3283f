"""Upper bounds for the gradient exponent with provenance, join decomposition,
brackets against sampled curves, and the convenience-restoring threshold."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .curves import INFINITY, CurveBudget, SampleResult, sample_lower_bound
from .dualfan import (
    DEFAULT_MINKOWSKI_CAP,
    JacobianDiagram,
    jacobian_diagram,
    vanishing_subspaces,
)
from .errors import (
    BoundaryDimensionError,
    DegenerateError,
    InconclusiveError,
    LojboundError,
    NonIsolatedSingularityError,
)
from .invariants import (
    InvariantSheet,
    axis_monomial_table,
    convenient_profile,
    eta,
    invariant_sheet,
)
from .mixedpoly import MixedFunction, VariableSubset, compress, interaction_components
from .newton import build_polyhedron
from .nondeg import (
    DEGENERATE,
    INCONCLUSIVE,
    NDBudget,
    Verdict,
    check_face_nondegeneracy,
    check_loj_nondegeneracy,
)

CONVENIENT = "convenient-B-minus-1"
WEIGHTED = "weighted-homogeneous-eta-R"
JOIN = "join"
GENERAL_MAX = "general-eta-max"
GENERAL_DPRIME = "general-eta-dprime"

_PRIORITY = {CONVENIENT: 0, JOIN: 1, WEIGHTED: 2, GENERAL_MAX: 3, GENERAL_DPRIME: 3}


@dataclass(frozen=True)
class BoundConfig:
    nd: NDBudget = NDBudget()
    curves: CurveBudget = CurveBudget()
    assume_nondegenerate: bool = False
    force_mixed: bool = False
    minkowski_cap: int = DEFAULT_MINKOWSKI_CAP

    def with_seed(self, seed: int) -> "BoundConfig":
        return replace(self, nd=replace(self.nd, seed=seed), curves=replace(self.curves, seed=seed))


@dataclass
class Candidate:
    path: str
    upper: Fraction
    exact: bool
    detail: str = ""


@dataclass
class BoundReport:
    upper: Fraction
    path: str
    exact: bool
    assumptions: list = field(default_factory=list)
    sheet: InvariantSheet | None = None
    candidates: list = field(default_factory=list)
    children: list = field(default_factory=list)
    lower: Fraction | float | None = None
    sample: SampleResult | None = None
    notes: list = field(default_factory=list)

    @property
    def path_label(self) -> str:
        if self.path != JOIN:
            return self.path
        inner = ",".join(f"{sub}:{rep.path_label}" for sub, rep in self.children)
        return f"join({inner})"

    @property
    def tight(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    @property
    def sound(self) -> bool:
        return self.lower is None or self.lower <= self.upper

    def summary_line(self) -> str:
        parts = [f"upper={self.upper}"]
        if self.exact:
            parts.append("exact")
        parts.append(f"path={self.path_label}")
        if self.lower is not None:
            parts.append(f"lower={_rat(self.lower)}")
            if self.tight:
                parts.append("tight")
        return " ".join(parts)

    def to_json(self) -> dict:
        out = {
            "upper": str(self.upper),
            "exact": self.exact,
            "path": self.path_label,
            "assumptions": [verdict_json(v) for v in self.assumptions],
            "candidates": [{"path": c.path, "upper": str(c.upper), "exact": c.exact, "detail": c.detail}
                           for c in self.candidates],
            "children": [{"subset": sub.one_based(), "report": rep.to_json()} for sub, rep in self.children],
            "sheet": sheet_json(self.sheet),
            "lower": None if self.lower is None else _rat(self.lower),
            "tight": self.tight if self.lower is not None else None,
            "witness": None if self.sample is None else self.sample.to_json()["witness"],
            "notes": list(self.notes),
        }
        return out


def _rat(x) -> str:
    return "inf" if x == INFINITY else str(x)


def verdict_json(v: Verdict) -> dict:
    w = None
    if v.witness is not None:
        w = {
            "face": v.witness.face,
            "point": [[z.real, z.imag] for z in v.witness.point],
            "residual": v.witness.residual,
        }
    return {"check": v.check, "status": v.status, "witness": w, "effort": dict(v.effort),
            "seed": v.seed, "notes": list(v.notes)}


def sheet_json(sheet: InvariantSheet | None) -> dict | None:
    if sheet is None:
        return None
    return {
        "eta_max": str(sheet.eta_max),
        "eta_J_max": str(sheet.eta_J_max),
        "eta_prime_J_max": None if sheet.eta_prime_J_max is None else str(sheet.eta_prime_J_max),
        "eta_dprime": str(sheet.eta_dprime),
        "contributions": [{"weight": list(c.weight), "label": c.label, "value": str(c.value)}
                          for c in sheet.contributions],
    }


def decompose_join(f: MixedFunction) -> list[tuple[VariableSubset, MixedFunction]]:
    """Connected components of the variable-interaction graph with their restricted functions."""
    return [(comp, compress(f, comp.members)) for comp in interaction_components(f)]


class _Gate:
    """Runs and caches the non-degeneracy checks for one bound computation."""

    def __init__(self, config: BoundConfig):
        self.config = config
        self.verdicts: list[Verdict] = []
        self._face: dict = {}
        self._loj: dict = {}

    def _consume(self, v: Verdict, what: str):
        self.verdicts.append(v)
        if v.status == DEGENERATE:
            raise DegenerateError(f"{what}: degenerate witness on {v.witness.face}", v)
        if v.status == INCONCLUSIVE and not self.config.assume_nondegenerate:
            raise InconclusiveError(f"{what}: inconclusive ({'; '.join(v.notes)})", v)

    def faces(self, f: MixedFunction):
        key = str(f)
        if key in self._face:
            return
        if self.config.assume_nondegenerate:
            self._face[key] = None
            return
        v = check_face_nondegeneracy(f, self.config.nd, force_mixed=self.config.force_mixed)
        self._face[key] = v
        self._consume(v, f"face non-degeneracy of {f}")

    def lojasiewicz(self, f: MixedFunction, table):
        key = str(f)
        if key in self._loj or not table.subsets:
            return
        if self.config.assume_nondegenerate:
            self._loj[key] = None
            return
        v = check_loj_nondegeneracy(f, table, self.config.nd, force_mixed=self.config.force_mixed)
        self._loj[key] = v
        self._consume(v, f"Lojasiewicz non-degeneracy of {f}")


def _require_all_variables(f: MixedFunction):
    missing = [i + 1 for i in range(f.n) if i not in f.variables()]
    if missing:
        raise NonIsolatedSingularityError(
            f"f does not depend on z{missing[0]}; the critical locus is not isolated"
        )


def _is_weighted_homogeneous(diagram: JacobianDiagram):
    vplus = diagram.v_plus
    if len(vplus) != 1:
        return None
    R = vplus[0]
    if set(R.face.points) == set(diagram.f.support()):
        return R
    return None


def _general_data(f: MixedFunction, config: BoundConfig, gate: _Gate):
    poly = build_polyhedron(f)
    if poly.boundary_dim != f.n - 1:
        raise BoundaryDimensionError(
            f"Newton boundary of {f} has dimension {poly.boundary_dim} < {f.n - 1}"
        )
    table = axis_monomial_table(f, vanishing_subspaces(f), strict=True)
    gate.lojasiewicz(f, table)
    diagram = jacobian_diagram(f, config.minkowski_cap)
    sheet = invariant_sheet(f, diagram)
    return diagram, sheet, table


def _bound(f: MixedFunction, config: BoundConfig, gate: _Gate, allow_join: bool = True) -> BoundReport:
    _require_all_variables(f)
    gate.faces(f)
    candidates: list[Candidate] = []
    notes: list[str] = []
    children = []
    sheet = None
    errors: list[LojboundError] = []

    prof = convenient_profile(f)
    if prof.convenient:
        exact = prof.has_non_exceptional
        candidates.append(Candidate(CONVENIENT, Fraction(prof.B - 1), exact, f"B={prof.B}"))
        if not exact:
            notes.append("every Lojasiewicz monomial is exceptional; B-1 is reported without equality")

    comps = decompose_join(f)
    if allow_join and len(comps) > 1:
        try:
            for sub, g in comps:
                children.append((sub, _bound(g, config, gate)))
            top = max(rep.upper for _, rep in children)
            exact = any(rep.exact and rep.upper == top for _, rep in children)
            candidates.append(Candidate(JOIN, top, exact, f"{len(comps)} components"))
        except (DegenerateError, InconclusiveError, NonIsolatedSingularityError):
            raise
        except LojboundError as exc:
            errors.append(exc)
            children = []

    try:
        diagram, sheet, table = _general_data(f, config, gate)
        R = _is_weighted_homogeneous(diagram)
        if R is not None:
            candidates.append(Candidate(WEIGHTED, eta(f, R.weight), False, f"R={R.weight}"))
        if diagram.vjpp:
            candidates.append(Candidate(GENERAL_DPRIME, sheet.eta_dprime, False,
                                        f"{len(diagram.vjpp)} vertices in V_J^++"))
            notes.append("vanishing-boundary regions are found by face containment; "
                         "this can only enlarge V_J^++ and the bound")
            if not f.is_holomorphic:
                notes.append("eta' divides by p_k and maximises over k")
        else:
            candidates.append(Candidate(GENERAL_MAX, sheet.eta_max, False, "V_J^++ empty"))
    except (DegenerateError, InconclusiveError, NonIsolatedSingularityError):
        raise
    except LojboundError as exc:
        errors.append(exc)

    if not candidates:
        raise errors[0] if errors else BoundaryDimensionError("no applicable bound")
    best = min(candidates, key=lambda c: (c.upper, _PRIORITY[c.path]))
    exact = any(c.exact and c.upper == best.upper for c in candidates)
    for c in candidates:
        if c.exact and c.upper > best.upper:
            notes.append(f"{c.path} claims equality at {c.upper} but {best.path} gives {best.upper}")
    if not f.is_holomorphic:
        notes.append("mixed curve exponents use the canonical modified gradient pair")
    for e in errors:
        notes.append(f"path skipped: {e}")
    return BoundReport(
        upper=best.upper,
        path=best.path,
        exact=exact,
        sheet=sheet,
        candidates=candidates,
        children=children,
        notes=notes,
    )


def upper_bound(f: MixedFunction, config: BoundConfig = BoundConfig()) -> BoundReport:
    """Certified upper bound for the gradient exponent, gated on non-degeneracy verdicts."""
    gate = _Gate(config)
    rep = _bound(f, config, gate)
    rep.assumptions = list(gate.verdicts)
    if config.assume_nondegenerate:
        rep.notes.append("non-degeneracy assumed, not checked")
    return rep


def bracket(f: MixedFunction, config: BoundConfig = BoundConfig()) -> BoundReport:
    """upper_bound plus a sampled lower bound from monomial test curves."""
    rep = upper_bound(f, config)
    sample = sample_lower_bound(f, None, config.curves, force_mixed=config.force_mixed)
    rep.sample = sample
    rep.lower = sample.lower
    if not rep.sound:
        rep.notes.append(
            f"lower bound {_rat(sample.lower)} exceeds upper bound {rep.upper}: "
            "a hypothesis failed or there is a bug"
        )
    return rep


@dataclass(frozen=True)
class ConvenienceThreshold:
    eta_dprime: Fraction
    N: int
    per_axis: tuple[int, ...]
    splits: tuple[tuple[int, int], ...] | None

    def to_json(self) -> dict:
        return {
            "eta_dprime": str(self.eta_dprime),
            "N": self.N,
            "per_axis": list(self.per_axis),
            "splits": None if self.splits is None else [list(s) for s in self.splits],
        }


def convenience_exponents(f: MixedFunction, config: BoundConfig = BoundConfig()) -> ConvenienceThreshold:
    """Smallest N with N > eta'' + 1, the exponent for adding z_i^N (or z_i^m conj(z_i)^n)."""
    gate = _Gate(config)
    _require_all_variables(f)
    gate.faces(f)
    _, sheet, _ = _general_data(f, config, gate)
    N = math.floor(sheet.eta_dprime + 1) + 1
    splits = None
    if not f.is_holomorphic:
        # m + n = N with m != n; the most holomorphic split keeps the Newton data
        splits = tuple((N, 0) for _ in range(f.n))
    return ConvenienceThreshold(sheet.eta_dprime, N, tuple(N for _ in range(f.n)), splits)
