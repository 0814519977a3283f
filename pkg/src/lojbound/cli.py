"""Command-line front end.

Exit status: 0 when the requested analysis succeeded, 2 when a degeneracy
witness was found, 3 for inconclusive checks, malformed input or
unsupported functions.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .bounds import (
    BoundConfig,
    bracket,
    convenience_exponents,
    sheet_json,
    upper_bound,
    verdict_json,
)
from .curves import CurveBudget
from .dualfan import fan_vertices, jacobian_diagram, vanishing_subspaces
from .errors import DegenerateError, InconclusiveError, LojboundError, ParseError
from .invariants import axis_monomial_table, convenient_profile, invariant_sheet
from .mixedpoly import format_function, parse
from .newton import build_polyhedron
from .nondeg import DEGENERATE, INCONCLUSIVE, NDBudget, check_face_nondegeneracy, check_loj_nondegeneracy

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_UNSUPPORTED = 3

VERBS = ("analyze", "bound", "verify", "fan", "check")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_UNSUPPORTED)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lojbound", description="Bounds for the gradient exponent of polynomial germs.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("expression", nargs="?", help="polynomial in z1..zn and ~z1..~zn")
    p.add_argument("--file", help="read the expression from a file (# starts a comment)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=2000, help="number of test curves")
    p.add_argument("--max-weight", type=int, default=50)
    p.add_argument("--nd-starts", type=int, default=64)
    p.add_argument("--nd-iters", type=int, default=200)
    p.add_argument("--nd-tol", type=float, default=1e-9)
    p.add_argument("--assume-nondegenerate", action="store_true")
    p.add_argument("--jacobian", action="store_true", help="fan: list the Jacobian diagram")
    p.add_argument("--bracket", action="store_true", help="analyze: also sample a lower bound")
    return p


def _read_expression(args) -> str:
    if (args.expression is None) == (args.file is None):
        raise ValueError("give exactly one of an expression or --file")
    if args.file is None:
        return args.expression
    with open(args.file) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    body = [ln for ln in lines if ln]
    if not body:
        raise ValueError(f"{args.file} contains no expression")
    return " ".join(body)


def _config(args) -> BoundConfig:
    seed = args.seed if args.seed is not None else 0
    nd = NDBudget(starts=args.nd_starts, iters=args.nd_iters, tol=args.nd_tol, seed=seed)
    cb = CurveBudget(curves=args.budget, seed=seed, max_weight=args.max_weight)
    return BoundConfig(nd=nd, curves=cb, assume_nondegenerate=args.assume_nondegenerate)


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _vertex_json(v, region=None) -> dict:
    out = {
        "weight": list(v.weight),
        "kind": v.kind,
        "d": str(v.d),
        "normalized": None if v.normalized is None else [str(x) for x in v.normalized],
        "vanishing_subset": None if v.vanishing_subset is None else v.vanishing_subset.one_based(),
        "face": [list(p) for p in sorted(v.face.points)],
    }
    if region is not None:
        out["region"] = region.tag
        out["region_witness"] = None if region.witness is None else list(region.witness.weight)
    return out


def _vertex_line(v, region=None) -> str:
    w = "(" + ",".join(str(x) for x in v.weight) + ")"
    s = f"{w} {v.kind} d={v.d}"
    if v.vanishing_subset is not None:
        s += f" I={v.vanishing_subset}"
    if region is not None:
        s += f" region={region.tag}"
    return s


def cmd_fan(args, f) -> int:
    poly = build_polyhedron(f)
    if args.jacobian:
        jd = jacobian_diagram(f)
        data = {
            "function": format_function(f),
            "diagram": "jacobian",
            "factors": list(jd.factors),
            "product_support": [list(p) for p in jd.product_support],
            "vertices": [_vertex_json(v, jd.regions.get(v.weight)) for v in jd.vertices],
            "vjpp": [list(v.weight) for v in jd.vjpp],
        }
        lines = [f"Jacobian diagram of {format_function(f)} ({len(jd.vertices)} vertices)"]
        lines += ["  " + _vertex_line(v, jd.regions.get(v.weight)) for v in jd.vertices]
        lines.append("  V_J^++: " + (", ".join(str(v.weight) for v in jd.vjpp) or "empty"))
    else:
        verts = fan_vertices(f, poly)
        data = {
            "function": format_function(f),
            "diagram": "newton",
            "facets": [{"normal": list(fc.normal), "offset": fc.offset,
                        "face": [list(p) for p in sorted(fc.points)]} for fc in poly.facets],
            "vertices": [_vertex_json(v) for v in verts],
            "boundary_dim": poly.boundary_dim,
        }
        lines = [f"dual Newton diagram of {format_function(f)} ({len(verts)} vertices)"]
        lines += ["  " + _vertex_line(v) for v in verts]
    _emit(args, data, lines)
    return EXIT_OK


def _checks(f, config: BoundConfig):
    face = check_face_nondegeneracy(f, config.nd)
    verdicts = [face]
    subs = vanishing_subspaces(f)
    table = axis_monomial_table(f, subs, strict=False)
    if table.missing:
        I, i = table.missing[0]
        raise LojboundError(f"no monomial z{i + 1}^a*z_j leaves {I}: the singularity is not isolated")
    if subs:
        verdicts.append(check_loj_nondegeneracy(f, table, config.nd))
    return verdicts


def _verdict_lines(verdicts) -> list[str]:
    lines = []
    for v in verdicts:
        s = f"{v.check}: {v.status}"
        if v.witness is not None:
            pt = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in v.witness.point)
            s += f" at ({pt}) residual={v.witness.residual:.3g} on {v.witness.face}"
        lines.append(s)
        lines += [f"  note: {n}" for n in v.notes]
    return lines


def _status_code(verdicts) -> int:
    if any(v.status == DEGENERATE for v in verdicts):
        return EXIT_DEGENERATE
    if any(v.status == INCONCLUSIVE for v in verdicts):
        return EXIT_UNSUPPORTED
    return EXIT_OK


def cmd_check(args, f, config) -> int:
    verdicts = _checks(f, config)
    _emit(args, {"function": format_function(f), "verdicts": [verdict_json(v) for v in verdicts]},
          _verdict_lines(verdicts))
    return _status_code(verdicts)


def _report_lines(rep) -> list[str]:
    lines = [rep.summary_line()]
    if rep.sample is not None and rep.sample.witness is not None:
        lines.append("witness curve: " + "; ".join(rep.sample.witness.describe()))
    lines += [f"note: {n}" for n in rep.notes]
    return lines


def cmd_bound(args, f, config, with_lower: bool) -> int:
    rep = bracket(f, config) if with_lower else upper_bound(f, config)
    _emit(args, rep.to_json(), _report_lines(rep))
    return EXIT_OK


def cmd_analyze(args, f, config) -> int:
    poly = build_polyhedron(f)
    prof = convenient_profile(f)
    subs = vanishing_subspaces(f)
    data: dict = {
        "function": format_function(f),
        "n": f.n,
        "holomorphic": f.is_holomorphic,
        "support": [list(p) for p in poly.points],
        "boundary_dim": poly.boundary_dim,
        "convenient": {
            "convenient": prof.convenient,
            "b": list(prof.b),
            "B": prof.B,
            "lojasiewicz_monomials": [{"axis": i + 1, "exceptional": x}
                                      for (i, _), x in zip(prof.loj_monomials, prof.exceptional_flags)],
        },
        "vanishing_subspaces": [s.one_based() for s in subs],
    }
    lines = [f"f = {format_function(f)}  (n={f.n}, {'holomorphic' if f.is_holomorphic else 'mixed'})",
             f"support: {[list(p) for p in poly.points]}",
             f"boundary dimension: {poly.boundary_dim}"]
    if prof.convenient:
        lines.append(f"convenient: B={prof.B}, b={list(prof.b)}, exceptional flags {list(prof.exceptional_flags)}")
    else:
        lines.append("not convenient")
    lines.append("vanishing subspaces: " + (", ".join(str(s) for s in subs) or "none"))
    table = axis_monomial_table(f, subs, strict=False)
    data["axis_monomials"] = [
        {"subset": I.one_based(), "i": e.i + 1, "j": e.j + 1, "n_ij": e.n_ij}
        for I in table.subsets for e in table.entries[I]
    ]
    data["xi"] = table.xi
    for I in table.subsets:
        for e in table.entries[I]:
            lines.append(f"  n_({e.i + 1},{e.j + 1}) = {e.n_ij} for I={I}")
    if table.xi is not None:
        lines.append(f"xi = {table.xi}")
    code = EXIT_OK
    try:
        jd = jacobian_diagram(f)
        data["fan"] = [_vertex_json(v) for v in jd.fan]
        data["jacobian"] = [_vertex_json(v, jd.regions.get(v.weight)) for v in jd.vertices]
        sheet = invariant_sheet(f, jd)
        data["sheet"] = sheet_json(sheet)
        lines.append("fan vertices:")
        lines += ["  " + _vertex_line(v) for v in jd.fan]
        lines.append("Jacobian diagram vertices:")
        lines += ["  " + _vertex_line(v, jd.regions.get(v.weight)) for v in jd.vertices]
        lines.append(f"eta_max={sheet.eta_max} eta_J_max={sheet.eta_J_max} "
                     f"eta'_J_max={sheet.eta_prime_J_max if sheet.has_eta_prime else 'none'} "
                     f"eta''={sheet.eta_dprime}")
        for c in sheet.contributions:
            lines.append(f"  {c.label} at {c.weight}: {c.value}")
        th = convenience_exponents(f, replace(config, assume_nondegenerate=True))
        data["convenience_threshold"] = th.to_json()
        lines.append(f"convenience threshold: N={th.N}")
    except LojboundError as exc:
        data["fan"] = None
        data["sheet"] = None
        lines.append(f"dual diagram unavailable: {exc}")
    verdicts = _checks(f, config) if not config.assume_nondegenerate else []
    data["verdicts"] = [verdict_json(v) for v in verdicts]
    lines += _verdict_lines(verdicts)
    code = _status_code(verdicts)
    data["bound"] = None
    if code == EXIT_OK:
        rep = bracket(f, config) if args.bracket else upper_bound(f, config)
        data["bound"] = rep.to_json()
        lines += _report_lines(rep)
    _emit(args, data, lines)
    return code


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _read_expression(args)
        f = parse(text)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    if args.verb in ("verify", "check") and args.seed is None:
        print(f"error: {args.verb} needs --seed for a reproducible run", file=sys.stderr)
        return EXIT_UNSUPPORTED
    config = _config(args)
    try:
        if args.verb == "fan":
            return cmd_fan(args, f)
        if args.verb == "check":
            return cmd_check(args, f, config)
        if args.verb == "bound":
            return cmd_bound(args, f, config, with_lower=False)
        if args.verb == "verify":
            return cmd_bound(args, f, config, with_lower=True)
        return cmd_analyze(args, f, config)
    except DegenerateError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except LojboundError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
