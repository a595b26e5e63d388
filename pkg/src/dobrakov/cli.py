"""Command line front end: ``dobrakov {check,extend,choquet,dyadic} SPEC``.

Exit status is 0 iff every non-vacuous asserted property holds, 1 if one
fails and 2 on input errors.  ``--json`` emits the ``report_v1`` schema.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable

from dobrakov.choquet import check_pgp_preservation, choquet_integral, derived_submeasure
from dobrakov.dyadic import TargetSet, run_suite
from dobrakov.errors import DobrakovError, HypothesisNotMet
from dobrakov.extension import COLLAPSE_NOTE, extend, hypothesis_failures
from dobrakov.fntopology import check_filterbase_axioms
from dobrakov.lattice import format_value, norm
from dobrakov.report import FAILS, HOLDS, VACUOUS, PropertyReport, to_jsonable
from dobrakov.setring import FiniteSet
from dobrakov.specfile import InstanceSpec, load_spec, serialize_spec
from dobrakov.submeasure import (
    Classification,
    Submeasure,
    check_ac_condition,
    check_exhaustive,
    check_pgp,
    check_sc_equivalence,
    check_sigma_subadditive,
    check_usc_equivalence,
    classification_grid,
    classify,
    delta_sequence,
    random_admissible_family,
    verify_chained_union_bound,
)

SCHEMA = "report_v1"
WORKERS_ENV = "DOBRAKOV_WORKERS"
# classification flags that define a submeasure; the others only place it in the hierarchy
ASSERTED_FLAGS = ("monotone", "continuity")
CHAIN_SAMPLES = 200
DELTA_LENGTH = 9


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise DobrakovError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _run_all(jobs: list[tuple[str, Callable[[], PropertyReport]]]) -> list[PropertyReport]:
    """Run jobs, possibly concurrently; results come back in job order."""
    w = _workers()
    if w == 1:
        return [job() for _, job in jobs]
    with ThreadPoolExecutor(max_workers=w) as pool:
        return list(pool.map(lambda j: j[1](), jobs))


def _hierarchy_report(cls: Classification) -> PropertyReport:
    v = cls.hierarchy_violations()
    if v:
        return PropertyReport("hierarchy", FAILS, witness=v)
    return PropertyReport("hierarchy", HOLDS, details={"label": cls.label})


def _chained_union(mu: Submeasure, seed: int, grid) -> PropertyReport:
    name = "chained_union_bound"
    if not check_pgp(mu, grid).holds:
        return PropertyReport(name, VACUOUS, notes=["mu lacks the p.g.p."])
    deltas = delta_sequence(mu, DELTA_LENGTH)
    rng = random.Random(seed)
    for i in range(CHAIN_SAMPLES):
        fam = random_admissible_family(mu, deltas, rng)
        rep = verify_chained_union_bound(mu, deltas, fam)
        if rep.fails:
            return PropertyReport(name, FAILS, witness={"sample": i, **rep.witness})
    return PropertyReport(name, HOLDS, details={"samples": CHAIN_SAMPLES, "seed": seed, "deltas": deltas})


def _classification_dict(cls: Classification) -> dict:
    return {"label": cls.label, "flags": {k: r.verdict for k, r in sorted(cls.reports.items())}}


def _moduli(reports) -> dict:
    return {r.name: r.moduli for r in reports if r.moduli}


def _grid(spec: InstanceSpec, args) -> list[Fraction] | None:
    if args.eps_grid:
        try:
            return [Fraction(x.strip()) for x in args.eps_grid.split(",") if x.strip()]
        except (ValueError, ZeroDivisionError):
            raise DobrakovError(f"malformed --eps-grid {args.eps_grid!r}") from None
    return list(spec.eps_grid) if spec.eps_grid else None


def _seed(spec: InstanceSpec, args) -> int:
    if args.seed is not None:
        return args.seed
    return spec.seed if spec.seed is not None else 0


def _finite(spec: InstanceSpec, what: str) -> None:
    if spec.model != "finite":
        raise DobrakovError(f"{what} requires finite model")


# -- commands ----------------------------------------------------------------


def cmd_check(spec: InstanceSpec, args) -> dict:
    _finite(spec, "check")
    mu = spec.submeasure()
    grid = _grid(spec, args)
    cgrid = classification_grid(mu, grid)
    cls = classify(mu, cgrid)
    seed = _seed(spec, args)
    jobs = [
        ("exhaustive", lambda: check_exhaustive(mu)),
        ("sc_equivalence", lambda: check_sc_equivalence(mu, cgrid)),
        ("usc_equivalence", lambda: check_usc_equivalence(mu, cgrid)),
        ("sigma_subadditive", lambda: check_sigma_subadditive(mu, 4, cls)),
        ("chained_union_bound", lambda: _chained_union(mu, seed, grid)),
        ("ac_condition", lambda: check_ac_condition(mu, cgrid, cls)),
        ("filterbase_axioms", lambda: check_filterbase_axioms(mu, classification=cls)
         if grid is None else check_filterbase_axioms(mu, grid, cls)),
    ]
    props = [cls.reports[k] for k in ASSERTED_FLAGS] + [_hierarchy_report(cls)] + _run_all(jobs)
    info = [r for k, r in cls.reports.items() if k not in ASSERTED_FLAGS] + [check_pgp(mu, grid)]
    return {
        "properties": props,
        "informational": info,
        "classification": _classification_dict(cls),
        "moduli": _moduli(props + info),
    }


def cmd_extend(spec: InstanceSpec, args) -> dict:
    if spec.model != "finite":
        raise DobrakovError("extension requires finite model")
    mu = spec.submeasure()
    cls = classify(mu, classification_grid(mu, _grid(spec, args)))
    missing = hypothesis_failures(mu, cls)
    if missing:
        rep = PropertyReport("extension_hypotheses", FAILS, witness={"missing": missing})
        return {"properties": [rep], "classification": _classification_dict(cls)}
    try:
        res = extend(mu)
    except HypothesisNotMet as exc:
        rep = PropertyReport("extension_hypotheses", FAILS, witness={"error": str(exc)})
        return {"properties": [rep], "classification": _classification_dict(cls)}
    props = [PropertyReport("extension_hypotheses", HOLDS)] + list(res.reports.values())
    return {
        "properties": props,
        "classification": _classification_dict(cls),
        "extension": res.to_dict(),
    }


def cmd_choquet(spec: InstanceSpec, set_text: str, args) -> dict:
    _finite(spec, "choquet")
    if spec.density is None:
        raise DobrakovError("missing density: add a [density] section")
    mu = spec.submeasure()
    a = FiniteSet.parse(mu.universe_size, set_text)
    value = choquet_integral(mu, spec.density, a)
    nu = derived_submeasure(mu, spec.density)
    grid = _grid(spec, args)
    cls = classify(nu, classification_grid(nu, grid))
    props = [_hierarchy_report(cls), check_pgp_preservation(mu, spec.density, grid)]
    return {
        "properties": props,
        "classification": _classification_dict(cls),
        "choquet": {"set": str(a), "value": format_value(value), "norm": norm(value)},
    }


def cmd_dyadic(spec: InstanceSpec, args) -> dict:
    if spec.model != "dyadic":
        raise DobrakovError("dyadic requires dyadic model")
    if spec.target is None:
        raise DobrakovError("dyadic spec needs a [target] section")
    tol = args.tol if args.tol is not None else (spec.tol if spec.tol is not None else 1e-6)
    depth = args.max_depth or spec.max_depth or 25
    props = run_suite(spec.interval_rule(), spec.target, tol, depth, seed=_seed(spec, args))
    return {"properties": props, "dyadic": {"target": str(spec.target), "tol": tol, "max_depth": depth,
                                            "target_length": spec.target.length}}


# -- output ------------------------------------------------------------------


def exit_status(result: dict) -> int:
    return 1 if any(r.fails for r in result["properties"]) else 0


def build_report(command: str, spec: InstanceSpec, result: dict) -> dict:
    props = sorted(result["properties"], key=lambda r: r.name)
    out = {
        "schema": SCHEMA,
        "command": command,
        "instance": serialize_spec(spec),
        "properties": [r.to_dict() for r in props],
        "exit_status": exit_status(result),
    }
    if "informational" in result:
        out["informational"] = [r.to_dict() for r in sorted(result["informational"], key=lambda r: r.name)]
    for key in ("classification", "moduli", "extension", "choquet", "dyadic"):
        if key in result:
            out[key] = to_jsonable(result[key])
    return out


def render_text(report: dict) -> str:
    lines = [f"{report['command']}: {report['instance'].splitlines()[2].split('=', 1)[1].strip()}"]
    if "classification" in report:
        lines.append(f"classification: {report['classification']['label']}")
    for r in report["properties"]:
        line = f"  {r['name']}: {r['verdict']}"
        if r["verdict"] == FAILS:
            line += f"  witness={json.dumps(r['witness'], ensure_ascii=False)}"
        lines.append(line)
    for r in report.get("informational", []):
        lines.append(f"  ({r['name']}: {r['verdict']})")
    if "choquet" in report:
        c = report["choquet"]
        lines.append(f"integral over {c['set']} = {c['value']}  norm {c['norm']}")
    if "extension" in report:
        ext = report["extension"]
        lines.append(f"R0 = {ext['r_zero']}")
        for k, v in ext["mu_star"].items():
            lines.append(f"  mu*({k}) = {v}")
        for k, (b, c) in ext["witnesses"].items():
            lines.append(f"  {k}: inner {b}, outer {c}")
        lines.append(f"note: {COLLAPSE_NOTE}")
    if "dyadic" in report:
        d = report["dyadic"]
        lines.append(f"target {d['target']} (length {d['target_length']}), tol {d['tol']}, depth <= {d['max_depth']}")
    lines.append(f"exit status {report['exit_status']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dobrakov", description="Verify submeasure instances described in spec files.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="instance spec file")
    common.add_argument("--json", action="store_true", help="emit the report_v1 JSON report")
    common.add_argument("--eps-grid", help="comma separated rational eps values")
    common.add_argument("--tol", type=float, help="tolerance for dyadic convergence")
    common.add_argument("--max-depth", type=int, help="largest dyadic refinement depth")
    common.add_argument("--seed", type=int, help="seed for random sweeps")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="classify and run the finite checks")
    sub.add_parser("extend", parents=[common], help="run the extension pipeline")
    ch = sub.add_parser("choquet", parents=[common], help="integrate the spec density over a set")
    ch.add_argument("set", help='set literal such as "{0,1}"')
    sub.add_parser("dyadic", parents=[common], help="run the dyadic interval suite")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        if args.command == "check":
            result = cmd_check(spec, args)
        elif args.command == "extend":
            result = cmd_extend(spec, args)
        elif args.command == "choquet":
            result = cmd_choquet(spec, args.set, args)
        else:
            result = cmd_dyadic(spec, args)
    except (DobrakovError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = build_report(args.command, spec, result)
    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(render_text(report))
    return report["exit_status"]


if __name__ == "__main__":
    sys.exit(main())
