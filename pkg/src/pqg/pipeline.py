"""Staged verification with a deterministic JSON report."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg as la
from .double import (
    InterchangeInconsistent, NotCompactType, build_double, check_double_modular, delta_without_dual_scaling,
    double_star,
)
from .dual import BidualityFailed, DualInconsistent, biduality_iso, build_dual, check_dual_modular, check_dual_structure
from .hopf import HopfData, QuantumGroupoid, run_hopf
from .integrals import ModularData, all_true, run_integrals
from .scalars import CyclotomicScalar, format_scalar
from .repcat import (
    ConversionFailed, comodule_checks, corepresentation_maps, counit_module, form_inner, module_checks,
    module_comodule_correspondence, one_dim_modules, regular_comodule, regular_module, trivial_comodule, yd_checks,
    yd_double_correspondence,
)
from .specio import rep_object
from .star import run_star

SCHEMA = "pqg-report/1"
STAGES = ("grading", "hopf", "modular", "star", "dual", "double", "rep")
ALIASES = {"integrals": "modular"}
DEPENDS = {
    "grading": (),
    "hopf": ("grading",),
    "modular": ("hopf",),
    "star": ("modular",),
    "dual": ("modular",),
    "double": ("dual",),
    "rep": ("dual",),
}
OK = ("pass", "absent")


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction, CyclotomicScalar)):
        return format_scalar(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def resolve_stages(stages) -> list[str]:
    """Requested stages plus their dependencies, in pipeline order."""
    if not stages:
        return list(STAGES)
    want = set()
    todo = [ALIASES.get(s, s) for s in stages]
    for s in todo:
        if s not in STAGES:
            raise ValueError(f"unknown stage {s!r}; choose from {', '.join(STAGES)}")
    while todo:
        s = todo.pop()
        if s not in want:
            want.add(s)
            todo.extend(DEPENDS[s])
    return [s for s in STAGES if s in want]


@dataclass
class Context:
    qg: QuantumGroupoid
    hd: HopfData | None = None
    md: ModularData | None = None
    dual: object = None
    dhd: HopfData | None = None
    dmd: ModularData | None = None
    double: object = None
    Dhd: HopfData | None = None
    Dmd: ModularData | None = None
    rep: object = None  # SpecDocument with representation sections, if any
    star_ok: bool = False


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


GRADING_ORDER = (
    "grading_consistent", "associative", "nondegenerate_partial", "idempotent_partial",
    "nondegenerate_total", "idempotent_total", "has_local_units", "base_unit_relations",
)


def stage_grading(ctx: Context) -> dict:
    A = ctx.qg.algebra
    flags = {"grading_consistent": not A.grading_violations(), "associative": A.is_associative()}
    flags.update(A.check_partial_regularity())
    flags["has_local_units"] = A.has_unit()
    if flags["has_local_units"]:
        flags["base_unit_relations"] = A.base_unit_relations_hold()
    rep = {"status": _status(all(flags.values())), "checks": flags, "dim": A.dim, "objects": list(A.objects)}
    failing = [k for k in GRADING_ORDER if flags.get(k) is False]
    if failing:
        rep["first_failure"] = failing[0]
    return rep


def stage_hopf(ctx: Context) -> dict:
    rep, hd = run_hopf(ctx.qg)
    ctx.hd = hd
    rep["status"] = _status(hd is not None and all_true(rep["checks"]))
    return rep


def stage_modular(ctx: Context) -> dict:
    rep, md = run_integrals(ctx.qg, ctx.hd)
    ctx.md = md
    rep["status"] = _status(md is not None and all_true(rep["checks"]))
    return rep


def stage_star(ctx: Context) -> dict:
    rep = run_star(ctx.qg, ctx.hd, ctx.md)
    if rep.get("status") != "absent":
        rep["status"] = _status(all_true(rep["checks"]))
        ctx.star_ok = rep["status"] == "pass"
    return rep


def stage_dual(ctx: Context) -> dict:
    qg, hd, md = ctx.qg, ctx.hd, ctx.md
    try:
        d = build_dual(qg, hd, md)
    except DualInconsistent as exc:
        return {"status": "fail", "error": f"DualInconsistent: {exc}"}
    rep: dict = {"dim": d.qg.dim, "checks": {"construction": d.residuals}}
    rep["checks"]["structure"] = check_dual_structure(qg, hd, md, d)
    hrep, dhd = run_hopf(d.qg)
    rep["checks"]["hopf"] = hrep["checks"]
    if dhd is None:
        rep["status"] = "fail"
        rep["failed_at"] = "hopf"
        return rep
    irep, dmd = run_integrals(d.qg, dhd)
    rep["checks"]["modular"] = irep["checks"]
    if dmd is None:
        rep["status"] = "fail"
        rep["failed_at"] = "modular"
        return rep
    rep["checks"]["modular_data"] = check_dual_modular(qg, hd, md, d, dmd)
    rep["center_dim"] = _center_dim(d.qg.algebra)
    try:
        dd = build_dual(d.qg, dhd, dmd, prefix="w.")
        cols = biduality_iso(qg, md, d, dd)
        rep["checks"]["biduality"] = {"isomorphism": True, "identity_in_bases": cols == la.identity(qg.dim)}
    except (BidualityFailed, DualInconsistent) as exc:
        rep["checks"]["biduality"] = {"isomorphism": False}
        rep["error"] = f"{type(exc).__name__}: {exc}"
    ctx.dual, ctx.dhd, ctx.dmd = d, dhd, dmd
    rep["status"] = _status(all_true(rep["checks"]))
    return rep


def _center_dim(A) -> int:
    # x = sum x_i e_i is central iff sum_i x_i (e_i e_j - e_j e_i) = 0 for all j
    eqs: dict = {}
    n = A.dim
    for j in range(n):
        for i in range(n):
            for k, c in la.sub(A.product(i, j), A.product(j, i)).items():
                eqs.setdefault((j, k), {})[i] = c
    return len(la.nullspace(list(eqs.values()), list(range(n))))


def stage_double(ctx: Context) -> dict:
    qg, hd, md, d, dhd, dmd = ctx.qg, ctx.hd, ctx.md, ctx.dual, ctx.dhd, ctx.dmd
    try:
        D = build_double(qg, hd, md, d, dhd, dmd)
    except (NotCompactType, InterchangeInconsistent) as exc:
        return {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
    rep: dict = {"dim": D.qg.dim, "checks": {"structure": D.checks}}
    hrep, Dhd = run_hopf(D.qg)
    rep["checks"]["hopf"] = hrep["checks"]
    if Dhd is None:
        rep["status"] = "fail"
        rep["failed_at"] = "hopf"
        return rep
    irep, Dmd = run_integrals(D.qg, Dhd)
    rep["checks"]["modular"] = irep["checks"]
    if Dmd is None:
        rep["status"] = "fail"
        rep["failed_at"] = "modular"
        return rep
    rep["checks"]["modular_data"] = check_double_modular(qg, md, d, dhd, dmd, D, Dmd)
    rep["delta_without_dual_scaling"] = delta_without_dual_scaling(qg, md, dmd, D, Dmd)
    rep["commutative"] = all(D.qg.algebra.product(i, j) == D.qg.algebra.product(j, i)
                             for i in range(D.qg.dim) for j in range(i))
    if D.qg.algebra.star is not None:
        checks, info = double_star(qg, hd, md, d, D, Dhd, Dmd)
        rep["checks"]["star"] = checks
        rep["star_min_eigenvalue"] = info["min_eigenvalue"]
    ctx.double, ctx.Dhd, ctx.Dmd = D, Dhd, Dmd
    rep["status"] = _status(all_true(rep["checks"]))
    return rep


def _convert(fn, *args) -> tuple[dict, object]:
    try:
        conv = fn(*args)
    except ConversionFailed as exc:
        return {"converted": False, "violated": exc.violated}, None
    return {"converted": True, **conv.checks}, conv.result


def _rep_from_document(ctx: Context) -> dict:
    qg, hd, d, D = ctx.qg, ctx.hd, ctx.dual, ctx.double
    doc = ctx.rep
    over = doc.module_over
    if over == "double" and D is None:
        return {"status": "fail", "error": "module over the double needs the double stage"}
    acting = {"A": qg.algebra, "dual": d.qg.algebra, "double": D.qg.algebra if D else None}.get(over)
    V = rep_object(doc, acting)
    out: dict = {"dim": V.dim, "checks": {}}
    checks = out["checks"]
    if V.action is not None and V.coaction is not None:
        if over != "A":
            return {"status": "fail", "error": "a module and a comodule together must both be over A"}
        checks["yetter_drinfeld"] = yd_checks(qg, hd, V)
        if D is not None:
            checks["to_double"], _ = _convert(yd_double_correspondence, qg, hd, d, D, V)
    elif V.coaction is not None:
        checks["comodule"] = comodule_checks(qg, hd.eps, V)
        if all(checks["comodule"].values()):
            checks["corepresentation"] = corepresentation_maps(qg, hd, V).checks
        checks["to_module"], _ = _convert(module_comodule_correspondence, qg, hd, d, V)
    elif V.action is not None:
        checks["module"] = module_checks(acting, V)
        if over == "dual":
            checks["to_comodule"], _ = _convert(module_comodule_correspondence, qg, hd, d, V)
        elif over == "double":
            checks["to_yetter_drinfeld"], _ = _convert(yd_double_correspondence, qg, hd, d, D, V)
    out["status"] = _status(all_true(checks))
    return out


def stage_rep(ctx: Context) -> dict:
    if ctx.rep is not None and ctx.rep.has_rep:
        return _rep_from_document(ctx)
    qg, hd, md, d, D = ctx.qg, ctx.hd, ctx.md, ctx.dual, ctx.double
    A = qg.algebra
    checks: dict = {
        "regular_module": module_checks(A, regular_module(A)),
        "counit_module": module_checks(A, counit_module(qg, hd.eps)),
    }
    reg = regular_comodule(qg)
    if ctx.star_ok:
        reg.inner = form_inner(A, md.phi)
    checks["regular_comodule"] = comodule_checks(qg, hd.eps, reg)
    checks["regular_corepresentation"] = corepresentation_maps(qg, hd, reg).checks
    checks["regular_comodule_to_module"], _ = _convert(module_comodule_correspondence, qg, hd, d, reg)
    checks["trivial_comodule_to_module"], _ = _convert(module_comodule_correspondence, qg, hd, d, trivial_comodule(qg))
    out: dict = {"checks": checks}
    if D is not None:
        checks["regular_double_module_to_yd"], _ = _convert(
            yd_double_correspondence, qg, hd, d, D, regular_module(D.qg.algebra))
        ones = one_dim_modules(D.qg.algebra)
        out["one_dim_double_modules"] = len(ones)
        checks["one_dim_double_modules_to_yd"] = {
            f"chi{k}": _convert(yd_double_correspondence, qg, hd, d, D, M)[0] for k, M in enumerate(ones)
        }
    out["status"] = _status(all_true(checks))
    return out


RUNNERS = {
    "grading": stage_grading, "hopf": stage_hopf, "modular": stage_modular, "star": stage_star,
    "dual": stage_dual, "double": stage_double, "rep": stage_rep,
}


def run_pipeline(qg: QuantumGroupoid, stages=None, rep_doc=None, ctx: Context | None = None) -> dict:
    """Run the requested stages (and their dependencies) in order.

    A stage whose dependency did not pass is marked ``skipped``.
    """
    order = resolve_stages(stages)
    ctx = ctx or Context(qg)
    ctx.rep = rep_doc
    results: dict[str, dict] = {}
    for s in order:
        blocked = [p for p in DEPENDS[s] if results.get(p, {}).get("status") not in OK]
        if blocked:
            results[s] = {"status": "skipped", "reason": f"{blocked[0]} did not pass"}
            continue
        try:
            results[s] = RUNNERS[s](ctx)
        except Exception as exc:  # a stage crash is a failure of that stage, not of the run
            results[s] = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
    report = {
        "schema": SCHEMA,
        "name": qg.name,
        "stages": results,
        "passed": all(r["status"] in OK for r in results.values()),
    }
    return report
