"""Acceptance criteria, one test per criterion, each reporting a PASS/FAIL line.

Run directly (``python3 tests/test_acceptance.py``) to print the lines without pytest.
"""
from __future__ import annotations

import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pqg import linalg as la, zoo  # noqa: E402
from pqg.double import build_double, check_double_modular, check_interchange, double_star, _Builder  # noqa: E402
from pqg.dual import biduality_iso, build_dual, check_dual_modular  # noqa: E402
from pqg.hopf import run_hopf  # noqa: E402
from pqg.integrals import all_true, run_integrals  # noqa: E402
from pqg.pipeline import Context, _center_dim, run_pipeline  # noqa: E402
from pqg.repcat import (  # noqa: E402
    counit_module, module_comodule_correspondence, one_dim_modules, regular_comodule, regular_module,
    trivial_comodule, yd_double_correspondence,
)
from pqg.scalars import parse_scalar  # noqa: E402
from pqg.star import PSD_TOL, diagonalize_structure_maps, run_star  # noqa: E402

from conftest import ACCEPTANCE_LINES  # noqa: E402

POSITIVE = list(zoo.FIXTURES)
ORACLE = json.loads((Path(__file__).parent / "data" / "sweedler_oracle.json").read_text())


def chain(name: str, through: str = "double") -> tuple[dict, Context]:
    ctx = Context(zoo.get(name))
    return run_pipeline(ctx.qg, [through], ctx=ctx), ctx


def bools(x) -> list[bool]:
    if isinstance(x, bool):
        return [x]
    if isinstance(x, dict):
        return [b for v in x.values() for b in bools(v)]
    return []


# -- criteria: each returns (ok, detail) ---------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for name in POSITIVE:
        rep = run_pipeline(zoo.get(name), ["modular"])
        for s in ("grading", "hopf", "modular"):
            sec = rep["stages"][s]
            if sec["status"] != "pass" or not all(bools(sec.get("checks", {}))):
                bad.append(f"{name}/{s}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    return ok, f"{len(POSITIVE)} fixtures, failures {bad or 'none'}, {dt:.2f}s (< 10s)"


def criterion_2():
    t0 = time.perf_counter()
    qg = zoo.get("SW")
    _, hd = run_hopf(qg)
    rep, md = run_integrals(qg, hd)
    dt = time.perf_counter() - t0
    A = qg.algebra
    g, x = A.index["g"], A.index["x"]
    nu = md.nu_fun[0]
    want = {
        "sigma(x) = -x": md.sigma_phi[x] == {x: -1},
        "delta = g": md.delta == {g: 1},
        "S^2(x) = -x": md.S2[x] == {x: -1},
        "nu = 1": nu == 1,
    }
    identities = all_true(rep["checks"])

    def vec(v):
        return {A.basis[k]: c for k, c in v.items()}

    oracle_agrees = (
        all(vec(md.sigma_phi[i]) == {k: parse_scalar(c) for k, c in ORACLE["sigma"][A.basis[i]].items()}
            for i in range(4))
        and vec(md.delta) == {k: parse_scalar(c) for k, c in ORACLE["delta"].items()}
        and parse_scalar(ORACLE["nu"]) == nu
    )
    ok = all(want.values()) and identities and oracle_agrees and dt < 1
    missed = [k for k, v in want.items() if not v]
    detail = (f"stated values missed: {missed or 'none'}; computed sigma(x) = {vec(md.sigma_phi[x])}, "
              f"nu = {nu}; identities {'hold' if identities else 'FAIL'}; "
              f"independent oracle {'agrees' if oracle_agrees else 'DISAGREES'}; {dt:.2f}s")
    return ok, detail


def criterion_3():
    bad = []
    for name in zoo.GROUPOID_FIXTURES:
        qg = zoo.get(name)
        _, hd = run_hopf(qg)
        _, md = run_integrals(qg, hd)
        A = qg.algebra
        if md.delta != A.unit or any(c != 1 for c in md.nu_fun.values()):
            bad.append(f"{name}: delta/nu")
        for r in range(A.nobj):
            for s in range(A.nobj):
                u = A.base_unit(r, s)
                if u and la.dot(md.phi, u) != 1:
                    bad.append(f"{name}: phi(1({r},{s}))")
    return not bad, f"{zoo.GROUPOID_FIXTURES}, failures {bad or 'none'}"


def criterion_4():
    t0 = time.perf_counter()
    _, ctx = chain("P2", "dual")
    center = _center_dim(ctx.dual.qg.algebra)
    dim = ctx.dual.qg.dim
    bad = []
    for name in POSITIVE:
        _, c = chain(name, "dual")
        if c.dual is None or not all(check_dual_modular(c.qg, c.hd, c.md, c.dual, c.dmd).values()):
            bad.append(name)
    dt = time.perf_counter() - t0
    ok = dim == 4 and center == 1 and not bad and dt < 5
    return ok, f"dual(P2) dim {dim}, center dim {center}; dual modular identities fail on {bad or 'none'}; {dt:.2f}s"


def criterion_5():
    bad = []
    for name in POSITIVE:
        _, c = chain(name, "dual")
        try:
            dd = build_dual(c.dual.qg, c.dhd, c.dmd)
            biduality_iso(c.qg, c.md, c.dual, dd)  # raises on any violated law, including phi pullback
        except Exception as exc:  # noqa: BLE001
            bad.append(f"{name}: {exc}")
    return not bad, f"{len(POSITIVE)} fixtures, failures {bad or 'none'}"


def criterion_6():
    t0 = time.perf_counter()
    rep3, c3 = chain("FunZ3")
    sec3 = rep3["stages"]["double"]
    rep6, c6 = chain("FunS3")
    D = c6.double
    full = run_pipeline(D.qg, ["star"])
    n = D.qg.dim
    triv = (c6.Dmd.sigma_phi == la.identity(n) and c6.Dmd.delta == D.qg.algebra.unit
            and all(v == 1 for v in c6.Dmd.nu_fun.values()))
    ident = all(check_double_modular(c6.qg, c6.md, c6.dual, c6.dhd, c6.dmd, D, c6.Dmd).values())
    interchange = []
    for name in POSITIVE:
        _, c = chain(name, "dual")
        if not check_interchange(_Builder(c.qg, c.hd, c.md, c.dual, c.dhd)):
            interchange.append(name)
    dt = time.perf_counter() - t0
    ok = (sec3["dim"] == 9 and sec3["commutative"] and n == 36 and full["passed"] and triv and ident
          and not interchange and dt < 60)
    return ok, (f"D(FunZ3) dim {sec3['dim']} commutative {sec3['commutative']}; D(FunS3) dim {n}, "
                f"pipeline {'pass' if full['passed'] else 'FAIL'}, trivial modular data {triv}; "
                f"interchange disagreements {interchange or 'none'}; {dt:.2f}s")


def criterion_7():
    parts = []
    ok = True
    for name in ("FunZ2", "P2"):
        _, c = chain(name)
        checks, info = double_star(c.qg, c.hd, c.md, c.dual, c.double, c.Dhd, c.Dmd)
        lo = info["min_eigenvalue"]
        good = checks["hermitian"] and checks["factorized_form"] and lo >= -PSD_TOL
        ok = ok and good
        parts.append(f"D({name}) hermitian {checks['hermitian']}, min eigenvalue {lo:.6g}")
    return ok, "; ".join(parts)


def criterion_8():
    results = {}

    def rt(key, conv):
        results[key] = all(conv.checks.values())

    for name in ("Z2", "P2"):
        _, c = chain(name)
        rt(f"{name} regular comodule", module_comodule_correspondence(c.qg, c.hd, c.dual, regular_comodule(c.qg)))
        rt(f"{name} trivial comodule", module_comodule_correspondence(c.qg, c.hd, c.dual, trivial_comodule(c.qg)))
    _, c = chain("P2")
    rt("D(P2) regular module", yd_double_correspondence(c.qg, c.hd, c.dual, c.double, regular_module(c.double.qg.algebra)))
    _, c = chain("Z2")
    rt("D(Z2) counit module", yd_double_correspondence(c.qg, c.hd, c.dual, c.double, counit_module(c.double.qg, c.Dhd.eps)))
    _, c = chain("FunZ2")
    mods = one_dim_modules(c.double.qg.algebra)
    for k, M in enumerate(mods):
        rt(f"D(FunZ2) character {k}", yd_double_correspondence(c.qg, c.hd, c.dual, c.double, M))
    failed = [k for k, v in results.items() if not v]
    ok = len(mods) == 4 and not failed
    return ok, f"{len(results)} conversions, {len(mods)} characters of D(FunZ2), failures {failed or 'none'}"


def criterion_9():
    bad = []
    for name, (stage, check) in zoo.NEGATIVE_EXPECTATIONS.items():
        rep = run_pipeline(zoo.get(name))
        st = rep["stages"]
        order = list(st)
        k = order.index(stage)
        sec = st[stage]
        if (any(st[s]["status"] != "pass" for s in order[:k]) or sec["status"] != "fail"
                or sec.get("first_failure", sec.get("failed_at")) != check):
            bad.append(name)
    passed = []
    for seed in range(200):
        qg = zoo.perturb(zoo.P2(), random.Random(seed))
        if run_pipeline(qg)["passed"]:
            passed.append(seed)
    ok = not bad and not passed
    return ok, f"negatives off target: {bad or 'none'}; perturbations passing every stage: {len(passed)}/200"


def criterion_10():
    bad = []
    for name in zoo.STAR_FIXTURES:
        qg = zoo.get(name)
        _, hd = run_hopf(qg)
        _, md = run_integrals(qg, hd)
        rep = diagonalize_structure_maps(qg, hd, md)
        flags = rep.flags()
        sec = run_star(qg, hd, md)
        if not all(flags.values()) or not all(bools(sec["checks"])):
            bad.append(name)
        if name in zoo.GROUPOID_FIXTURES and not all(v == 1 for _, vals in rep.eigen for v in vals):
            bad.append(f"{name}: eigenvalue != 1")
    return not bad, f"{len(zoo.STAR_FIXTURES)} star fixtures, failures {bad or 'none'}"


CRITERIA = {
    1: ("axiom suite", criterion_1),
    2: ("Sweedler modular oracle", criterion_2),
    3: ("compact-type triviality", criterion_3),
    4: ("duality", criterion_4),
    5: ("biduality", criterion_5),
    6: ("Drinfeld double", criterion_6),
    7: ("double positivity", criterion_7),
    8: ("correspondences", criterion_8),
    9: ("negative fixtures", criterion_9),
    10: ("diagonalizability", criterion_10),
}

KNOWN_FAILING = {
    2: "the stated sigma(x) = -x and nu = 1 contradict phi(ab) = phi(b sigma(a)) and phi S^2 = phi(- nu) "
       "for the left invariant phi = x*; the independent oracle gives sigma(x) = x, nu = -1",
}


def report_line(k: int) -> tuple[bool, str]:
    title, fn = CRITERIA[k]
    ok, detail = fn()
    return ok, f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {title} - {detail}"


def _param(k: int):
    if k in KNOWN_FAILING:
        return pytest.param(k, marks=pytest.mark.xfail(strict=True, reason=KNOWN_FAILING[k]))
    return k


@pytest.mark.parametrize("k", [_param(k) for k in CRITERIA])
def test_criterion(k):
    ok, line = report_line(k)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for k in CRITERIA:
        ok, line = report_line(k)
        failures += not ok
        print(line)
    sys.exit(1 if failures else 0)
