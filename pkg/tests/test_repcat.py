from __future__ import annotations

import pytest

from pqg import linalg as la, zoo
from pqg.repcat import (
    ConversionFailed, RepObject, check_comodule, check_module, check_yetter_drinfeld, comodule_checks,
    corepresentation_maps, counit_module, characters, form_inner, module_checks, module_comodule_correspondence,
    one_dim_modules, regular_comodule, regular_module, trivial_comodule, yd_checks, yd_double_correspondence,
)

from conftest import built


def ctx_of(name: str, stage: str = "double"):
    return built(name, (stage,))[1]


# -- modules ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", list(zoo.FIXTURES))
def test_regular_module(name):
    A = zoo.get(name).algebra
    assert check_module(A, regular_module(A))


def test_counit_module_of_pair_groupoid():
    ctx = ctx_of("P2", "modular")
    V = counit_module(ctx.qg, ctx.hd.eps)
    assert V.dim == 2
    assert module_checks(ctx.qg.algebra, V) == {"unital": True, "associative": True, "grading_compatible": True}


def test_zero_action_is_not_unital():
    A = zoo.get("P2").algebra
    V = RepObject([(0, 0), (1, 1)], action=[[{}, {}] for _ in range(A.dim)])
    assert module_checks(A, V)["unital"] is False


def test_missing_action_reported():
    A = zoo.get("Z2").algebra
    assert module_checks(A, RepObject([(0, 0)])) == {"action_present": False}


@pytest.mark.parametrize("name", zoo.STAR_FIXTURES)
def test_regular_module_unitary_for_phi_inner_product(name):
    ctx = ctx_of(name, "modular")
    A = ctx.qg.algebra
    V = regular_module(A)
    V.inner = form_inner(A, ctx.md.phi)
    flags = module_checks(A, V)
    assert flags["unitary"] and flags["inner_hermitian"] and flags["components_orthogonal"]


# -- comodules -------------------------------------------------------------------------

@pytest.mark.parametrize("name", list(zoo.FIXTURES))
def test_trivial_and_regular_comodules(name):
    ctx = ctx_of(name, "modular")
    assert check_comodule(ctx.qg, ctx.hd.eps, trivial_comodule(ctx.qg))
    assert check_comodule(ctx.qg, ctx.hd.eps, regular_comodule(ctx.qg))


def test_wrong_leg_grading_breaks_range_condition():
    ctx = ctx_of("P2", "modular")
    V = trivial_comodule(ctx.qg)
    # swap the coactions of the two objects; the algebra legs now sit in the wrong quadrant
    V.coaction = [V.coaction[1], V.coaction[0]]
    flags = comodule_checks(ctx.qg, ctx.hd.eps, V)
    assert flags["range_condition"] is False


def test_missing_coaction_reported():
    ctx = ctx_of("Z2", "modular")
    assert comodule_checks(ctx.qg, ctx.hd.eps, RepObject([(0, 0)])) == {"coaction_present": False}


# -- corepresentations -----------------------------------------------------------------

def test_regular_corepresentation_of_pair_groupoid():
    ctx = ctx_of("P2", "modular")
    rep = corepresentation_maps(ctx.qg, ctx.hd, regular_comodule(ctx.qg))
    assert len(rep.X) == 16
    assert rep.checks == {"pseudo_inverse_left": True, "pseudo_inverse_right": True}


def test_trivial_corepresentation_of_z2_is_identity():
    ctx = ctx_of("Z2", "modular")
    rep = corepresentation_maps(ctx.qg, ctx.hd, trivial_comodule(ctx.qg))
    assert all(rep.X[(0, a)] == {(0, a): 1} for a in range(2))
    assert rep.X == rep.Xm


@pytest.mark.parametrize("name", ["AG", "P2", "S3"])
def test_regular_corepresentation_unitary(name):
    ctx = ctx_of(name, "modular")
    V = regular_comodule(ctx.qg)
    V.inner = form_inner(ctx.qg.algebra, ctx.md.phi)
    rep = corepresentation_maps(ctx.qg, ctx.hd, V)
    assert rep.unitary and all(rep.checks.values())


# -- module <-> comodule ---------------------------------------------------------------

def test_regular_comodule_of_z2_gives_regular_dual_module():
    ctx = ctx_of("Z2", "dual")
    conv = module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, regular_comodule(ctx.qg))
    assert conv.checks == {"source_valid": True, "target_valid": True, "round_trip": True}
    B = ctx.dual.qg.algebra
    assert conv.result.action == regular_module(B).action


def test_regular_comodule_of_pair_groupoid():
    ctx = ctx_of("P2", "dual")
    conv = module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, regular_comodule(ctx.qg))
    assert conv.result.dim == 4 and all(conv.checks.values())
    assert check_module(ctx.dual.qg.algebra, conv.result)


@pytest.mark.parametrize("name", list(zoo.FIXTURES))
def test_trivial_comodule_gives_counit_module(name):
    ctx = ctx_of(name, "dual")
    conv = module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, trivial_comodule(ctx.qg))
    assert all(conv.checks.values())
    assert conv.result.action == counit_module(ctx.dual.qg, ctx.dhd.eps).action


@pytest.mark.parametrize("name", zoo.STAR_FIXTURES)
def test_unitarity_transfers_to_dual_module(name):
    ctx = ctx_of(name, "dual")
    V = regular_comodule(ctx.qg)
    V.inner = form_inner(ctx.qg.algebra, ctx.md.phi)
    conv = module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, V)
    assert conv.checks["unitarity_preserved"] and conv.checks["round_trip"]


def test_module_to_comodule_direction():
    ctx = ctx_of("AG", "dual")
    B = ctx.dual.qg.algebra
    conv = module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, regular_module(B))
    assert all(conv.checks.values())
    assert check_comodule(ctx.qg, ctx.hd.eps, conv.result)


def test_correspondence_rejects_bad_input():
    ctx = ctx_of("P2", "dual")
    with pytest.raises(ConversionFailed, match="exactly one"):
        module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, RepObject([(0, 0)]))
    bad = RepObject([(0, 0), (1, 1)], action=[[{}, {}] for _ in range(4)])
    with pytest.raises(ConversionFailed) as err:
        module_comodule_correspondence(ctx.qg, ctx.hd, ctx.dual, bad)
    assert "unital" in err.value.violated


# -- Yetter-Drinfeld -------------------------------------------------------------------

def _with_coaction(V: RepObject, W: RepObject) -> RepObject:
    return RepObject(list(V.grade), action=V.action, coaction=W.coaction)


@pytest.mark.parametrize("name", list(zoo.FIXTURES))
def test_trivial_yd_pair(name):
    ctx = ctx_of(name, "modular")
    V = _with_coaction(counit_module(ctx.qg, ctx.hd.eps), trivial_comodule(ctx.qg))
    assert all(yd_checks(ctx.qg, ctx.hd, V).values())


def test_regular_action_with_regular_coaction_is_not_yd_on_z2():
    ctx = ctx_of("Z2", "modular")
    V = _with_coaction(regular_module(ctx.qg.algebra), regular_comodule(ctx.qg))
    assert check_module(ctx.qg.algebra, V) and check_comodule(ctx.qg, ctx.hd.eps, V)
    assert not check_yetter_drinfeld(ctx.qg, ctx.hd, V)


def test_regular_action_with_trivial_coaction_is_yd_on_z2():
    # on a commutative algebra the trivial coaction satisfies the YD identity
    ctx = ctx_of("Z2", "modular")
    V = _with_coaction(regular_module(ctx.qg.algebra), RepObject([(0, 0)] * 2, coaction=[{(0, 0): 1}, {(1, 0): 1}]))
    assert check_yetter_drinfeld(ctx.qg, ctx.hd, V)


@pytest.mark.parametrize("name", ["P2", "Z2", "FunZ3", "AG", "SW"])
def test_regular_double_module_to_yd(name):
    ctx = ctx_of(name)
    V = regular_module(ctx.double.qg.algebra)
    conv = yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, V)
    assert all(conv.checks.values())
    assert check_yetter_drinfeld(ctx.qg, ctx.hd, conv.result)


def test_four_characters_of_double_of_fun_z2():
    ctx = ctx_of("FunZ2")
    DA = ctx.double.qg.algebra
    chars = characters(DA)
    assert len(chars) == 4 and len({tuple(sorted(c.items())) for c in chars}) == 4
    mods = one_dim_modules(DA)
    assert len(mods) == 4
    for M in mods:
        conv = yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, M)
        assert conv.result.dim == 1 and all(conv.checks.values())


def test_counit_module_of_double_of_z2_is_trivial_yd_pair():
    ctx = ctx_of("Z2")
    M = counit_module(ctx.double.qg, ctx.Dhd.eps)
    conv = yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, M)
    assert all(conv.checks.values())
    W = conv.result
    assert W.coaction == trivial_comodule(ctx.qg).coaction
    assert W.action == counit_module(ctx.qg, ctx.hd.eps).action


def test_yd_to_double_round_trip():
    ctx = ctx_of("FunZ3")
    V = _with_coaction(counit_module(ctx.qg, ctx.hd.eps), trivial_comodule(ctx.qg))
    conv = yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, V)
    assert all(conv.checks.values())
    assert check_module(ctx.double.qg.algebra, conv.result)


@pytest.mark.parametrize("name", ["P2", "FunZ2"])
def test_unitary_double_module_transfers(name):
    ctx = ctx_of(name)
    DA = ctx.double.qg.algebra
    V = regular_module(DA)
    V.inner = form_inner(DA, ctx.Dmd.phi)
    conv = yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, V)
    assert conv.checks.get("unitarity_preserved", True) and conv.checks["round_trip"]


def test_yd_rejects_non_yd_pair():
    ctx = ctx_of("Z2")
    V = _with_coaction(regular_module(ctx.qg.algebra), regular_comodule(ctx.qg))
    with pytest.raises(ConversionFailed) as err:
        yd_double_correspondence(ctx.qg, ctx.hd, ctx.dual, ctx.double, V)
    assert err.value.violated == ["yetter_drinfeld"]
