from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from pqg import linalg as la, zoo
from pqg.hopf import run_hopf
from pqg.integrals import run_integrals
from pqg.star import (
    DiagonalizationFailed, OPERATORS, check_positivity, check_star_axioms, diagonalize_structure_maps,
    exact_joint_eigenbasis, float_joint_eigenbasis, hermitian_form, is_psd, positivity_witness, run_star,
)


def data(name: str):
    qg = zoo.get(name)
    _, hd = run_hopf(qg)
    _, md = run_integrals(qg, hd)
    return qg, hd, md


def test_star_axiom_examples():
    for name in ("P2", "Z2"):
        qg, hd, md = data(name)
        assert check_star_axioms(qg, hd, md) == (True, [])
    qg, hd, md = data("Z2-sign-star")
    ok, failing = check_star_axioms(qg, hd, md)
    assert not ok and failing == ["comultiplicative"]


def test_positivity_examples():
    qg, _, md = data("P2")
    assert hermitian_form(qg.algebra, md.phi) == [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    assert check_positivity(qg, md.phi)[0]
    qg, _, md = data("Z2")
    assert hermitian_form(qg.algebra, md.phi) == [[1, 0], [0, 1]]
    qg, _, md = data("SW-naive-star")
    ok, info = check_positivity(qg, md.phi)
    assert not ok and info["hermitian"] and info["min_eigenvalue"] < -0.5


@pytest.mark.parametrize("name", ["P2", "AG", "FunZ3"])
def test_groupoid_eigenvalues_are_one(name):
    qg, hd, md = data(name)
    rep = diagonalize_structure_maps(qg, hd, md)
    assert all(rep.flags().values())
    assert rep.exact and len(rep.eigen) == qg.dim
    assert all(x == 1 for _, vals in rep.eigen for x in vals)


@pytest.mark.parametrize("name", zoo.STAR_FIXTURES)
def test_positivity_consequences_on_star_fixtures(name):
    qg, hd, md = data(name)
    rep = run_star(qg, hd, md)
    flags = rep["checks"]
    assert all(v for k, v in flags.items() if k != "consequences")
    assert all(flags["consequences"].values())


@pytest.mark.parametrize("name", zoo.STAR_FIXTURES)
def test_positivity_witness(name):
    qg, hd, md = data(name)
    rep = diagonalize_structure_maps(qg, hd, md)
    for b, _ in rep.eigen:
        for a in range(qg.dim):
            ok, val = positivity_witness(qg, md, a, b)
            assert ok and val >= -1e-9


def test_sweedler_has_no_star_section():
    qg, hd, md = data("SW")
    assert run_star(qg, hd, md) == {"status": "absent"}


def test_nonpositive_star_skips_positivity_flags():
    qg, hd, md = data("SW-naive-star")
    rep = run_star(qg, hd, md)
    assert rep["checks"]["phi_positive"] is False
    assert "eigenvalues_positive" not in rep["checks"]


def _ops(n: int, sigma):
    ident = la.identity(n)
    ops = {k: ident for k in OPERATORS}
    ops["sigma_phi"] = sigma
    return ops


def test_float_fallback_for_irrational_spectrum():
    A = zoo.get("Z2").algebra
    sigma = [{0: 1, 1: 1}, {0: 1, 1: 2}]  # eigenvalues (3 +- sqrt 5) / 2
    with pytest.raises(DiagonalizationFailed):
        exact_joint_eigenbasis(A, _ops(2, sigma))
    eig = float_joint_eigenbasis(A, _ops(2, sigma))
    vals = sorted(v[0].real for _, v in eig)
    assert vals == pytest.approx([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2], abs=1e-9)


def test_float_fallback_rejects_jordan_block():
    A = zoo.get("Z2").algebra
    with pytest.raises(DiagonalizationFailed):
        float_joint_eigenbasis(A, _ops(2, [{0: 1}, {0: 1, 1: 1}]))


def test_psd_tolerance():
    assert is_psd([[1, 0], [0, Fraction(-1, 10**12)]])[0]
    assert not is_psd([[1, 0], [0, Fraction(-1, 10**6)]])[0]
    assert is_psd([])[0]
    assert np.isclose(is_psd([[2, 1], [1, 2]])[1], 1.0)
