from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from pqg import linalg as la, zoo
from pqg.algebra import (
    NoUnit, PartialAlgebra, base_units, check_morphism, check_partial_regularity, multiply, slice_tensor, tensor,
    tensor_square,
)
from pqg.hopf import solve_counit

POSITIVE = list(zoo.FIXTURES)


def el(A: PartialAlgebra, label: str):
    return {A.index[label]: 1}


def test_p2_products():
    A = zoo.get("P2").algebra
    assert multiply(A, el(A, "e12"), el(A, "e12")) == el(A, "e12")
    assert multiply(A, el(A, "e12"), el(A, "e21")) == {}


def test_z2_group_law():
    A = zoo.get("Z2").algebra
    g = {1: 1}
    assert A.multiply(g, g) == A.unit == {0: 1}


def test_base_units():
    A = zoo.get("P2").algebra
    assert A.base_unit(0, 1) == el(A, "e12")
    assert base_units(A)["total"] == {i: 1 for i in range(4)}
    Z = zoo.get("Z2").algebra
    assert Z.base_unit(0, 0) == {0: 1}
    with pytest.raises(NoUnit):
        base_units(zoo.upper_triangular(4).algebra)


@pytest.mark.parametrize("name", ["P2", "Z2", "AG", "SW", "FunS3"])
def test_regular_fixtures_are_regular(name):
    assert all(check_partial_regularity(zoo.get(name).algebra).values())


def test_upper_triangular_is_partially_degenerate():
    flags = check_partial_regularity(zoo.upper_triangular(4).algebra)
    assert flags["nondegenerate_partial"] is False


@pytest.mark.parametrize("name,dim", [("P2", 8), ("Z2", 4), ("AG", 12)])
def test_tensor_square_dimension(name, dim):
    T = tensor_square(zoo.get(name).algebra)
    assert T.dim == dim
    assert all(T.checks().values())


def test_slices():
    qg = zoo.get("P2")
    A = qg.algebra
    eps = solve_counit(qg)
    assert slice_tensor(eps, tensor_square(A).E, "right") == A.unit
    assert slice_tensor(eps, {}, "left") == {}
    phi = {0: 1}  # Haar functional on Z2 kills g
    assert slice_tensor(phi, {(1, 1): 1}, "right") == {}
    with pytest.raises(ValueError):
        slice_tensor(phi, {}, "middle")


def test_morphisms():
    qg = zoo.get("P2")
    A = qg.algebra
    assert check_morphism(la.identity(A.dim), A, A)
    assert not check_morphism([{} for _ in range(A.dim)], A, A)
    assert check_morphism(qg.delta, A, tensor_square(A))


def test_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        PartialAlgebra([], [], [], {})
    with pytest.raises(ValueError):
        PartialAlgebra(["a", "a"], ["x"], [(0, 0, 0, 0)], {})
    with pytest.raises(ValueError):
        PartialAlgebra(["a"], ["x", "y"], [(0, 0, 0, 0)], {})
    with pytest.raises(ValueError):
        PartialAlgebra(["a"], ["x"], [(0, 0, 0, 1)], {})


@pytest.mark.parametrize("name", POSITIVE + list(zoo.NEGATIVES))
def test_associativity_on_all_fixtures(name):
    A = zoo.get(name).algebra
    assert A.is_associative()
    assert not A.grading_violations()


@pytest.mark.parametrize("name", POSITIVE)
def test_E_is_identity_on_pairs(name):
    T = tensor_square(zoo.get(name).algebra)
    assert T.multiply(T.E, T.E) == T.E
    for p in T.pairs:
        assert T.sandwich({p: 1}) == {p: 1}


@st.composite
def incidence_algebras(draw):
    """Matrix units e_rt over a random transitive relation on up to five objects."""
    n = draw(st.integers(1, 5))
    rel = {(r, t) for r in range(n) for t in range(n) if draw(st.booleans())}
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    pairs = sorted(rel)
    if not pairs:
        pairs = [(0, 0)]
    idx = {p: i for i, p in enumerate(pairs)}
    mult = {(idx[(r, s)], idx[(s2, t)]): {idx[(r, t)]: 1} for (r, s) in pairs for (s2, t) in pairs if s == s2}
    return PartialAlgebra([str(k) for k in range(n)], [f"e{r}{t}" for r, t in pairs],
                          [(r, t, r, t) for r, t in pairs], mult)


@given(incidence_algebras())
def test_partial_nondegeneracy_implies_total(A):
    assert A.is_associative() and not A.grading_violations()
    flags = check_partial_regularity(A)
    if flags["nondegenerate_partial"]:
        assert flags["nondegenerate_total"]


@pytest.mark.parametrize("name", POSITIVE + list(zoo.NEGATIVES))
def test_partial_nondegeneracy_implies_total_on_zoo(name):
    flags = check_partial_regularity(zoo.get(name).algebra)
    assert not flags["nondegenerate_partial"] or flags["nondegenerate_total"]
