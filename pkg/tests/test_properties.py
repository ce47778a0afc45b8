"""Randomized identities across modules, on random elements of the fixtures."""
from __future__ import annotations

import random

from hypothesis import given, strategies as st

from pqg import linalg as la, zoo
from pqg.algebra import tensor_multiply
from pqg.scalars import embed, field
from pqg.specio import emit_spec, from_quantum_groupoid, parse_spec

from conftest import built

POSITIVE = list(zoo.FIXTURES)
names = st.sampled_from(POSITIVE)
star_names = st.sampled_from(zoo.STAR_FIXTURES)


def element(data, n: int, conductor: int = 1):
    zeta = field(conductor).zeta() if conductor > 1 else 1
    coeffs = data.draw(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, max(conductor - 1, 0))),
                                min_size=n, max_size=n))
    return la.clean({i: c * zeta ** k for i, (c, k) in enumerate(coeffs)})


def phi_of(md, x):
    return la.dot(md.phi, x)


@given(names, st.data())
def test_modular_automorphism_twists_phi(name, data):
    _, ctx = built(name, ("modular",))
    A = ctx.qg.algebra
    a, b = element(data, A.dim, A.conductor), element(data, A.dim, A.conductor)
    assert phi_of(ctx.md, A.multiply(a, b)) == phi_of(ctx.md, A.multiply(b, la.apply(ctx.md.sigma_phi, a)))


@given(names, st.data())
def test_coproduct_is_multiplicative(name, data):
    _, ctx = built(name, ("modular",))
    A = ctx.qg.algebra
    a, b = element(data, A.dim, A.conductor), element(data, A.dim, A.conductor)
    lhs = ctx.qg.comultiply(A.multiply(a, b))
    assert lhs == tensor_multiply(A, ctx.qg.comultiply(a), ctx.qg.comultiply(b))


@given(names, st.data())
def test_antipode_reverses_products(name, data):
    _, ctx = built(name, ("modular",))
    A, S = ctx.qg.algebra, ctx.hd.S
    a, b = element(data, A.dim, A.conductor), element(data, A.dim, A.conductor)
    assert la.apply(S, A.multiply(a, b)) == A.multiply(la.apply(S, b), la.apply(S, a))


@given(names, st.data())
def test_phi_of_antipode_is_phi_times_delta(name, data):
    _, ctx = built(name, ("modular",))
    A = ctx.qg.algebra
    a = element(data, A.dim, A.conductor)
    assert phi_of(ctx.md, la.apply(ctx.hd.S, a)) == phi_of(ctx.md, A.multiply(a, ctx.md.delta))


@given(names, st.data())
def test_dual_product_is_convolution(name, data):
    _, ctx = built(name, ("dual",))
    d, A = ctx.dual, ctx.qg.algebra
    B = d.qg.algebra
    w, x = element(data, B.dim, B.conductor), element(data, B.dim, B.conductor)
    fw, fx = la.apply(d.to_functional, w), la.apply(d.to_functional, x)
    prod = la.apply(d.to_functional, B.multiply(w, x))
    for a in range(A.dim):
        conv = sum((c * fw.get(p, 0) * fx.get(q, 0) for (p, q), c in ctx.qg.delta[a].items()), 0)
        assert prod.get(a, 0) == conv


@given(st.sampled_from(["Z2", "FunZ3", "P2", "SW", "AG"]), st.data())
def test_double_coproduct_multiplicative(name, data):
    _, ctx = built(name, ("double",))
    D = ctx.double.qg
    DA = D.algebra
    x, y = element(data, DA.dim, DA.conductor), element(data, DA.dim, DA.conductor)
    assert D.comultiply(DA.multiply(x, y)) == tensor_multiply(DA, D.comultiply(x), D.comultiply(y))


@given(star_names, st.data())
def test_star_is_antimultiplicative_and_phi_positive(name, data):
    _, ctx = built(name, ("modular",))
    A = ctx.qg.algebra
    a, b = element(data, A.dim, A.conductor), element(data, A.dim, A.conductor)
    assert A.apply_star(A.multiply(a, b)) == A.multiply(A.apply_star(b), A.apply_star(a))
    val = embed(phi_of(ctx.md, A.multiply(A.apply_star(a), a)))
    assert abs(val.imag) < 1e-9 and val.real >= -1e-9
    if a:
        assert val.real > 0  # phi is faithful


@given(st.integers(0, 10**6))
def test_spec_round_trip_on_perturbed_tables(seed):
    qg = zoo.perturb(zoo.get(random.Random(seed).choice(POSITIVE)), random.Random(seed))
    doc = from_quantum_groupoid(qg)
    assert parse_spec(emit_spec(doc)) == doc
