"""The dual quantum groupoid on the functionals phi(- a), and biduality.

Internally the dual is first assembled on the coordinate functionals f_i
(f_i(e_j) = [i == j]), where the product is the transpose of the coproduct
and the coproduct is the transposed opposite product.  It is then rewritten
on the basis w_i = phi(- e_i).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .algebra import PartialAlgebra, Tensor, Vec, compose_grades
from .hopf import HopfData, QuantumGroupoid, tensor_map
from .integrals import ModularData, compose_functional, gram
from .scalars import conj, div

PREFIX = "w."


class BidualityFailed(ValueError):
    def __init__(self, law: str):
        super().__init__(f"biduality map violates: {law}")
        self.law = law


class DualInconsistent(ValueError):
    pass


@dataclass
class DualQuantumGroupoid:
    qg: QuantumGroupoid
    pairing: list[Vec]  # rows P[i][j] = w_i(e_j)
    to_functional: list[Vec]  # columns: f-coordinates of w_i
    from_functional: list[Vec]
    residuals: dict


# -- basis changes ----------------------------------------------------------------

def _grade_of(A_grades: list, v: Vec):
    gs = {A_grades[k] for k in v}
    if len(gs) != 1:
        raise DualInconsistent("basis change does not preserve homogeneity")
    return gs.pop()


def change_basis(qg: QuantumGroupoid, cols: list[Vec], labels: list[str], name: str = "") -> QuantumGroupoid:
    """The same quantum groupoid on the homogeneous basis b_p = sum_i cols[p][i] e_i."""
    A = qg.algebra
    n = A.dim
    inv = la.inverse(cols, n)
    grade = [_grade_of(A.grade, c) for c in cols]
    mult = {}
    for p in range(n):
        for q in range(n):
            v = la.apply(inv, A.multiply(cols[p], cols[q]))
            if v:
                mult[(p, q)] = v
    star = None
    if A.star is not None:
        star = []
        for p in range(n):
            img: Vec = {}
            for i, c in cols[p].items():
                la.axpy(img, conj(c), A.star[i])
            star.append(la.apply(inv, img))
    B = PartialAlgebra(list(A.objects), labels, grade, mult, A.conductor, star)
    delta = None
    if qg.delta is not None:
        delta = [tensor_map(inv, inv, qg.comultiply(cols[p])) for p in range(n)]

    def pull(w):
        return None if w is None else compose_functional(w, cols)

    S = None
    if qg.antipode is not None:
        S = la.compose(inv, la.compose(qg.antipode, cols))
    return QuantumGroupoid(B, delta, name=name or qg.name, counit=pull(qg.counit), antipode=S,
                           phi=pull(qg.phi), psi=pull(qg.psi), meta=dict(qg.meta))


# -- the dual on coordinate functionals -----------------------------------------

def _dual_grade(q):
    a, b, c, d = q
    return (b, d, a, c)


def _coproduct_direct(A: PartialAlgebra) -> list[Tensor]:
    """Dual coproduct on f_k: (a (x) b) -> f_k(b a)."""
    n = A.dim
    out: list[Tensor] = [dict() for _ in range(n)]
    for (b, a), v in A.mult.items():
        for k, c in v.items():
            out[k][(a, b)] = c
    return out


def _dual_product(qg: QuantumGroupoid) -> dict:
    """(f_p f_q)(a) = (f_p (x) f_q) Delta(a)."""
    mult: dict = {}
    for a, d in enumerate(qg.delta):
        for (p, q), c in d.items():
            mult.setdefault((p, q), {})[a] = c
    return mult


def _solve_coproduct(qg: QuantumGroupoid, fprod: dict, form: int) -> list[Tensor]:
    """Solve the pairing identities for the dual coproduct, one functional at a time.

    form 1: (D(w)(x (x) 1), a (x) b) = w(b (id (x) x) D(a)), tested against every f_x.
    form 2: ((1 (x) x) D(w), a (x) b) = w((x (x) id)(D(b)) a).
    """
    A = qg.algebra
    n = A.dim
    out = []
    right = [dict() for _ in range(n)]  # right[x][(p, y)] = coefficient of f_y in f_p f_x
    left = [dict() for _ in range(n)]  # left[x][(q, y)] = coefficient of f_y in f_x f_q
    for (p, q), v in fprod.items():
        for y, c in v.items():
            right[q][(p, y)] = c
            left[p][(q, y)] = c
    for k in range(n):
        rows, rhs = [], []
        for x in range(n):
            if form == 1:
                # sum_pq T_pq (f_p f_x)(a) f_q(b) = sum over D(a) = e_i (x) e_x of f_k(b e_i)
                for a in range(n):
                    row_by_b: dict[int, Vec] = {}
                    for (p, y), c in right[x].items():
                        if y == a:
                            for b in range(n):
                                row_by_b.setdefault(b, {})[(p, b)] = c
                    for b in range(n):
                        val = 0
                        for (i, j), c in qg.delta[a].items():
                            if j == x:
                                val += c * A.product(b, i).get(k, 0)
                        row = row_by_b.get(b, {})
                        if row or val:
                            rows.append(row)
                            rhs.append(val)
            else:
                # sum_pq T_pq f_p(a) (f_x f_q)(b) = sum over D(b) = e_x (x) e_j of f_k(e_j a)
                for b in range(n):
                    row_by_a: dict[int, Vec] = {}
                    for (q, y), c in left[x].items():
                        if y == b:
                            for a in range(n):
                                row_by_a.setdefault(a, {})[(a, q)] = c
                    for a in range(n):
                        val = 0
                        for (i, j), c in qg.delta[b].items():
                            if i == x:
                                val += c * A.product(j, a).get(k, 0)
                        row = row_by_a.get(a, {})
                        if row or val:
                            rows.append(row)
                            rhs.append(val)
        unknowns = [(p, q) for p in range(n) for q in range(n)]
        try:
            sols, null = la.solve_system(rows, rhs, unknowns)
        except la.Inconsistent:
            raise DualInconsistent(f"dual coproduct identity {form} has no solution") from None
        if null:
            raise DualInconsistent(f"dual coproduct identity {form} does not determine the coproduct")
        out.append(sols[0] if sols else {})
    return out


def dual_on_functionals(qg: QuantumGroupoid, hd: HopfData, md: ModularData) -> tuple[QuantumGroupoid, dict]:
    A = qg.algebra
    n = A.dim
    fprod = _dual_product(qg)
    direct = _coproduct_direct(A)
    res = {}
    c1 = _solve_coproduct(qg, fprod, 1)
    c2 = _solve_coproduct(qg, fprod, 2)
    res["coproduct_identity_1"] = c1 == direct
    res["coproduct_identity_2"] = c2 == direct
    grade = [_dual_grade(q) for q in A.grade]
    star = None
    if A.star is not None:
        # f_k*(e_j) = conj(f_k(S(e_j)*))
        star = [dict() for _ in range(n)]
        for j in range(n):
            img = A.apply_star(hd.S[j])
            for k, c in img.items():
                star[k][j] = conj(c)
    B = PartialAlgebra(list(A.objects), [f"f.{x}" for x in A.basis], grade, fprod, A.conductor, star)
    counit = {k: c for k, c in A.unit.items()}
    # S_dual(f_k) = f_k o S^{-1}
    antipode = [{j: hd.Sinv[j][k] for j in range(n) if hd.Sinv[j].get(k)} for k in range(n)]
    fq = QuantumGroupoid(B, direct, name=f"dual of {qg.name}", counit=counit, antipode=antipode)
    return fq, res


def _functional_of(G_rows: list[Vec], i: int, side: str) -> Vec:
    """phi(- e_i) (side 'right') or phi(e_i -) (side 'left') in f-coordinates."""
    if side == "right":
        return {j: r[i] for j, r in enumerate(G_rows) if r.get(i)}
    return dict(G_rows[i])


def build_dual(qg: QuantumGroupoid, hd: HopfData, md: ModularData, prefix: str = PREFIX) -> DualQuantumGroupoid:
    A = qg.algebra
    n = A.dim
    fq, res = dual_on_functionals(qg, hd, md)
    G = gram(A, md.phi)
    cols = [_functional_of(G, i, "right") for i in range(n)]
    labels = [prefix + x for x in A.basis]
    dq = change_basis(fq, cols, labels, name=f"dual of {qg.name}")
    # invariant functionals: phi_dual(phi(- a)) = eps(a); psi_dual(psi(a -)) = eps(a)
    dq.phi = {i: c for i, c in hd.eps.items()}
    Gpsi = gram(A, md.psi)
    psi_cols = [_functional_of(Gpsi, i, "left") for i in range(n)]
    inv = la.inverse(cols, n)
    rows = [la.apply(inv, pc) for pc in psi_cols]  # w-coordinates of psi(e_i -)
    try:
        sol = la.solve_unique(rows, [hd.eps.get(i, 0) for i in range(n)], list(range(n)))
        dq.psi = sol[0]
    except (la.Inconsistent, la.Singular):
        raise DualInconsistent("psi(a -) does not span the dual") from None
    res.update(_cross_checks(qg, hd, md, fq, dq, cols))
    pairing = [dict(c) for c in cols]  # w_i(e_j) is the j-th f-coordinate of w_i
    return DualQuantumGroupoid(dq, pairing, cols, inv, res)


def _cross_checks(qg, hd, md, fq, dq, cols) -> dict:
    A = qg.algebra
    n = A.dim
    out = {}
    # left product by a coordinate functional: f_k . phi(e_i -) = phi(b -), b = (f_k o S (x) id) D(e_i)
    G = gram(A, md.phi)
    ok = True
    for k in range(n):
        for i in range(n):
            lhs = fq.algebra.multiply({k: 1}, dict(G[i]))
            b: Vec = {}
            for (p, q), c in qg.delta[i].items():
                w = hd.S[p].get(k)
                if w:
                    la.axpy(b, c * w, {q: 1})
            rhs = la.lincomb((c, dict(G[j])) for j, c in b.items())
            if lhs != rhs:
                ok = False
    out["left_product_formula"] = ok
    # D(w_a)(w_b (x) 1) = sum phi(- b2) (x) phi(- S^{-1}(b1) a)
    B = dq.algebra
    ok = True
    for a in range(n):
        for b in range(n):
            lhs: Tensor = {}
            for (p, q), c in dq.delta[a].items():
                for m, u in B.product(p, b).items():
                    la.axpy(lhs, c * u, {(m, q): 1})
            rhs: Tensor = {}
            for (p, q), c in qg.delta[b].items():
                x = A.multiply(hd.Sinv[p], {a: 1})
                for k, u in x.items():
                    la.axpy(rhs, c * u, {(q, k): 1})
            if lhs != rhs:
                ok = False
    out["canonical_map_formula"] = ok
    return out


# -- checks on the built dual -------------------------------------------------

def check_dual_structure(qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid) -> dict[str, bool]:
    A = qg.algebra
    B = d.qg.algebra
    n = A.dim
    out = {}
    out["grading_support_rule"] = all(
        not B.product(i, j) or all(B.grade[k] == _product_grade(B.grade[i], B.grade[j]) for k in B.product(i, j))
        for i in range(n) for j in range(n)
    )
    # local units: 1_s = eps(1_s -), 1^s = eps(- 1_s), as functionals on A
    ok = True
    for s in range(A.nobj):
        low = la.apply(d.to_functional, B.one_lower(s))
        up = la.apply(d.to_functional, B.one_upper(s))
        want_low = {j: la.dot(hd.eps, A.multiply(A.one_lower(s), {j: 1})) for j in range(n)}
        want_up = {j: la.dot(hd.eps, A.multiply({j: 1}, A.one_lower(s))) for j in range(n)}
        if low != la.clean(want_low) or up != la.clean(want_up):
            ok = False
    out["local_units"] = ok
    if A.star is not None and B.star is not None:
        out["positivity_transfer"] = all(
            la.dot(d.qg.phi, B.multiply(B.star[i], {j: 1})) == la.dot(md.phi, A.multiply(A.star[i], {j: 1}))
            for i in range(n) for j in range(n)
        )
    return out


def _product_grade(g, h):
    return compose_grades(g, h)


def check_dual_modular(qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid, dmd: ModularData) -> dict[str, bool]:
    A = qg.algebra
    n = A.dim
    out = {}
    # sigma of the dual sends w_a to the w-image of S^2(a) delta^{-1}
    out["sigma"] = all(dmd.sigma_phi[a] == A.multiply(md.S2[a], md.delta_inv) for a in range(n))
    # the dual modular element, read as a functional on A, is eps o sigma^phi
    as_fun = la.apply(d.to_functional, dmd.delta)
    out["delta"] = as_fun == la.clean({j: la.dot(hd.eps, md.sigma_phi[j]) for j in range(n)})
    out["nu"] = all(dmd.nu_fun[s] == div(1, md.nu_fun[s]) for s in range(A.nobj))
    return out


# -- biduality --------------------------------------------------------------------

def biduality_iso(qg: QuantumGroupoid, md: ModularData, d: DualQuantumGroupoid, dd: DualQuantumGroupoid) -> list[Vec]:
    """Columns of a -> phi_dual(- phi(- a)) in the bidual basis, with every law verified."""
    A = qg.algebra
    B = d.qg.algebra
    C = dd.qg.algebra
    n = A.dim
    phid = d.qg.phi
    cols = []
    for a in range(n):
        fun = la.clean({j: la.dot(phid, B.product(j, a)) for j in range(n)})
        cols.append(la.apply(dd.from_functional, fun))
    try:
        la.inverse(cols, n)
    except la.Singular:
        raise BidualityFailed("invertible") from None
    for a in range(n):
        if any(C.grade[k] != A.grade[a] for k in cols[a]):
            raise BidualityFailed("grading")
    for i in range(n):
        for j in range(n):
            if la.apply(cols, A.product(i, j)) != C.multiply(cols[i], cols[j]):
                raise BidualityFailed("multiplicative")
    for a in range(n):
        if tensor_map(cols, cols, qg.delta[a]) != dd.qg.comultiply(cols[a]):
            raise BidualityFailed("comultiplicative")
    if compose_functional(dd.qg.phi, cols) != la.clean(dict(md.phi)):
        raise BidualityFailed("left invariant functional")
    if compose_functional(dd.qg.psi, cols) != la.clean(dict(md.psi)):
        raise BidualityFailed("right invariant functional")
    return cols
