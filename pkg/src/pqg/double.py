"""The Drinfeld double of a finite quantum groupoid of compact type.

Elements are written in the normal order a w with a in A and w in the dual,
on the basis of pairs (i, j) where the right grade pair of e_i equals the left
grade pair of w_j.  Moving w past g uses

    w g = sum g2 . w(g3 - S^{-1}(g1)),

where w(x - y) is the functional c -> w(x c y).  The reverse ordering
g w = sum w(S^{-1}(g3) - g1) . g2 is implemented separately and used as a
consistency check.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .algebra import PartialAlgebra, Tensor, Vec
from .dual import DualQuantumGroupoid
from .hopf import HopfData, QuantumGroupoid
from .integrals import ModularData, fun_to_element

Pair = tuple[int, int]


class InterchangeInconsistent(ValueError):
    pass


class NotCompactType(ValueError):
    pass


def _rpair(q):
    return (q[1], q[3])


def _lpair(q):
    return (q[0], q[2])


@dataclass
class DoubleBasis:
    pairs: list[Pair]  # (A index, dual index), a before w
    index: dict
    rev_pairs: list[Pair]  # (dual index, A index), w before a
    grade: list[tuple]


def double_basis(A: PartialAlgebra, B: PartialAlgebra) -> DoubleBasis:
    pairs = [(i, j) for i in range(A.dim) for j in range(B.dim) if _rpair(A.grade[i]) == _lpair(B.grade[j])]
    rev = [(j, i) for j in range(B.dim) for i in range(A.dim) if _rpair(B.grade[j]) == _lpair(A.grade[i])]
    grade = [(A.grade[i][0], B.grade[j][1], A.grade[i][2], B.grade[j][3]) for i, j in pairs]
    return DoubleBasis(pairs, {p: k for k, p in enumerate(pairs)}, rev, grade)


@dataclass
class DoubleQuantumGroupoid:
    qg: QuantumGroupoid
    basis: DoubleBasis
    embed_A: list[Vec]
    embed_dual: list[Vec]
    checks: dict = field(default_factory=dict)


class _Builder:
    def __init__(self, qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid, dhd: HopfData):
        self.qg, self.hd, self.md, self.d, self.dhd = qg, hd, md, d, dhd
        self.A = qg.algebra
        self.B = d.qg.algebra
        self.basis = double_basis(self.A, self.B)
        self._twist: dict = {}
        self._inter: dict = {}

    # functional c -> w_j(e_x c S^{-1}(e_p)) in dual coordinates
    def twisted(self, j: int, x: int, p: int, inverse: bool = True) -> Vec:
        key = (j, x, p, inverse)
        got = self._twist.get(key)
        if got is not None:
            return got
        A = self.A
        Sx = self.hd.Sinv if inverse else self.hd.S
        right = Sx[p]
        P = self.d.pairing[j]
        fun: Vec = {}
        for c in range(A.dim):
            v = A.multiply(A.multiply({x: 1}, {c: 1}), right)
            val = la.dot(P, v)
            if val:
                fun[c] = val
        out = la.apply(self.d.from_functional, fun)
        self._twist[key] = out
        return out

    def interchange(self, j: int, k: int) -> dict:
        """w_j e_k as {(A index, dual index): coefficient}, not yet projected."""
        got = self._inter.get((j, k))
        if got is not None:
            return got
        out: dict = {}
        for (p, q, r), c in self.qg.delta2[k].items():
            w = self.twisted(j, r, p)
            for n, u in w.items():
                la.axpy(out, c * u, {(q, n): 1})
        self._inter[(j, k)] = out
        return out

    def reverse_interchange(self, k: int, j: int) -> dict:
        """e_k w_j as {(dual index, A index): coefficient}, via the reverse ordering."""
        out: dict = {}
        for (p, q, r), c in self.qg.delta2[k].items():
            # w(S^{-1}(g3) - g1): c' -> w(S^{-1}(e_r) c' e_p)
            w = self._left_twisted(j, r, p)
            for n, u in w.items():
                la.axpy(out, c * u, {(n, q): 1})
        return out

    def _left_twisted(self, j: int, r: int, p: int) -> Vec:
        key = ("L", j, r, p)
        got = self._twist.get(key)
        if got is not None:
            return got
        A = self.A
        P = self.d.pairing[j]
        fun: Vec = {}
        for c in range(A.dim):
            v = A.multiply(A.multiply(self.hd.Sinv[r], {c: 1}), {p: 1})
            val = la.dot(P, v)
            if val:
                fun[c] = val
        out = la.apply(self.d.from_functional, fun)
        self._twist[key] = out
        return out

    def project(self, raw: dict) -> Vec:
        idx = self.basis.index
        out: Vec = {}
        for pr, c in raw.items():
            k = idx.get(pr)
            if k is not None and c:
                la.axpy(out, c, {k: 1})
        return out

    def normal(self, a: Vec, w: Vec) -> Vec:
        """The double element a w for a in A, w in the dual."""
        idx = self.basis.index
        out: Vec = {}
        for i, c in a.items():
            for j, u in w.items():
                k = idx.get((i, j))
                if k is not None:
                    la.axpy(out, c * u, {k: 1})
        return out

    def product_basis(self, s: int, t: int) -> Vec:
        i, j = self.basis.pairs[s]
        k, l = self.basis.pairs[t]
        A, B = self.A, self.B
        out: Vec = {}
        for (q, n), c in self.interchange(j, k).items():
            a = A.product(i, q)
            if not a:
                continue
            w = B.product(n, l)
            if not w:
                continue
            la.axpy(out, c, self.normal(a, w))
        return out

    def embed_a(self, x: Vec) -> Vec:
        out: Vec = {}
        for i, c in x.items():
            la.axpy(out, c, self.normal({i: 1}, self.B.base_unit(*_rpair(self.A.grade[i]))))
        return out

    def embed_w(self, x: Vec) -> Vec:
        out: Vec = {}
        for j, c in x.items():
            la.axpy(out, c, self.normal(self.A.base_unit(*_lpair(self.B.grade[j])), {j: 1}))
        return out


def _mult_table(b: _Builder) -> dict:
    n = len(b.basis.pairs)
    mult = {}
    for s in range(n):
        for t in range(n):
            v = b.product_basis(s, t)
            if v:
                mult[(s, t)] = v
    return mult


def _multiply(mult: dict, x: Vec, y: Vec) -> Vec:
    out: Vec = {}
    for i, a in x.items():
        for j, c in y.items():
            v = mult.get((i, j))
            if v:
                la.axpy(out, a * c, v)
    return out


def _tensor_mult(mult: dict, x: Tensor, y: Tensor) -> Tensor:
    out: Tensor = {}
    for (i, j), a in x.items():
        for (k, l), c in y.items():
            p = mult.get((i, k))
            if not p:
                continue
            q = mult.get((j, l))
            if not q:
                continue
            for m, u in p.items():
                for r, v in q.items():
                    la.axpy(out, a * c * u * v, {(m, r): 1})
    return out


def _embed_tensor(emb_a, emb_b, x: Tensor) -> Tensor:
    out: Tensor = {}
    for (i, j), c in x.items():
        for m, u in emb_a[i].items():
            for r, v in emb_b[j].items():
                la.axpy(out, c * u * v, {(m, r): 1})
    return out


def check_interchange(b: _Builder) -> bool:
    """Forward then reverse ordering must return w_j (x) e_k on the matched w-first pairs."""
    A, B = b.A, b.B
    rev_index = set(b.basis.rev_pairs)
    for j in range(B.dim):
        for k in range(A.dim):
            fwd = b.interchange(j, k)
            back: dict = {}
            for (q, n), c in fwd.items():
                for pr, u in b.reverse_interchange(q, n).items():
                    la.axpy(back, c * u, {pr: 1})
            back = {pr: c for pr, c in back.items() if pr in rev_index}
            want = {(j, k): 1} if (j, k) in rev_index else {}
            if back != want:
                return False
    return True


def build_double(qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid, dhd: HopfData, dmd: ModularData) -> DoubleQuantumGroupoid:
    A = qg.algebra
    if not A.has_unit():
        raise NotCompactType("the double is built only when every 1(r,s) lies in the algebra")
    b = _Builder(qg, hd, md, d, dhd)
    if not check_interchange(b):
        raise InterchangeInconsistent("forward and reverse interchange relations disagree")
    B = b.B
    basis = b.basis
    n = len(basis.pairs)
    mult = _mult_table(b)
    emb_a = [b.embed_a({i: 1}) for i in range(A.dim)]
    emb_w = [b.embed_w({j: 1}) for j in range(B.dim)]
    # coproduct: Delta(a) Delta_dual(w)
    delta = []
    for s, (i, j) in enumerate(basis.pairs):
        da = _embed_tensor(emb_a, emb_a, qg.delta[i])
        dw = _embed_tensor(emb_w, emb_w, d.qg.delta[j])
        delta.append(_tensor_mult(mult, da, dw))
    # antipode: S_D(a w) = S_dual(w) S(a)
    antipode = [
        _multiply(mult, la.apply(emb_w, dhd.S[j]), la.apply(emb_a, hd.S[i])) for i, j in basis.pairs
    ]
    counit = {s: hd.eps.get(i, 0) * dhd.eps.get(j, 0) for s, (i, j) in enumerate(basis.pairs)}
    phi = {s: md.phi.get(i, 0) * d.qg.phi.get(j, 0) for s, (i, j) in enumerate(basis.pairs)}
    psi = {s: md.psi.get(i, 0) * d.qg.psi.get(j, 0) for s, (i, j) in enumerate(basis.pairs)}
    star = None
    if A.star is not None and B.star is not None:
        star = [_multiply(mult, la.apply(emb_w, B.star[j]), la.apply(emb_a, A.star[i])) for i, j in basis.pairs]
    labels = [f"{A.basis[i]}|{B.basis[j]}" for i, j in basis.pairs]
    DA = PartialAlgebra(list(A.objects), labels, list(basis.grade), mult, A.conductor, star)
    dq = QuantumGroupoid(
        DA, delta, name=f"double of {qg.name}", counit=la.clean(counit), antipode=antipode,
        phi=la.clean(phi), psi=la.clean(psi),
    )
    out = DoubleQuantumGroupoid(dq, basis, emb_a, emb_w)
    out.checks = double_structure_checks(b, out)
    return out


def double_structure_checks(b: _Builder, D: DoubleQuantumGroupoid) -> dict[str, bool]:
    A, B = b.A, b.B
    DA = D.qg.algebra
    out = {"interchange_consistent": True}
    # the w-first multiplication map is a bijection onto the double
    images = []
    for j, k in D.basis.rev_pairs:
        images.append(b.project(b.interchange(j, k)))
    out["normal_order_bijective"] = len(images) == DA.dim and la.rank(images) == DA.dim
    out["units_coincide"] = all(
        la.apply(D.embed_A, A.base_unit(r, s)) == la.apply(D.embed_dual, B.base_unit(r, s))
        for r in range(A.nobj) for s in range(A.nobj)
    )
    out["embeddings_multiplicative"] = all(
        la.apply(D.embed_A, A.product(i, j)) == DA.multiply(D.embed_A[i], D.embed_A[j])
        for i in range(A.dim) for j in range(A.dim)
    ) and all(
        la.apply(D.embed_dual, B.product(i, j)) == DA.multiply(D.embed_dual[i], D.embed_dual[j])
        for i in range(B.dim) for j in range(B.dim)
    )
    out["faithful_action"] = faithfulness_witness(b, D)
    return out


def faithfulness_witness(b: _Builder, D: DoubleQuantumGroupoid) -> bool:
    """pi(a) and pi(w) on the matched pairs: the operators pi(e_i) pi(w_j) are independent."""
    A, B = b.A, b.B
    pairs = D.basis.pairs
    n = len(pairs)

    def pi_a(i: int) -> list[Vec]:
        cols = []
        for bi, chi in pairs:
            cols.append(b.normal(A.product(i, bi), {chi: 1}))
        return cols

    def pi_w(j: int) -> list[Vec]:
        cols = []
        for bi, chi in pairs:
            # pi(w)(b (x) chi) = b2 (x) w(b3 - S^{-1}(b1)) chi
            out: Vec = {}
            for (q, m), c in b.interchange(j, bi).items():
                w = B.product(m, chi)
                if w:
                    la.axpy(out, c, b.normal({q: 1}, w))
            cols.append(out)
        return cols

    ops = []
    cache_w = {}
    for i, j in pairs:
        if j not in cache_w:
            cache_w[j] = pi_w(j)
        M = la.compose(pi_a(i), cache_w[j])
        ops.append({(r, c): v for c, col in enumerate(M) for r, v in col.items()})
    return la.rank(ops) == n


# -- modular data and star -----------------------------------------------------------

def check_double_modular(qg: QuantumGroupoid, md: ModularData, d: DualQuantumGroupoid, dhd: HopfData, dmd: ModularData,
                         D: DoubleQuantumGroupoid, Dmd: ModularData) -> dict[str, bool]:
    A, B = qg.algebra, d.qg.algebra
    DA = D.qg.algebra
    out = {}
    out["sigma_on_A_is_S2"] = all(
        la.apply(Dmd.sigma_phi, D.embed_A[i]) == la.apply(D.embed_A, md.S2[i]) for i in range(A.dim)
    )
    out["sigma_on_dual_is_dual_S2"] = all(
        la.apply(Dmd.sigma_phi, D.embed_dual[j]) == la.apply(D.embed_dual, dmd.S2[j]) for j in range(B.dim)
    )
    nu = la.apply(D.embed_A, fun_to_element(A, md.nu_fun, "lower"))
    nu_dual = la.apply(D.embed_dual, fun_to_element(B, dmd.nu_fun, "lower"))
    base = DA.multiply(la.apply(D.embed_dual, dmd.delta), la.apply(D.embed_A, md.delta))
    # phi_D(w a) carries the dual scaling element, so delta_D picks up nu and its dual counterpart
    out["delta_factorizes"] = Dmd.delta == DA.multiply(DA.multiply(base, nu), nu_dual)
    out["nu_trivial"] = all(c == 1 for c in Dmd.nu_fun.values())
    return out


def delta_without_dual_scaling(qg: QuantumGroupoid, md: ModularData, dmd: ModularData, D: DoubleQuantumGroupoid, Dmd: ModularData) -> bool:
    """Whether delta_D equals dual delta times delta times nu, with no dual scaling factor."""
    DA = D.qg.algebra
    nu = la.apply(D.embed_A, fun_to_element(qg.algebra, md.nu_fun, "lower"))
    base = DA.multiply(la.apply(D.embed_dual, dmd.delta), la.apply(D.embed_A, md.delta))
    return Dmd.delta == DA.multiply(base, nu)


def double_star_form(qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid,
                     D: DoubleQuantumGroupoid) -> list[list]:
    """phi_D((w a)* (x b)) through the factorized form, on the w-first basis."""
    A, B = qg.algebra, d.qg.algebra
    S2inv = md.S2inv
    pairs = D.basis.rev_pairs
    H = []
    for w, a in pairs:
        row = []
        for x, bb in pairs:
            left = la.dot(d.qg.phi, B.multiply(B.star[w], {x: 1}))
            right = la.dot(md.phi, A.multiply(S2inv[bb], A.star[a])) if left else 0
            row.append(left * right)
        H.append(row)
    return H


def double_star_direct(D: DoubleQuantumGroupoid, b_rev: list[Vec]) -> list[list]:
    """phi_D(y* z) computed inside the double for the given elements."""
    DA = D.qg.algebra
    phi = D.qg.phi
    return [[la.dot(phi, DA.multiply(DA.apply_star(y), z)) for z in b_rev] for y in b_rev]


def rev_basis_elements(D: DoubleQuantumGroupoid) -> list[Vec]:
    DA = D.qg.algebra
    return [DA.multiply(D.embed_dual[w], D.embed_A[a]) for w, a in D.basis.rev_pairs]


def double_star(qg: QuantumGroupoid, hd: HopfData, md: ModularData, d: DualQuantumGroupoid,
                D: DoubleQuantumGroupoid, Dhd: HopfData, Dmd: ModularData) -> tuple[dict, dict]:
    """Star laws on the double and positivity of phi_D through the factorized form."""
    from .star import is_hermitian, is_psd, star_laws

    if D.qg.algebra.star is None:
        return {}, {}
    laws = star_laws(D.qg, Dhd.S, Dmd.phi, Dmd.delta)
    H_fact = double_star_form(qg, hd, md, d, D)
    H = double_star_direct(D, rev_basis_elements(D))
    herm = is_hermitian(H)
    psd, lo = is_psd(H) if herm else (False, float("nan"))
    checks = {
        "star_laws": all(laws.values()),
        "factorized_form": H_fact == H,
        "hermitian": herm,
        "positive": psd,
    }
    return checks, {"min_eigenvalue": lo, "failing_laws": [k for k, v in laws.items() if not v]}
