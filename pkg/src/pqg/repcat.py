"""Modules, comodules, corepresentations and Yetter-Drinfeld modules.

A representation space has a homogeneous basis with a vertical grading
``(r, t)`` per vector, meaning ``v`` lies in ``1(r,t) V``.  The associated
horizontal grading is ``(t, r)``: ``lambda(1_t) v = v = v rho(1_r)``.

Actions are stored as ``action[a][v] = e_a . e_v`` and coactions as
``coaction[v] = {(w, a): c}``, the sum of all components ``delta_{r,s}(v)``.
The component ``delta_{r,s}`` is recovered from the grade of the algebra leg.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import linalg as la
from .algebra import PartialAlgebra, Tensor, Vec, tensor
from .double import DoubleQuantumGroupoid
from .dual import DualQuantumGroupoid
from .hopf import HopfData, QuantumGroupoid
from .scalars import conj, inv
from .star import rational_eigen_guesses, dense_matrix, split_eigenspaces


class ConversionFailed(ValueError):
    def __init__(self, violated: list[str]):
        super().__init__("violated: " + ", ".join(violated))
        self.violated = violated


@dataclass
class RepObject:
    grade: list[tuple[int, int]]
    action: list[list[Vec]] | None = None
    coaction: list[Tensor] | None = None
    inner: list[Vec] | None = None  # inner[v][w] = <e_v, e_w>, antilinear in v
    labels: list[str] | None = None

    @property
    def dim(self) -> int:
        return len(self.grade)

    def horizontal(self, v: int) -> tuple[int, int]:
        r, t = self.grade[v]
        return (t, r)


# -- small helpers -------------------------------------------------------------------

def act(V: RepObject, x: Vec, v: Vec) -> Vec:
    out: Vec = {}
    for a, c in x.items():
        for w, d in v.items():
            la.axpy(out, c * d, V.action[a][w])
    return out


def coact(V: RepObject, v: Vec) -> Tensor:
    out: Tensor = {}
    for w, c in v.items():
        la.axpy(out, c, V.coaction[w])
    return out


def inner(V: RepObject, x: Vec, y: Vec):
    s = 0
    for i, a in x.items():
        row = V.inner[i]
        for j, b in y.items():
            g = row.get(j)
            if g:
                s += conj(a) * b * g
    return s


def _slice(pairing_row: Vec, x: Tensor) -> Vec:
    """(id (x) omega) x for a functional given by its values on the basis."""
    out: Vec = {}
    for (w, a), c in x.items():
        p = pairing_row.get(a)
        if p:
            la.axpy(out, c * p, {w: 1})
    return out


def regular_module(A: PartialAlgebra) -> RepObject:
    action = [[A.product(a, v) for v in range(A.dim)] for a in range(A.dim)]
    return RepObject([(g[0], g[2]) for g in A.grade], action=action, labels=list(A.basis))


def regular_comodule(qg: QuantumGroupoid) -> RepObject:
    A = qg.algebra
    return RepObject([(g[3], g[2]) for g in A.grade], coaction=[dict(t) for t in qg.delta], labels=list(A.basis))


def trivial_comodule(qg: QuantumGroupoid) -> RepObject:
    """V = Fun(I) with delta(v_k) = sum_r v_r (x) 1(r,k)."""
    A = qg.algebra
    n = A.nobj
    co = []
    for k in range(n):
        t: Tensor = {}
        for r in range(n):
            for a, c in A.base_unit(r, k).items():
                t[(r, a)] = c
        co.append(t)
    return RepObject([(r, r) for r in range(n)], coaction=co, labels=list(A.objects))


def counit_module(qg: QuantumGroupoid, eps: Vec) -> RepObject:
    """V = Fun(I) with e_a . v_q = eps(e_a) v_p for e_a of grade (p, q, p, q)."""
    A = qg.algebra
    n = A.nobj
    action = []
    for a, (p, q, t, u) in enumerate(A.grade):
        row = [dict() for _ in range(n)]
        c = eps.get(a, 0)
        if c and p == t and q == u:
            row[q] = {p: c}
        action.append(row)
    return RepObject([(r, r) for r in range(n)], action=action, labels=list(A.objects))


def scalar_module(A: PartialAlgebra, chi: Vec, grade: tuple[int, int] = (0, 0)) -> RepObject:
    """A one-dimensional space on which e_a acts by chi(e_a)."""
    action = [[{0: chi[a]} if chi.get(a) else {}] for a in range(A.dim)]
    return RepObject([grade], action=action)


def standard_inner(n: int) -> list[Vec]:
    return [{i: 1} for i in range(n)]


def form_inner(A: PartialAlgebra, omega: Vec) -> list[Vec]:
    """<a, b> = omega(a* b)."""
    rows = []
    for i in range(A.dim):
        si = A.star[i]
        row = {}
        for j in range(A.dim):
            x = A.multiply(si, {j: 1})
            val = sum((c * omega.get(k, 0) for k, c in x.items()), 0)
            if val:
                row[j] = val
        rows.append(row)
    return rows


# -- modules -------------------------------------------------------------------------

def _inner_checks(V: RepObject) -> dict[str, bool]:
    n = V.dim
    herm = all(V.inner[i].get(j, 0) == conj(V.inner[j].get(i, 0)) for i in range(n) for j in range(n))
    orth = all(V.grade[i] == V.grade[j] for i in range(n) for j in V.inner[i])
    return {"inner_hermitian": herm, "components_orthogonal": orth}


def module_checks(A: PartialAlgebra, V: RepObject) -> dict[str, bool]:
    n = V.dim
    out: dict[str, bool] = {}
    if V.action is None or len(V.action) != A.dim:
        return {"action_present": False}
    images = [V.action[a][v] for a in range(A.dim) for v in range(n)]
    out["unital"] = la.rank(images) == n
    assoc = True
    for a in range(A.dim):
        for b in range(A.dim):
            ab = A.product(a, b)
            for v in range(n):
                if act(V, {a: 1}, V.action[b][v]) != act(V, ab, {v: 1}):
                    assoc = False
                    break
            if not assoc:
                break
        if not assoc:
            break
    out["associative"] = assoc
    grading = True
    for a, (r, s, t, u) in enumerate(A.grade):
        for v in range(n):
            img = V.action[a][v]
            if not img:
                continue
            if V.grade[v] != (s, u) or any(V.grade[w] != (r, t) for w in img):
                grading = False
    for r in range(A.nobj):
        for t in range(A.nobj):
            unit = A.base_unit(r, t)
            for v in range(n):
                want = {v: 1} if V.grade[v] == (r, t) else {}
                if act(V, unit, {v: 1}) != want:
                    grading = False
    out["grading_compatible"] = grading
    if V.inner is not None:
        out.update(_inner_checks(V))
        out["unitary"] = A.star is not None and all(
            inner(V, {v: 1}, V.action[a][w]) == inner(V, act(V, A.star[a], {v: 1}), {w: 1})
            for a in range(A.dim) for v in range(n) for w in range(n)
        )
    return out


def check_module(qg: QuantumGroupoid | PartialAlgebra, V: RepObject) -> bool:
    A = qg.algebra if isinstance(qg, QuantumGroupoid) else qg
    return all(module_checks(A, V).values())


# -- comodules -----------------------------------------------------------------------

def comodule_checks(qg: QuantumGroupoid, eps: Vec, V: RepObject) -> dict[str, bool]:
    A = qg.algebra
    n = V.dim
    if V.coaction is None or len(V.coaction) != n:
        return {"coaction_present": False}
    rng = True
    for v in range(n):
        kl = V.horizontal(v)
        for (w, a) in V.coaction[v]:
            g = A.grade[a]
            if V.horizontal(w) != (g[0], g[1]) or (g[2], g[3]) != kl:
                rng = False
    coassoc = True
    counit = True
    for v in range(n):
        # (id (x) Delta_{kl}) delta_{rs}, split by (r, s, k, l) of the first algebra leg
        lhs: dict = {}
        for (w, a), c in V.coaction[v].items():
            for (p, q), d in qg.delta[a].items():
                gp, gq = A.grade[p], A.grade[q]
                if (gp[2], gp[3]) != (gq[0], gq[1]):
                    continue
                key = (gp[0], gp[1], gp[2], gp[3])
                la.axpy(lhs.setdefault(key, {}), c * d, {(w, p, q): 1})
        rhs: dict = {}
        for (x, b), c in V.coaction[v].items():
            kl = (A.grade[b][0], A.grade[b][1])
            for (w, a), d in V.coaction[x].items():
                key = (A.grade[a][0], A.grade[a][1]) + kl
                la.axpy(rhs.setdefault(key, {}), c * d, {(w, a, b): 1})
        lhs = {k: t for k, t in lhs.items() if t}
        rhs = {k: t for k, t in rhs.items() if t}
        if lhs != rhs:
            coassoc = False
        # (id (x) eps) delta_{rs} = lambda(1_r) rho(1_s)
        parts: dict = {}
        for (w, a), c in V.coaction[v].items():
            e = eps.get(a, 0)
            if e:
                la.axpy(parts.setdefault((A.grade[a][0], A.grade[a][1]), {}), c * e, {w: 1})
        parts = {k: t for k, t in parts.items() if t}
        if parts != {V.horizontal(v): {v: 1}}:
            counit = False
    out = {"range_condition": rng, "coassociative": coassoc, "counit": counit}
    if V.inner is not None:
        out.update(_inner_checks(V))
    return out


def check_comodule(qg: QuantumGroupoid, eps: Vec, V: RepObject) -> bool:
    return all(comodule_checks(qg, eps, V).values())


# -- corepresentations ---------------------------------------------------------------

@dataclass
class Corepresentation:
    X: dict  # (v, a) -> Tensor
    Xm: dict
    checks: dict = field(default_factory=dict)

    @property
    def unitary(self) -> bool:
        return self.checks.get("adjoint", False) and self.checks.get("isometric", False)


def _lin(maps: dict, x: Tensor) -> Tensor:
    out: Tensor = {}
    for k, c in x.items():
        la.axpy(out, c, maps[k])
    return out


def _a_inner(A: PartialAlgebra, V: RepObject, x: Tensor, y: Tensor) -> Vec:
    """<x, y>_A with <w (x) b, v (x) a>_A = <w, v> b* a."""
    out: Vec = {}
    for (w, b), c in x.items():
        bs = A.star[b]
        row = V.inner[w]
        for (v, a), d in y.items():
            g = row.get(v)
            if g:
                la.axpy(out, conj(c) * d * g, A.multiply(bs, {a: 1}))
    return out


def corepresentation_maps(qg: QuantumGroupoid, hd: HopfData, V: RepObject) -> Corepresentation:
    A = qg.algebra
    n = V.dim
    X: dict = {}
    Xm: dict = {}
    for v in range(n):
        for a in range(A.dim):
            x: Tensor = {}
            y: Tensor = {}
            for (w, b), c in V.coaction[v].items():
                for k, d in A.product(b, a).items():
                    la.axpy(x, c * d, {(w, k): 1})
                for k, d in A.multiply(hd.S[b], {a: 1}).items():
                    la.axpy(y, c * d, {(w, k): 1})
            X[(v, a)] = x
            Xm[(v, a)] = y
    left = True
    right = True
    for (v, a) in X:
        g = A.grade[a]
        want_l = {(v, a): 1} if V.horizontal(v)[1] == g[2] else {}
        want_r = {(v, a): 1} if V.horizontal(v)[0] == g[0] else {}
        if _lin(Xm, X[(v, a)]) != want_l:
            left = False
        if _lin(X, Xm[(v, a)]) != want_r:
            right = False
    checks = {"pseudo_inverse_left": left, "pseudo_inverse_right": right}
    if V.inner is not None and A.star is not None:
        keys = list(X)
        checks["adjoint"] = all(
            _a_inner(A, V, {p: 1}, X[q]) == _a_inner(A, V, Xm[p], {q: 1}) for p in keys for q in keys
        )
        iso = True
        for v in range(n):
            for w in range(n):
                lhs: Vec = {}
                dv, dw = V.coaction[v], V.coaction[w]
                for s in range(A.nobj):
                    pv = {k: c for k, c in dv.items() if A.grade[k[1]][1] == s}
                    pw = {k: c for k, c in dw.items() if A.grade[k[1]][1] == s}
                    la.axpy(lhs, 1, _a_inner(A, V, pv, pw))
                rhs: Vec = {}
                for t in range(A.nobj):
                    vt = {v: 1} if V.horizontal(v)[1] == t else {}
                    wt = {w: 1} if V.horizontal(w)[1] == t else {}
                    g = inner(V, vt, wt)
                    if g:
                        la.axpy(rhs, g, A.one_lower(t))
                if la.clean(lhs) != la.clean(rhs):
                    iso = False
        checks["isometric"] = iso
    return Corepresentation(X, Xm, checks)


# -- module <-> comodule -------------------------------------------------------------

def comodule_to_module(d: DualQuantumGroupoid, V: RepObject) -> RepObject:
    """omega . v = (id (x) omega) delta(v)."""
    action = [[_slice(row, V.coaction[v]) for v in range(V.dim)] for row in d.pairing]
    return RepObject(list(V.grade), action=action, inner=V.inner, labels=V.labels)


def module_to_comodule(qg: QuantumGroupoid, d: DualQuantumGroupoid, V: RepObject) -> RepObject:
    """delta(v) = X(v (x) 1_t) with X = (id (x) F^-1) Xs (id (x) F), Xs(v (x) w) = w1 v (x) w2.

    The dual basis vector with index i is phi(- e_i) = F(e_i), so F is the
    identity in coordinates.
    """
    A = qg.algebra
    dco = d.qg.delta

    def X(v: int, a: int) -> Tensor:
        out: Tensor = {}
        for (p, q), c in dco[a].items():
            for w, e in V.action[p][v].items():
                la.axpy(out, c * e, {(w, q): 1})
        return out

    co = []
    for v in range(V.dim):
        t: Tensor = {}
        for a, c in A.one_lower(V.horizontal(v)[1]).items():
            la.axpy(t, c, X(v, a))
        co.append(t)
    return RepObject(list(V.grade), coaction=co, inner=V.inner, labels=V.labels)


@dataclass
class Conversion:
    result: RepObject
    checks: dict


def _unitary_flag(checks: dict) -> bool | None:
    if "unitary" in checks:
        return checks["unitary"]
    if "adjoint" in checks:
        return checks["adjoint"] and checks["isometric"]
    return None


def module_comodule_correspondence(qg: QuantumGroupoid, hd: HopfData, d: DualQuantumGroupoid,
                                   V: RepObject) -> Conversion:
    """Convert a dual-module into an A-comodule or back, whichever V carries."""
    if (V.action is None) == (V.coaction is None):
        raise ConversionFailed(["exactly one of action, coaction"])
    B = d.qg.algebra
    if V.coaction is not None:
        src = comodule_checks(qg, hd.eps, V)
        if not all(src.values()):
            raise ConversionFailed([k for k, v in src.items() if not v])
        src.update(corepresentation_maps(qg, hd, V).checks)
        W = comodule_to_module(d, V)
        tgt = module_checks(B, W)
        back = module_to_comodule(qg, d, W)
        round_trip = back.coaction == V.coaction
    else:
        src = module_checks(B, V)
        if not all(src.values()):
            raise ConversionFailed([k for k, v in src.items() if not v])
        W = module_to_comodule(qg, d, V)
        tgt = comodule_checks(qg, hd.eps, W)
        tgt.update(corepresentation_maps(qg, hd, W).checks)
        back = comodule_to_module(d, W)
        round_trip = back.action == V.action
    if not all(tgt.values()):
        raise ConversionFailed([k for k, v in tgt.items() if not v])
    checks = {"source_valid": True, "target_valid": True, "round_trip": round_trip}
    us, ut = _unitary_flag(src), _unitary_flag(tgt)
    if us is not None:
        checks["unitarity_preserved"] = us == ut
    return Conversion(W, checks)


# -- Yetter-Drinfeld -----------------------------------------------------------------

def check_yetter_drinfeld(qg: QuantumGroupoid, hd: HopfData, V: RepObject) -> bool:
    A = qg.algebra
    for a in range(A.dim):
        d2 = qg.delta2[a]
        for v in range(V.dim):
            lhs = coact(V, V.action[a][v])
            rhs: Tensor = {}
            for (p, q, r), c in d2.items():
                for (w, b), e in V.coaction[v].items():
                    left = V.action[q][w]
                    if not left:
                        continue
                    right = A.multiply(A.product(r, b), hd.Sinv[p])
                    la.axpy(rhs, c * e, tensor(left, right))
            rhs = {(x, y): c for (x, y), c in rhs.items() if V.horizontal(x) == A.grade[y][:2]}
            if lhs != rhs:
                return False
    return True


def yd_checks(qg: QuantumGroupoid, hd: HopfData, V: RepObject) -> dict[str, bool]:
    out = {f"module.{k}": v for k, v in module_checks(qg.algebra, V).items()}
    out.update({f"comodule.{k}": v for k, v in comodule_checks(qg, hd.eps, V).items()})
    out["yetter_drinfeld"] = all(out.values()) and check_yetter_drinfeld(qg, hd, V)
    return out


def yd_to_double(d: DualQuantumGroupoid, D: DoubleQuantumGroupoid, V: RepObject) -> RepObject:
    """(a w) v = a . (id (x) w) delta(v)."""
    action = []
    for i, j in D.basis.pairs:
        row = d.pairing[j]
        action.append([act(V, {i: 1}, _slice(row, V.coaction[v])) for v in range(V.dim)])
    return RepObject(list(V.grade), action=action, inner=V.inner, labels=V.labels)


def double_to_yd(qg: QuantumGroupoid, d: DualQuantumGroupoid, D: DoubleQuantumGroupoid, V: RepObject) -> RepObject:
    a_part = [[act(V, D.embed_A[i], {v: 1}) for v in range(V.dim)] for i in range(qg.dim)]
    w_part = [[act(V, D.embed_dual[j], {v: 1}) for v in range(V.dim)] for j in range(d.qg.dim)]
    co = module_to_comodule(qg, d, replace(V, action=w_part)).coaction
    return RepObject(list(V.grade), action=a_part, coaction=co, inner=V.inner, labels=V.labels)


def yd_double_correspondence(qg: QuantumGroupoid, hd: HopfData, d: DualQuantumGroupoid,
                             D: DoubleQuantumGroupoid, V: RepObject) -> Conversion:
    """Convert a YD structure into a double-module or back, whichever V carries."""
    DA = D.qg.algebra
    is_yd = V.coaction is not None
    if is_yd:
        src = yd_checks(qg, hd, V)
        if not all(src.values()):
            raise ConversionFailed([k for k, v in src.items() if not v])
        W = yd_to_double(d, D, V)
        tgt = module_checks(DA, W)
        back = double_to_yd(qg, d, D, W)
        round_trip = back.action == V.action and back.coaction == V.coaction
    else:
        if V.action is None or len(V.action) != DA.dim:
            raise ConversionFailed(["double action present"])
        src = module_checks(DA, V)
        if not all(src.values()):
            raise ConversionFailed([k for k, v in src.items() if not v])
        W = double_to_yd(qg, d, D, V)
        tgt = yd_checks(qg, hd, W)
        back = yd_to_double(d, D, W)
        round_trip = back.action == V.action
    if not all(tgt.values()):
        raise ConversionFailed([k for k, v in tgt.items() if not v])
    checks = {"source_valid": True, "target_valid": True, "round_trip": round_trip}
    us, ut = src.get("module.unitary", src.get("unitary")), tgt.get("module.unitary", tgt.get("unitary"))
    if us is not None and ut is not None:
        checks["unitarity_preserved"] = us == ut
    return Conversion(W, checks)


# -- one-dimensional modules -----------------------------------------------------------

def characters(A: PartialAlgebra) -> list[Vec]:
    """All algebra maps A -> C, found as joint eigenvectors of the transposed left multiplications.

    chi satisfies chi(x y) = chi(x) chi(y), i.e. chi o L_x = chi(x) chi.  Only
    rational eigenvalues are searched for.
    """
    n = A.dim
    ops = [la.transpose(A.left_mult_matrix({k: 1}), n) for k in range(n)]
    spaces = [la.identity(n)]
    for T in ops:
        guesses = rational_eigen_guesses(dense_matrix(T, n))
        nxt = []
        for W in spaces:
            parts = split_eigenspaces(T, W, guesses) or []
            nxt.extend(vecs for _, vecs in parts)
        spaces = nxt
    out = []
    for W in spaces:
        if len(W) != 1:
            continue
        chi = W[0]
        val = _ev(chi, A.unit)
        if not val:
            continue
        chi = la.scale(inv(val), chi)
        if all(_ev(chi, A.product(i, j)) == chi.get(i, 0) * chi.get(j, 0) for i in range(n) for j in range(n)):
            out.append(chi)
    return out


def _ev(chi: Vec, x: Vec):
    return sum((c * chi.get(k, 0) for k, c in x.items()), 0)


def character_grade(A: PartialAlgebra, chi: Vec) -> tuple[int, int] | None:
    hits = [(r, t) for r in range(A.nobj) for t in range(A.nobj) if _ev(chi, A.base_unit(r, t))]
    return hits[0] if len(hits) == 1 else None


def one_dim_modules(A: PartialAlgebra) -> list[RepObject]:
    out = []
    for chi in characters(A):
        g = character_grade(A, chi)
        if g is not None:
            out.append(scalar_module(A, chi, g))
    return out
