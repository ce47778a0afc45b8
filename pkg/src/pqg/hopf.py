"""Comultiplication, counit, canonical maps, antipode and hyperobjects."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import linalg as la
from .algebra import NoUnit, PartialAlgebra, Tensor, TensorSquare, Vec, check_morphism, tensor


class NoCounit(ValueError):
    pass


class NonUniqueCounit(ValueError):
    pass


class NoAntipode(ValueError):
    pass


class AntipodeNotInvertible(ValueError):
    pass


class AntipodeChecksFailed(ValueError):
    def __init__(self, failing: list[str]):
        super().__init__("antipode identities failed: " + ", ".join(failing))
        self.failing = failing


class NotEquivalence(ValueError):
    pass


@dataclass(eq=False)
class QuantumGroupoid:
    """Structure-constant data plus whatever has been solved so far.

    ``counit``, ``antipode``, ``phi`` and ``psi`` hold either user-supplied
    values (checked against the solvers) or solver output.
    """

    algebra: PartialAlgebra
    delta: list[Tensor] | None
    name: str = ""
    counit: Vec | None = None
    antipode: list[Vec] | None = None
    phi: Vec | None = None
    psi: Vec | None = None
    meta: dict = field(default_factory=dict)

    @property
    def A(self) -> PartialAlgebra:
        return self.algebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def tensor_square(self) -> TensorSquare:
        return TensorSquare(self.algebra)

    def comultiply(self, x: Vec) -> Tensor:
        out: Tensor = {}
        for i, c in x.items():
            la.axpy(out, c, self.delta[i])
        return out

    @cached_property
    def delta2(self) -> list[dict]:
        """(Delta (x) id) Delta on basis vectors, keyed by index triples."""
        out = []
        for i in range(self.dim):
            t: dict = {}
            for (p, q), c in self.delta[i].items():
                for (a, b), d in self.delta[p].items():
                    key = (a, b, q)
                    w = t.get(key, 0) + c * d
                    if w:
                        t[key] = w
                    else:
                        t.pop(key, None)
            out.append(t)
        return out


def tensor_map(f: list[Vec] | None, g: list[Vec] | None, x: Tensor) -> Tensor:
    """(f (x) g)(x); None stands for the identity."""
    out: Tensor = {}
    for (i, j), c in x.items():
        fi = f[i] if f is not None else {i: 1}
        gj = g[j] if g is not None else {j: 1}
        for a, u in fi.items():
            for b, v in gj.items():
                key = (a, b)
                w = out.get(key, 0) + c * u * v
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
    return out


def flip(x: Tensor) -> Tensor:
    return {(j, i): c for (i, j), c in x.items()}


# -- comultiplication -------------------------------------------------------------

def check_comultiplication(qg: QuantumGroupoid) -> dict[str, bool]:
    A = qg.algebra
    T = qg.tensor_square
    g = A.grade
    graded = True
    for i, d in enumerate(qg.delta):
        gi = g[i]
        for (p, q) in d:
            gp, gq = g[p], g[q]
            if gp[2:] != gq[:2] or gp[:2] != gi[:2] or gq[2:] != gi[2:]:
                graded = False
                break
        if not graded:
            break
    mult = True
    for i in range(A.dim):
        for j in range(A.dim):
            if qg.comultiply(A.product(i, j)) != T.multiply(qg.delta[i], qg.delta[j]):
                mult = False
                break
        if not mult:
            break
    units = all(
        qg.comultiply(A.base_unit(r, s)) == T.base_unit(r, s) for r in range(A.nobj) for s in range(A.nobj)
    )
    unit = qg.comultiply(A.unit) == T.E
    coassoc = True
    for i in range(A.dim):
        right: dict = {}
        for (p, q), c in qg.delta[i].items():
            for (a, b), d in qg.delta[q].items():
                la.axpy(right, c * d, {(p, a, b): 1})
        if right != qg.delta2[i]:
            coassoc = False
            break
    return {
        "grading_compatible": graded,
        "multiplicative": mult,
        "base_units": units,
        "unit_to_E": unit,
        "coassociative": coassoc,
        "morphism": mult and units,
    }


# -- counit --------------------------------------------------------------------

def _counit_support(A: PartialAlgebra) -> list[int]:
    return A.indices(lambda q: q[0] == q[2] and q[1] == q[3])


def solve_counit(qg: QuantumGroupoid) -> Vec:
    A = qg.algebra
    unknowns = _counit_support(A)
    allowed = set(unknowns)
    rows, rhs = [], []
    for i in range(A.dim):
        left: dict[int, Vec] = {}
        right: dict[int, Vec] = {}
        for (p, q), c in qg.delta[i].items():
            if q in allowed:
                la.axpy(left.setdefault(p, {}), c, {q: 1})
            if p in allowed:
                la.axpy(right.setdefault(q, {}), c, {p: 1})
        for side in (left, right):
            for m in set(side) | {i}:
                row = side.get(m, {})
                rows.append(row)
                rhs.append(1 if m == i else 0)
    try:
        sols, null = la.solve_system(rows, rhs, unknowns)
    except la.Inconsistent:
        raise NoCounit("counit equations are inconsistent") from None
    if null:
        raise NonUniqueCounit(f"counit solution space has dimension {len(null)}")
    return sols[0]


def check_counit(qg: QuantumGroupoid, eps: Vec) -> dict[str, bool]:
    A = qg.algebra
    g = A.grade
    support = all(g[i][0] == g[i][2] and g[i][1] == g[i][3] for i in eps)
    off_diag = all(g[i][1] == g[i][3] for i in eps)
    nonzero = True
    for r in range(A.nobj):
        col = [i for i in range(A.dim) if g[i][3] == r]
        row = [i for i in range(A.dim) if g[i][2] == r]
        if not any(eps.get(i) for i in col) or not any(eps.get(i) for i in row):
            nonzero = False
    pmult = True
    for i in range(A.dim):
        for j in range(A.dim):
            if g[i][1] == g[j][0] and g[i][3] == g[j][2]:
                if la.dot(eps, A.product(i, j)) != eps.get(i, 0) * eps.get(j, 0):
                    pmult = False
    ident = True
    for i in range(A.dim):
        d = qg.delta[i]
        lhs_r: Vec = {}
        lhs_l: Vec = {}
        for (p, q), c in d.items():
            la.axpy(lhs_r, c * eps.get(q, 0), {p: 1})
            la.axpy(lhs_l, c * eps.get(p, 0), {q: 1})
        if lhs_r != {i: 1} or lhs_l != {i: 1}:
            ident = False
            break
    # fullness: left and right legs of the coproduct span A
    left_legs: dict = {}
    right_legs: dict = {}
    for i, d in enumerate(qg.delta):
        for (p, q), c in d.items():
            la.axpy(left_legs.setdefault((i, q), {}), c, {p: 1})
            la.axpy(right_legs.setdefault((i, p), {}), c, {q: 1})
    full = la.rank(list(left_legs.values())) == A.dim and la.rank(list(right_legs.values())) == A.dim
    return {
        "support_diagonal": support,
        "kills_off_diagonal": off_diag,
        "nonzero_on_slices": nonzero,
        "partially_multiplicative": pmult,
        "counit_identities": ident,
        "full": full,
    }


def source_map(A: PartialAlgebra, eps: Vec, x: Vec) -> Vec:
    """eps_s(a) = sum_s eps(a 1^s) 1_s."""
    out: Vec = {}
    for i, c in x.items():
        e = eps.get(i)
        if e:
            la.axpy(out, c * e, A.one_lower(A.grade[i][1]))
    return out


def target_map(A: PartialAlgebra, eps: Vec, x: Vec) -> Vec:
    """eps_t(a) = sum_t eps(1_t a) 1^t."""
    out: Vec = {}
    for i, c in x.items():
        e = eps.get(i)
        if e:
            la.axpy(out, c * e, A.one_upper(A.grade[i][2]))
    return out


# -- canonical maps -------------------------------------------------------------

CAN_MAPS = ("can_r", "can_l", "can_rc", "can_lc")


def _can_domain(A: PartialAlgebra, name: str):
    g = A.grade
    if name in ("can_r", "can_lc"):
        return lambda a, b: g[a][3] == g[b][2]
    return lambda a, b: g[a][1] == g[b][0]


def _can_codomain(A: PartialAlgebra, name: str):
    g = A.grade
    return {
        "can_r": lambda p, q: g[p][2] == g[q][0],
        "can_l": lambda p, q: g[p][3] == g[q][1],
        "can_rc": lambda p, q: g[p][0] == g[q][2],
        "can_lc": lambda p, q: g[p][1] == g[q][3],
    }[name]


def can_apply(qg: QuantumGroupoid, name: str, a: int, b: int) -> Tensor:
    """The formula of a canonical map on a basis pair, extended to all of A (x) A."""
    A = qg.algebra
    out: Tensor = {}
    if name == "can_r":  # a(1) (x) a(2) b
        for (p, q), c in qg.delta[a].items():
            for k, v in A.product(q, b).items():
                la.axpy(out, c * v, {(p, k): 1})
    elif name == "can_l":  # a b(1) (x) b(2)
        for (p, q), c in qg.delta[b].items():
            for k, v in A.product(a, p).items():
                la.axpy(out, c * v, {(k, q): 1})
    elif name == "can_rc":  # a(2) (x) a(1) b
        for (p, q), c in qg.delta[a].items():
            for k, v in A.product(p, b).items():
                la.axpy(out, c * v, {(q, k): 1})
    elif name == "can_lc":  # a b(2) (x) b(1)
        for (p, q), c in qg.delta[b].items():
            for k, v in A.product(a, q).items():
                la.axpy(out, c * v, {(k, p): 1})
    else:
        raise ValueError(name)
    return out


def can_domain_pairs(A: PartialAlgebra, name: str) -> list[tuple[int, int]]:
    dom = _can_domain(A, name)
    return [(a, b) for a in range(A.dim) for b in range(A.dim) if dom(a, b)]


def can_codomain_pairs(A: PartialAlgebra, name: str) -> list[tuple[int, int]]:
    cod = _can_codomain(A, name)
    return [(p, q) for p in range(A.dim) for q in range(A.dim) if cod(p, q)]


def _g1_projection(A: PartialAlgebra, name: str, a: int, b: int) -> Tensor:
    """The idempotent onto the domain of a canonical map, built from base units."""
    out: Tensor = {}
    for r in range(A.nobj):
        if name in ("can_r", "can_lc"):
            left = A.multiply({a: 1}, A.one_lower(r))
            right = A.multiply(A.one_lower(r), {b: 1})
        else:
            left = A.multiply({a: 1}, A.one_upper(r))
            right = A.multiply(A.one_upper(r), {b: 1})
        la.axpy(out, 1, tensor(left, right))
    return out


def canonical_maps(qg: QuantumGroupoid) -> dict:
    A = qg.algebra
    out = {}
    for name in CAN_MAPS:
        dom = can_domain_pairs(A, name)
        cod = set(can_codomain_pairs(A, name))
        cols = [can_apply(qg, name, a, b) for a, b in dom]
        in_cod = all(k in cod for col in cols for k in col)
        r = la.rank(cols)
        # the formula kills the complement of the domain, as the projection predicts
        kernel_ok = True
        for a in range(A.dim):
            for b in range(A.dim):
                proj = _g1_projection(A, name, a, b)
                direct = can_apply(qg, name, a, b)
                via = {}
                for (x, y), c in proj.items():
                    la.axpy(via, c, can_apply(qg, name, x, y))
                if direct != via:
                    kernel_ok = False
                    break
            if not kernel_ok:
                break
        out[name] = {
            "domain_dim": len(dom),
            "codomain_dim": len(cod),
            "rank": r,
            "bijective": in_cod and len(dom) == len(cod) == r,
            "kernel_matches_projection": kernel_ok,
        }
    return out


# -- antipode ----------------------------------------------------------------------

def _antipode_grade(q):
    r, s, t, u = q
    return (u, t, s, r)


def solve_antipode(qg: QuantumGroupoid, eps: Vec) -> list[Vec]:
    A = qg.algebra
    g = A.grade
    by_grade: dict = {}
    for k, q in enumerate(g):
        by_grade.setdefault(q, []).append(k)
    allowed = {p: by_grade.get(_antipode_grade(g[p]), []) for p in range(A.dim)}
    unknowns = [(p, k) for p in range(A.dim) for k in allowed[p]]

    def system(extra: bool):
        rows, rhs = [], []
        for a in range(A.dim):
            e = {a: 1}
            # m (S (x) id) Delta = eps_s
            eq: dict[int, Vec] = {}
            for (p, q), c in qg.delta[a].items():
                for k in allowed[p]:
                    for m, v in A.product(k, q).items():
                        la.axpy(eq.setdefault(m, {}), c * v, {(p, k): 1})
            target = source_map(A, eps, e)
            for m in set(eq) | set(target):
                rows.append(eq.get(m, {}))
                rhs.append(target.get(m, 0))
            # m (id (x) S) Delta = eps_t
            eq = {}
            for (p, q), c in qg.delta[a].items():
                for k in allowed[q]:
                    for m, v in A.product(p, k).items():
                        la.axpy(eq.setdefault(m, {}), c * v, {(q, k): 1})
            target = target_map(A, eps, e)
            for m in set(eq) | set(target):
                rows.append(eq.get(m, {}))
                rhs.append(target.get(m, 0))
        # S(1_r) = 1^r and S(1^r) = 1_r
        for r in range(A.nobj):
            for src, dst in ((A.one_lower(r), A.one_upper(r)), (A.one_upper(r), A.one_lower(r))):
                eq = {}
                for p, c in src.items():
                    for k in allowed[p]:
                        la.axpy(eq.setdefault(k, {}), c, {(p, k): 1})
                for m in set(eq) | set(dst):
                    rows.append(eq.get(m, {}))
                    rhs.append(dst.get(m, 0))
        if extra:
            # a(1) S(a(2)) a(3) = a
            for a in range(A.dim):
                eq = {}
                for (x, y, z), c in qg.delta2[a].items():
                    for k in allowed[y]:
                        left = A.product(x, k)
                        for m, v in left.items():
                            for n, w in A.product(m, z).items():
                                la.axpy(eq.setdefault(n, {}), c * v * w, {(y, k): 1})
                for m in set(eq) | {a}:
                    rows.append(eq.get(m, {}))
                    rhs.append(1 if m == a else 0)
        return rows, rhs

    rows, rhs = system(False)
    try:
        sols, null = la.solve_system(rows, rhs, unknowns)
    except la.Inconsistent:
        raise NoAntipode("antipode equations are inconsistent") from None
    if null:
        rows, rhs = system(True)
        try:
            sols, null = la.solve_system(rows, rhs, unknowns)
        except la.Inconsistent:
            raise NoAntipode("antipode equations are inconsistent") from None
        if null:
            raise NoAntipode(f"antipode not unique (nullity {len(null)})")
    S: list[Vec] = [dict() for _ in range(A.dim)]
    for (p, k), v in sols[0].items():
        S[p][k] = v
    return S


def antipode_checks(qg: QuantumGroupoid, eps: Vec, S: list[Vec], Sinv: list[Vec]) -> dict[str, bool]:
    A = qg.algebra
    n = A.dim
    res = {}
    res["invertible"] = la.compose(S, Sinv) == la.identity(n) and la.compose(Sinv, S) == la.identity(n)
    anti = True
    for i in range(n):
        for j in range(n):
            if la.apply(S, A.product(i, j)) != A.multiply(S[j], S[i]):
                anti = False
                break
        if not anti:
            break
    res["anti_multiplicative"] = anti
    res["base_units_swapped"] = all(
        la.apply(S, A.one_lower(r)) == A.one_upper(r) and la.apply(S, A.one_upper(r)) == A.one_lower(r)
        for r in range(A.nobj)
    )
    left_inv = right_inv = True
    for a in range(n):
        lhs: Vec = {}
        rhs: Vec = {}
        for (p, q), c in qg.delta[a].items():
            la.axpy(lhs, c, A.multiply(S[p], {q: 1}))
            la.axpy(rhs, c, A.multiply({p: 1}, S[q]))
        if lhs != source_map(A, eps, {a: 1}):
            left_inv = False
        if rhs != target_map(A, eps, {a: 1}):
            right_inv = False
    res["left_inverse"] = left_inv
    res["right_inverse"] = right_inv
    res["anti_comultiplicative"] = all(
        qg.comultiply(S[i]) == flip(tensor_map(S, S, qg.delta[i])) for i in range(n)
    )
    res["counit_invariant"] = all(la.dot(eps, S[i]) == eps.get(i, 0) for i in range(n))
    weak = True
    for a in range(n):
        acc: Vec = {}
        for (x, y, z), c in qg.delta2[a].items():
            la.axpy(acc, c, A.multiply(A.multiply({x: 1}, S[y]), {z: 1}))
        if acc != {a: 1}:
            weak = False
            break
    res["weak_inverse"] = weak
    d2 = True
    for a in range(n):
        lhs: Vec = {}
        rhs: Vec = {}
        for (p, q), c in qg.delta[a].items():
            la.axpy(lhs, c, A.multiply({q: 1}, Sinv[p]))
            la.axpy(rhs, c, A.multiply(Sinv[q], {p: 1}))
        e = eps.get(a, 0)
        ga = A.grade[a]
        if lhs != la.scale(e, A.one_lower(ga[0])) or rhs != la.scale(e, A.one_upper(ga[3])):
            d2 = False
            break
    res["inverse_source_target"] = d2
    return res


def can_r_inverse_formula_check(qg: QuantumGroupoid, S: list[Vec]) -> bool:
    """can_r applied after a(1) (x) S(a(2)) b equals E(a (x) b) on all basis pairs."""
    A = qg.algebra
    T = qg.tensor_square
    for a in range(A.dim):
        for b in range(A.dim):
            pre: Tensor = {}
            for (p, q), c in qg.delta[a].items():
                for k, v in A.multiply(S[q], {b: 1}).items():
                    la.axpy(pre, c * v, {(p, k): 1})
            post: Tensor = {}
            for (x, y), c in pre.items():
                la.axpy(post, c, can_apply(qg, "can_r", x, y))
            if post != T.multiply(T.E, {(a, b): 1}):
                return False
    return True


def antipode_via_can_r(qg: QuantumGroupoid, eps: Vec) -> list[Vec]:
    """S(a) = (eps (x) id) can_r^{-1}(a (x) 1^r), r the third index of a."""
    A = qg.algebra
    dom = can_domain_pairs(A, "can_r")
    cols = [can_apply(qg, "can_r", a, b) for a, b in dom]
    keys = sorted({k for c in cols for k in c})
    kidx = {k: i for i, k in enumerate(keys)}
    rows: list[Vec] = [dict() for _ in keys]
    for j, col in enumerate(cols):
        for k, v in col.items():
            rows[kidx[k]][j] = v
    rhs_cols: list[dict] = [dict() for _ in keys]
    extra_rows: list[Vec] = []
    extra_rhs: list[dict] = []
    for a in range(A.dim):
        target = tensor({a: 1}, A.one_upper(A.grade[a][2]))
        for k, v in target.items():
            if k in kidx:
                rhs_cols[kidx[k]][a] = v
            else:
                extra_rows.append({})
                extra_rhs.append({a: v})
    try:
        sols, null = la.solve_system(rows + extra_rows, rhs_cols + extra_rhs, list(range(len(dom))))
    except la.Inconsistent:
        raise NoAntipode("can_r is not surjective onto the required vectors") from None
    if null:
        raise NoAntipode("can_r is not injective")
    S: list[Vec] = []
    for a in range(A.dim):
        img: Vec = {}
        for j, c in sols[a].items():
            x, y = dom[j]
            e = eps.get(x)
            if e:
                la.axpy(img, c * e, {y: 1})
        S.append(img)
    return S


# -- weak bialgebra identities ---------------------------------------------------

def weak_bialgebra_identities(qg: QuantumGroupoid, eps: Vec) -> dict[str, bool]:
    A = qg.algebra
    n = A.dim
    first = second = True
    for a in range(n):
        for b in range(n):
            # (eps (x) id)(Delta(a)(b (x) 1)) = sum_t eps(1_t b) a 1^t
            lhs: Vec = {}
            for (p, q), c in qg.delta[a].items():
                e = la.dot(eps, A.product(p, b))
                if e:
                    la.axpy(lhs, c * e, {q: 1})
            rhs: Vec = {}
            for t in range(A.nobj):
                e = la.dot(eps, A.multiply(A.one_lower(t), {b: 1}))
                if e:
                    la.axpy(rhs, e, A.multiply({a: 1}, A.one_upper(t)))
            if lhs != rhs:
                first = False
            # (eps (x) id)((b (x) 1) Delta(a)) = sum_t eps(b 1_t) 1^t a
            lhs = {}
            for (p, q), c in qg.delta[a].items():
                e = la.dot(eps, A.product(b, p))
                if e:
                    la.axpy(lhs, c * e, {q: 1})
            rhs = {}
            for t in range(A.nobj):
                e = la.dot(eps, A.multiply({b: 1}, A.one_lower(t)))
                if e:
                    la.axpy(rhs, e, A.multiply(A.one_upper(t), {a: 1}))
            if lhs != rhs:
                second = False
        if not (first or second):
            break
    return {"right_slice_identity": first, "left_slice_identity": second}


# -- hyperobjects -----------------------------------------------------------------------

def hyperobject_partition(A: PartialAlgebra) -> list[list[int]]:
    n = A.nobj
    rel = [[bool(A.base_unit(r, s)) for s in range(n)] for r in range(n)]
    for r in range(n):
        if not rel[r][r]:
            raise NotEquivalence(f"1({A.objects[r]},{A.objects[r]}) vanishes")
        for s in range(n):
            if rel[r][s] != rel[s][r]:
                raise NotEquivalence("relation is not symmetric")
            for t in range(n):
                if rel[r][s] and rel[s][t] and not rel[r][t]:
                    raise NotEquivalence("relation is not transitive")
    classes: list[list[int]] = []
    seen = set()
    for r in range(n):
        if r in seen:
            continue
        cls = [s for s in range(n) if rel[r][s]]
        seen.update(cls)
        classes.append(cls)
    for cls in classes:
        lower = la.lincomb((1, A.one_lower(s)) for s in cls)
        upper = la.lincomb((1, A.one_upper(r)) for r in cls)
        if lower != upper:
            raise NotEquivalence("class units from rows and columns differ")
    return classes


def class_of(partition: list[list[int]]) -> dict[int, int]:
    return {r: k for k, cls in enumerate(partition) for r in cls}


def base_unit_coproducts(qg: QuantumGroupoid) -> bool:
    A = qg.algebra
    for s in range(A.nobj):
        want: Tensor = {}
        for t in range(A.nobj):
            la.axpy(want, 1, tensor(A.one_lower(t), A.base_unit(t, s)))
        if qg.comultiply(A.one_lower(s)) != want:
            return False
        want = {}
        for t in range(A.nobj):
            la.axpy(want, 1, tensor(A.base_unit(s, t), A.one_upper(t)))
        if qg.comultiply(A.one_upper(s)) != want:
            return False
    return True


# -- driver ----------------------------------------------------------------------------

@dataclass
class HopfData:
    eps: Vec
    S: list[Vec]
    Sinv: list[Vec]
    partition: list[list[int]]


def run_hopf(qg: QuantumGroupoid) -> tuple[dict, HopfData | None]:
    """All hopf-layer checks in order; returns (report, data or None)."""
    A = qg.algebra
    rep: dict = {"checks": {}}
    checks = rep["checks"]
    if qg.delta is None:
        rep["error"] = "no coproduct given"
        return rep, None
    try:
        A.unit
    except NoUnit as exc:
        rep["error"] = str(exc)
        return rep, None
    cm = check_comultiplication(qg)
    checks["comultiplication"] = cm
    checks["base_unit_coproducts"] = base_unit_coproducts(qg) if cm["grading_compatible"] else False
    if not all(cm.values()):
        rep["failed_at"] = "comultiplication"
        return rep, None
    try:
        eps = solve_counit(qg)
    except (NoCounit, NonUniqueCounit) as exc:
        rep["failed_at"] = "counit"
        rep["error"] = f"{type(exc).__name__}: {exc}"
        return rep, None
    checks["counit"] = check_counit(qg, eps)
    if qg.counit is not None:
        checks["counit"]["matches_given"] = qg.counit == eps
    rep["counit"] = A.format_element(eps)
    if not all(checks["counit"].values()):
        rep["failed_at"] = "counit"
        return rep, None
    cans = canonical_maps(qg)
    checks["canonical_maps"] = {k: v["bijective"] and v["kernel_matches_projection"] for k, v in cans.items()}
    rep["can_ranks"] = {k: v["rank"] for k, v in cans.items()}
    rep["can_dims"] = {k: [v["domain_dim"], v["codomain_dim"]] for k, v in cans.items()}
    if not all(checks["canonical_maps"].values()):
        rep["failed_at"] = "canonical_maps"
        return rep, None
    try:
        S = solve_antipode(qg, eps)
    except NoAntipode as exc:
        rep["failed_at"] = "antipode"
        rep["error"] = f"NoAntipode: {exc}"
        return rep, None
    try:
        Sinv = la.inverse(S, A.dim)
    except la.Singular:
        rep["failed_at"] = "antipode"
        rep["error"] = "AntipodeNotInvertible"
        return rep, None
    ac = antipode_checks(qg, eps, S, Sinv)
    try:
        ac["agrees_with_can_r_route"] = antipode_via_can_r(qg, eps) == S
    except NoAntipode:
        ac["agrees_with_can_r_route"] = False
    ac["can_r_inverse_formula"] = can_r_inverse_formula_check(qg, S)
    if qg.antipode is not None:
        ac["matches_given"] = qg.antipode == S
    checks["antipode"] = ac
    rep["antipode"] = {A.basis[i]: A.format_element(S[i]) for i in range(A.dim)}
    if not all(ac.values()):
        rep["failed_at"] = "antipode"
        return rep, None
    checks["weak_bialgebra"] = weak_bialgebra_identities(qg, eps)
    try:
        part = hyperobject_partition(A)
        checks["hyperobjects"] = {"equivalence": True, "class_units_agree": True}
    except NotEquivalence as exc:
        checks["hyperobjects"] = {"equivalence": False}
        rep["error"] = f"NotEquivalence: {exc}"
        rep["failed_at"] = "hyperobjects"
        return rep, None
    rep["hyperobjects"] = [[A.objects[r] for r in cls] for cls in part]
    if not all(checks["weak_bialgebra"].values()):
        rep["failed_at"] = "weak_bialgebra"
        return rep, None
    return rep, HopfData(eps, S, Sinv, part)
