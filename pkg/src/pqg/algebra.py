"""Partial algebras given by structure constants on a homogeneous basis.

A basis vector of grade ``(r, s, t, u)`` lives in ``1(r,t) A 1(s,u)``.  The
product of grades ``(r,s,t,u)`` and ``(s,v,u,w)`` has grade ``(r,v,t,w)``;
all other products vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from . import linalg as la
from .scalars import conj, field as scalar_field

Quad = tuple[int, int, int, int]
Vec = dict
Tensor = dict  # {(i, j): scalar}


class NoUnit(ValueError):
    pass


def compose_grades(g: Quad, h: Quad) -> Quad | None:
    if g[1] == h[0] and g[3] == h[2]:
        return (g[0], h[1], g[2], h[3])
    return None


@dataclass
class PartialAlgebra:
    objects: list[str]
    basis: list[str]
    grade: list[Quad]
    mult: dict[tuple[int, int], Vec]
    conductor: int = 1
    star: list[Vec] | None = None

    def __post_init__(self):
        if not self.objects or len(set(self.objects)) != len(self.objects):
            raise ValueError("object labels must be non-empty and distinct")
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be distinct")
        if len(self.grade) != len(self.basis):
            raise ValueError("every basis vector needs exactly one grading quad")
        n = len(self.objects)
        for q in self.grade:
            if len(q) != 4 or not all(0 <= x < n for x in q):
                raise ValueError(f"grading quad {q} out of range")
        self.grade = [tuple(q) for q in self.grade]
        self.mult = {k: la.clean(v) for k, v in self.mult.items() if la.clean(v)}

    # -- basic data
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def nobj(self) -> int:
        return len(self.objects)

    @cached_property
    def field(self):
        return scalar_field(self.conductor)

    @cached_property
    def index(self) -> dict[str, int]:
        return {b: i for i, b in enumerate(self.basis)}

    @cached_property
    def _rows(self) -> list[dict[int, Vec]]:
        rows: list[dict[int, Vec]] = [dict() for _ in range(self.dim)]
        for (i, j), v in self.mult.items():
            rows[i][j] = v
        return rows

    def indices(self, pred: Callable[[Quad], bool]) -> list[int]:
        return [i for i, g in enumerate(self.grade) if pred(g)]

    # -- arithmetic
    def multiply(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        rows = self._rows
        for i, a in x.items():
            row = rows[i]
            if not row:
                continue
            for j, b in y.items():
                p = row.get(j)
                if p is not None:
                    la.axpy(out, a * b, p)
        return out

    def product(self, i: int, j: int) -> Vec:
        return self._rows[i].get(j, {})

    def apply_star(self, x: Vec) -> Vec:
        if self.star is None:
            raise ValueError("algebra has no star")
        out: Vec = {}
        for i, a in x.items():
            la.axpy(out, conj(a), self.star[i])
        return out

    def project(self, x: Vec, pred: Callable[[Quad], bool]) -> Vec:
        g = self.grade
        return {i: v for i, v in x.items() if pred(g[i])}

    def left_mult_matrix(self, x: Vec) -> list[Vec]:
        return [self.multiply(x, {j: 1}) for j in range(self.dim)]

    def right_mult_matrix(self, x: Vec) -> list[Vec]:
        return [self.multiply({j: 1}, x) for j in range(self.dim)]

    # -- structural checks
    def grading_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        for (i, j), v in self.mult.items():
            g = compose_grades(self.grade[i], self.grade[j])
            for k in v:
                if g is None or self.grade[k] != g:
                    bad.append((i, j, k))
        return bad

    def is_associative(self) -> bool:
        rows = self._rows
        for i in range(self.dim):
            for j, ij in rows[i].items():
                for l in rows[j]:
                    left = self.multiply(ij, {l: 1})
                    right = self.multiply({i: 1}, rows[j][l])
                    if left != right:
                        return False
        # products that vanish on one side must vanish on the other
        for j in range(self.dim):
            for l, jl in rows[j].items():
                for i in range(self.dim):
                    if j not in rows[i] and self.multiply({i: 1}, jl):
                        return False
        return True

    # -- units
    @cached_property
    def unit(self) -> Vec:
        diag = self.indices(lambda g: g[0] == g[1] and g[2] == g[3])
        rows, rhs = [], []
        for e in range(self.dim):
            # u e = e and e u = e, linear in the coordinates of u
            left: dict[int, Vec] = {}
            right: dict[int, Vec] = {}
            for k in diag:
                for m, c in self.product(k, e).items():
                    left.setdefault(m, {})[k] = c
                for m, c in self.product(e, k).items():
                    right.setdefault(m, {})[k] = c
            for side in (left, right):
                for m in range(self.dim):
                    row = side.get(m, {})
                    target = 1 if m == e else 0
                    if row or target:
                        rows.append(row)
                        rhs.append(target)
        try:
            sols, null = la.solve_system(rows, rhs, diag)
        except la.Inconsistent:
            raise NoUnit("total algebra has no unit") from None
        if null:
            raise NoUnit("unit equations are underdetermined")
        return sols[0]

    def has_unit(self) -> bool:
        try:
            self.unit
        except NoUnit:
            return False
        return True

    @cached_property
    def _base_units(self) -> dict[tuple[int, int], Vec]:
        u = self.unit
        out = {}
        for r in range(self.nobj):
            for t in range(self.nobj):
                out[(r, t)] = {i: v for i, v in u.items() if self.grade[i][0] == r and self.grade[i][2] == t}
        return out

    def base_unit(self, r: int, t: int) -> Vec:
        return self._base_units[(r, t)]

    def one_lower(self, t: int) -> Vec:
        """1_t, the sum of 1(r,t) over r."""
        return la.lincomb((1, self.base_unit(r, t)) for r in range(self.nobj))

    def one_upper(self, r: int) -> Vec:
        """1^r, the sum of 1(r,t) over t."""
        return la.lincomb((1, self.base_unit(r, t)) for t in range(self.nobj))

    def base_units(self) -> dict:
        units = dict(self._base_units)
        return {
            "pairs": units,
            "lower": {t: self.one_lower(t) for t in range(self.nobj)},
            "upper": {r: self.one_upper(r) for r in range(self.nobj)},
            "total": self.unit,
        }

    def base_unit_relations_hold(self) -> bool:
        n = self.nobj
        for a in range(n):
            for b in range(n):
                x = self.base_unit(a, b)
                for c in range(n):
                    for d in range(n):
                        want = x if (a, b) == (c, d) else {}
                        if self.multiply(x, self.base_unit(c, d)) != want:
                            return False
        return la.lincomb((1, v) for v in self._base_units.values()) == self.unit

    # -- regularity
    def _blocks(self) -> dict[tuple, list[int]]:
        blocks: dict[tuple, list[int]] = {}
        for i, g in enumerate(self.grade):
            blocks.setdefault(((g[0], g[2]), (g[1], g[3])), []).append(i)
        return blocks

    def _injective(self, domain: Sequence[int], partners: Sequence[int], left: bool) -> bool:
        vecs = []
        for a in domain:
            v = {}
            for b in partners:
                p = self.product(a, b) if left else self.product(b, a)
                for k, c in p.items():
                    v[(b, k)] = c
            vecs.append(v)
        return la.rank(vecs) == len(domain)

    def _idempotent(self, target: Sequence[int], products: Iterable[Vec]) -> bool:
        ech = la.span_basis(products)
        return ech.rank == len(target) and all(ech.contains({i: 1}) for i in target)

    def check_partial_regularity(self) -> dict[str, bool]:
        blocks = self._blocks()
        nd_part = True
        id_part = True
        for (p, q), idx in blocks.items():
            right_partners = blocks.get((q, q), [])
            left_partners = blocks.get((p, p), [])
            if nd_part:
                if not self._injective(idx, right_partners, True) or not self._injective(idx, left_partners, False):
                    nd_part = False
            if id_part:
                prods_r = [self.product(a, b) for a in idx for b in right_partners]
                prods_l = [self.product(b, a) for a in idx for b in left_partners]
                if not self._idempotent(idx, prods_r) or not self._idempotent(idx, prods_l):
                    id_part = False
        allidx = list(range(self.dim))
        nd_total = self._injective(allidx, allidx, True) and self._injective(allidx, allidx, False)
        id_total = self._idempotent(allidx, (p for p in self.mult.values()))
        return {
            "nondegenerate_partial": nd_part,
            "idempotent_partial": id_part,
            "nondegenerate_total": nd_total,
            "idempotent_total": id_total,
        }

    # -- formatting
    def format_element(self, x: Vec) -> dict[str, str]:
        return {self.basis[i]: self.field.format(v) for i, v in sorted(x.items())}


def check_partial_regularity(A: PartialAlgebra) -> dict[str, bool]:
    return A.check_partial_regularity()


def base_units(A: PartialAlgebra) -> dict:
    return A.base_units()


def multiply(A: PartialAlgebra, a: Vec, b: Vec) -> Vec:
    return A.multiply(a, b)


# -- tensor square --------------------------------------------------------------

def tensor_multiply(A: PartialAlgebra, x: Tensor, y: Tensor, B: PartialAlgebra | None = None) -> Tensor:
    B = B or A
    out: Tensor = {}
    for (i, j), a in x.items():
        for (k, l), b in y.items():
            p = A.product(i, k)
            if not p:
                continue
            q = B.product(j, l)
            if not q:
                continue
            c = a * b
            for m, u in p.items():
                for n, v in q.items():
                    key = (m, n)
                    w = out.get(key, 0) + c * u * v
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
    return out


def tensor(x: Vec, y: Vec) -> Tensor:
    return {(i, j): a * b for i, a in x.items() for j, b in y.items()}


def is_balanced(A: PartialAlgebra, i: int, j: int) -> bool:
    gi, gj = A.grade[i], A.grade[j]
    return gi[2] == gj[0] and gi[3] == gj[1]


@dataclass
class TensorSquare:
    """The balanced part E(A (x) A)E of the tensor square."""

    parent: PartialAlgebra
    pairs: list[tuple[int, int]] = field(init=False)
    E: Tensor = field(init=False)

    def __post_init__(self):
        A = self.parent
        self.pairs = [(i, j) for i in range(A.dim) for j in range(A.dim) if is_balanced(A, i, j)]
        E: Tensor = {}
        for t in range(A.nobj):
            for key, v in tensor(A.one_lower(t), A.one_upper(t)).items():
                w = E.get(key, 0) + v
                if w:
                    E[key] = w
                else:
                    E.pop(key, None)
        self.E = E

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def multiply(self, x: Tensor, y: Tensor) -> Tensor:
        return tensor_multiply(self.parent, x, y)

    def base_unit(self, r: int, s: int) -> Tensor:
        A = self.parent
        out: Tensor = {}
        for t in range(A.nobj):
            la.axpy(out, 1, tensor(A.base_unit(r, t), A.base_unit(t, s)))
        return out

    def sandwich(self, x: Tensor) -> Tensor:
        return self.multiply(self.multiply(self.E, x), self.E)

    def checks(self) -> dict[str, bool]:
        A = self.parent
        idem = self.multiply(self.E, self.E) == self.E
        pairset = set(self.pairs)
        ok = True
        for i in range(A.dim):
            for j in range(A.dim):
                want = {(i, j): 1} if (i, j) in pairset else {}
                if self.sandwich({(i, j): 1}) != want:
                    ok = False
                    break
            if not ok:
                break
        return {"E_idempotent": idem, "E_projects_onto_pairs": ok}


def tensor_square(A: PartialAlgebra) -> TensorSquare:
    return TensorSquare(A)


def slice_tensor(omega: Vec, x: Tensor, side: str) -> Vec:
    """(omega (x) id)(x) for side='left', (id (x) omega)(x) for side='right'."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out: Vec = {}
    for (i, j), c in x.items():
        k, keep = (i, j) if side == "left" else (j, i)
        w = omega.get(k)
        if w:
            la.axpy(out, c * w, {keep: 1})
    return out


def check_morphism(f, A: PartialAlgebra, B) -> bool:
    """f: callable or list of images of basis vectors of A.

    B needs ``multiply`` and ``base_unit(r, t)``; it may be a PartialAlgebra or
    a TensorSquare.
    """
    img = f if callable(f) else (lambda x: la.apply(f, x))
    images = [img({i: 1}) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = la.apply(images, A.product(i, j))
            if lhs != B.multiply(images[i], images[j]):
                return False
    for r in range(A.nobj):
        for t in range(A.nobj):
            if la.apply(images, A.base_unit(r, t)) != B.base_unit(r, t):
                return False
    return True


@dataclass(frozen=True)
class GradedFunctional:
    covector: Vec
    support: frozenset

    def __call__(self, x: Vec):
        return la.dot(self.covector, x)

    def respects_support(self, A: PartialAlgebra) -> bool:
        return all(A.grade[i] in self.support for i in self.covector)

    @staticmethod
    def on(A: PartialAlgebra, covector: Vec, pred: Callable[[Quad], bool]) -> "GradedFunctional":
        return GradedFunctional(dict(covector), frozenset(g for g in set(A.grade) if pred(g)))
