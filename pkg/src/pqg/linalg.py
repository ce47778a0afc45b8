"""Sparse exact linear algebra over the scalar fields of :mod:`pqg.scalars`.

Vectors are ``dict[key, scalar]`` with no stored zeros.  Keys only need to be
hashable and totally ordered; elimination pivots on the smallest key.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

from .scalars import CyclotomicScalar, inv

Vec = dict

MODULUS = (1 << 61) - 1


class Inconsistent(ValueError):
    pass


class Singular(ValueError):
    pass


# -- vector helpers ---------------------------------------------------------

def axpy(y: Vec, a, x: Vec) -> Vec:
    """y += a*x in place."""
    if not a:
        return y
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)
    return y


def add(x: Vec, y: Vec) -> Vec:
    return axpy(dict(x), 1, y)


def sub(x: Vec, y: Vec) -> Vec:
    return axpy(dict(x), -1, y)


def scale(a, x: Vec) -> Vec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def clean(x: Vec) -> Vec:
    return {k: v for k, v in x.items() if v}


def lincomb(terms: Iterable[tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for a, x in terms:
        axpy(out, a, x)
    return out


def dot(x: Vec, y: Vec):
    if len(x) > len(y):
        x, y = y, x
    s = 0
    for k, v in x.items():
        w = y.get(k)
        if w:
            s = s + v * w
    return s


def apply(cols: Sequence[Vec], x: Vec) -> Vec:
    """Apply the matrix given by its columns (cols[j] = image of e_j)."""
    out: Vec = {}
    for j, c in x.items():
        axpy(out, c, cols[j])
    return out


def compose(f: Sequence[Vec], g: Sequence[Vec]) -> list[Vec]:
    """Columns of f o g."""
    return [apply(f, col) for col in g]


def identity(n: int) -> list[Vec]:
    return [{i: 1} for i in range(n)]


def transpose(cols: Sequence[Vec], nrows: int | None = None) -> list[Vec]:
    if nrows is None:
        nrows = 1 + max((k for c in cols for k in c), default=-1)
    rows: list[Vec] = [dict() for _ in range(nrows)]
    for j, c in enumerate(cols):
        for i, v in c.items():
            rows[i][j] = v
    return rows


# -- elimination -------------------------------------------------------------

class Echelon:
    """Incremental echelon basis keyed by leading (smallest) key.

    With ``track=True`` each stored pivot remembers which inserted vectors
    (by tag) combine to it, so membership tests can also return coefficients.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[Hashable, Vec] = {}
        self.combos: dict[Hashable, Vec] = {}
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: Vec, combo: Vec | None):
        v = dict(v)
        if not v:
            return v, combo
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        pivots = self.pivots
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c:
                continue
            p = pivots.get(k)
            if p is None:
                continue
            for kk, pv in p.items():
                w = v.get(kk, 0) - c * pv
                if w:
                    if kk not in v:
                        heapq.heappush(heap, kk)
                    v[kk] = w
                else:
                    v.pop(kk, None)
            if combo is not None:
                axpy(combo, -c, self.combos[k])
        return v, combo

    def reduce(self, v: Vec) -> Vec:
        return self._reduce(v, None)[0]

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec, tag: Hashable = None) -> bool:
        combo = {tag: 1} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return False
        lead = min(r)
        a = inv(r[lead])
        self.pivots[lead] = {k: a * x for k, x in r.items()}
        if self.track:
            self.combos[lead] = scale(a, combo)
        return True

    def express(self, v: Vec) -> Vec | None:
        """Coefficients over inserted tags summing to v, or None."""
        if not self.track:
            raise ValueError("express() requires track=True")
        r, combo = self._reduce(v, {})
        if r:
            return None
        return {k: -x for k, x in combo.items() if x}

    def basis(self) -> list[Vec]:
        return [self.pivots[k] for k in sorted(self.pivots)]


def _all_rational(vectors: Iterable[Vec]) -> bool:
    for v in vectors:
        for x in v.values():
            if isinstance(x, CyclotomicScalar):
                return False
    return True


def _to_mod(x) -> int | None:
    if isinstance(x, int):
        return x % MODULUS
    q = Fraction(x)
    d = q.denominator % MODULUS
    if d == 0:
        return None
    return (q.numerator % MODULUS) * pow(d, -1, MODULUS) % MODULUS


def rank_mod_p(vectors: Sequence[Vec]) -> int | None:
    """Rank modulo a large prime; a lower bound for the exact rank.

    Returns None if some denominator is divisible by the modulus.
    """
    pivots: dict = {}
    rank = 0
    for v in vectors:
        w = {}
        for k, x in v.items():
            m = _to_mod(x)
            if m is None:
                return None
            if m:
                w[k] = m
        heap = list(w)
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = w.get(k)
            if not c:
                continue
            p = pivots.get(k)
            if p is None:
                continue
            for kk, pv in p.items():
                val = (w.get(kk, 0) - c * pv) % MODULUS
                if val:
                    if kk not in w:
                        heapq.heappush(heap, kk)
                    w[kk] = val
                else:
                    w.pop(kk, None)
        if w:
            lead = min(w)
            a = pow(w[lead], -1, MODULUS)
            pivots[lead] = {k: x * a % MODULUS for k, x in w.items()}
            rank += 1
    return rank


def rank(vectors: Sequence[Vec]) -> int:
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    if _all_rational(vectors):
        r = rank_mod_p(vectors)
        # the modular rank never exceeds the exact rank; full rank is certified
        if r is not None and r == len(vectors):
            return r
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def span_basis(vectors: Iterable[Vec]) -> Echelon:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


def same_span(a: Iterable[Vec], b: Iterable[Vec]) -> bool:
    ea, eb = span_basis(a), span_basis(b)
    if ea.rank != eb.rank:
        return False
    return all(ea.contains(v) for v in eb.basis())


# -- linear systems -----------------------------------------------------------

class _RHS:
    """Sort key that orders after every unknown."""

    __slots__ = ("i",)

    def __init__(self, i: int):
        self.i = i

    def __lt__(self, other):
        if isinstance(other, _RHS):
            return self.i < other.i
        return False

    def __gt__(self, other):
        if isinstance(other, _RHS):
            return self.i > other.i
        return True

    def __eq__(self, other):
        return isinstance(other, _RHS) and other.i == self.i

    def __hash__(self):
        return hash(("rhs", self.i))


def _rref(rows: Iterable[Vec]) -> dict:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    piv = ech.pivots
    leads = sorted(piv, key=_sortkey, reverse=True)
    for k in leads:
        row = piv[k]
        for j in [j for j in row if j != k and j in piv]:
            c = row.get(j)
            if c:
                axpy(row, -c, piv[j])
    return piv


def _sortkey(k):
    return (1, k.i) if isinstance(k, _RHS) else (0, k)


def solve_system(
    rows: Sequence[Vec],
    rhs: Sequence[Vec] | Sequence = (),
    unknowns: Sequence[Hashable] | None = None,
) -> tuple[list[Vec], list[Vec]]:
    """Solve ``rows . x = rhs`` exactly.

    ``rows[i]`` is a dict over unknown keys; ``rhs[i]`` is either a scalar or a
    dict ``{rhs_index: value}`` for several right-hand sides at once.  Returns
    (particular solutions, one per right-hand side; nullspace basis).
    Raises :class:`Inconsistent` if some right-hand side has no solution.
    """
    nrhs = 0
    aug_rows = []
    for i, r in enumerate(rows):
        row = dict(r)
        if i < len(rhs):
            b = rhs[i]
            if isinstance(b, dict):
                for j, v in b.items():
                    if v:
                        row[_RHS(j)] = v
                    nrhs = max(nrhs, j + 1)
            else:
                if b:
                    row[_RHS(0)] = b
                nrhs = max(nrhs, 1)
        aug_rows.append(row)
    if rhs and not nrhs:
        nrhs = 1
    piv = _rref(aug_rows)
    for k in piv:
        if isinstance(k, _RHS):
            raise Inconsistent("linear system is inconsistent")
    if unknowns is None:
        keyset = set()
        for r in rows:
            keyset.update(r)
        unknowns = sorted(keyset)
    free = [u for u in unknowns if u not in piv]
    sols = []
    for j in range(nrhs):
        rk = _RHS(j)
        sols.append({k: row[rk] for k, row in piv.items() if row.get(rk)})
    null = []
    for f in free:
        v = {f: 1}
        for k, row in piv.items():
            c = row.get(f)
            if c:
                v[k] = -c
        null.append(v)
    return sols, null


def nullspace(rows: Sequence[Vec], unknowns: Sequence[Hashable]) -> list[Vec]:
    return solve_system(rows, (), unknowns)[1]


def solve_unique(rows: Sequence[Vec], rhs: Sequence, unknowns: Sequence[Hashable]) -> list[Vec]:
    sols, null = solve_system(rows, rhs, unknowns)
    if null:
        raise Singular(f"solution not unique (nullity {len(null)})")
    return sols


def inverse(cols: Sequence[Vec], n: int | None = None) -> list[Vec]:
    """Inverse of a square matrix given by columns."""
    n = len(cols) if n is None else n
    rows = transpose(cols, n)
    # solve M X = I: rhs j is e_j
    rhs = [{i: 1} for i in range(n)]
    try:
        sols, null = solve_system(rows, rhs, list(range(n)))
    except Inconsistent:
        raise Singular("matrix is singular") from None
    if null:
        raise Singular("matrix is singular")
    return [sols[j] for j in range(n)]


def kernel_of_columns(cols: Sequence[Vec], ncols: int) -> list[Vec]:
    """Basis of {x : sum_j x_j cols[j] = 0}."""
    rows = transpose(cols)
    return nullspace(rows, list(range(ncols)))
