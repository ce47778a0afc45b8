"""Generators for the fixture corpus, including deliberately broken instances."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PartialAlgebra, Vec
from .hopf import QuantumGroupoid


class InvalidGroupTable(ValueError):
    pass


class ObjectClash(ValueError):
    pass


@dataclass
class GroupoidPresentation:
    """A finite groupoid: arrows[i] = (label, source, target), compose[(g, h)] = g o h."""

    objects: list[str]
    arrows: list[tuple[str, int, int]]
    compose: dict[tuple[int, int], int]

    def __post_init__(self):
        n = len(self.arrows)
        src = [a[1] for a in self.arrows]
        tgt = [a[2] for a in self.arrows]
        for g in range(n):
            for h in range(n):
                defined = (g, h) in self.compose
                if defined != (src[g] == tgt[h]):
                    raise ValueError(f"composition domain wrong at {(g, h)}")
                if defined:
                    k = self.compose[(g, h)]
                    if src[k] != src[h] or tgt[k] != tgt[g]:
                        raise ValueError("composite has wrong endpoints")
        for g, h, k in itertools.product(range(n), repeat=3):
            if (g, h) in self.compose and (h, k) in self.compose:
                if self.compose[(self.compose[(g, h)], k)] != self.compose[(g, self.compose[(h, k)])]:
                    raise ValueError("composition is not associative")
        for o in range(len(self.objects)):
            self.identity(o)
        for g in range(n):
            self.inverse(g)

    def source(self, g: int) -> int:
        return self.arrows[g][1]

    def target(self, g: int) -> int:
        return self.arrows[g][2]

    def identity(self, o: int) -> int:
        for g in range(len(self.arrows)):
            if self.source(g) == o and self.target(g) == o:
                if all(
                    self.compose[(g, h)] == h for h in range(len(self.arrows)) if self.target(h) == o
                ) and all(self.compose[(h, g)] == h for h in range(len(self.arrows)) if self.source(h) == o):
                    return g
        raise ValueError(f"object {self.objects[o]} has no identity")

    def inverse(self, g: int) -> int:
        for h in range(len(self.arrows)):
            if (g, h) in self.compose and self.compose[(g, h)] == self.identity(self.target(g)):
                if self.compose.get((h, g)) == self.identity(self.source(g)):
                    return h
        raise ValueError(f"arrow {self.arrows[g][0]} has no inverse")


def pair_groupoid(objects: list[str]) -> GroupoidPresentation:
    """One arrow s -> r for each ordered pair, labelled e<r><s>."""
    n = len(objects)
    arrows = []
    idx = {}
    for r in range(n):
        for s in range(n):
            idx[(r, s)] = len(arrows)
            arrows.append((f"e{objects[r]}{objects[s]}", s, r))
    compose = {}
    for (r, s), g in idx.items():
        for (s2, t), h in idx.items():
            if s2 == s:
                compose[(g, h)] = idx[(r, t)]
    return GroupoidPresentation(list(objects), arrows, compose)


def action_groupoid(group: list[str], table: dict, objects: list[str], action: dict) -> GroupoidPresentation:
    """Arrows (g, x): x -> g.x, composed as (h, g.x) o (g, x) = (hg, x)."""
    arrows = []
    idx = {}
    for g in group:
        for x in range(len(objects)):
            y = action[(g, x)]
            idx[(g, x)] = len(arrows)
            arrows.append((f"e{g}_{objects[x]}", x, y))
    compose = {}
    for (h, y), a in idx.items():
        for (g, x), b in idx.items():
            if action[(g, x)] == y:
                compose[(a, b)] = idx[(table[(h, g)], x)]
    return GroupoidPresentation(list(objects), arrows, compose)


def group_as_groupoid(elements: list[str], table: dict, obj: str = "o") -> GroupoidPresentation:
    arrows = [(f"d{g}", 0, 0) for g in elements]
    pos = {g: i for i, g in enumerate(elements)}
    compose = {(pos[g], pos[h]): pos[table[(g, h)]] for g in elements for h in elements}
    return GroupoidPresentation([obj], arrows, compose)


def cyclic_group(n: int) -> tuple[list[str], dict]:
    names = ["1"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)]
    table = {(names[a], names[b]): names[(a + b) % n] for a in range(n) for b in range(n)}
    return names, table


def symmetric_group_3() -> tuple[list[str], dict]:
    perms = sorted(itertools.permutations(range(3)))
    names = ["1", "a", "b", "c", "r", "rr"]
    # order: identity, the three transpositions, the two 3-cycles
    ident = (0, 1, 2)
    trans = [p for p in perms if sum(p[i] != i for i in range(3)) == 2]
    cyc = [(1, 2, 0), (2, 0, 1)]
    order = [ident] + trans + cyc
    name = dict(zip(order, names))
    table = {}
    for p in order:
        for q in order:
            pq = tuple(p[q[i]] for i in range(3))
            table[(name[p], name[q])] = name[pq]
    return names, table


def _check_group(elements: list[str], table: dict) -> str:
    for g in elements:
        for h in elements:
            if table.get((g, h)) not in elements:
                raise InvalidGroupTable(f"product {g}*{h} missing or outside the group")
    units = [e for e in elements if all(table[(e, g)] == g and table[(g, e)] == g for g in elements)]
    if len(units) != 1:
        raise InvalidGroupTable("no identity element")
    e = units[0]
    for g, h, k in itertools.product(elements, repeat=3):
        if table[(table[(g, h)], k)] != table[(g, table[(h, k)])]:
            raise InvalidGroupTable("table is not associative")
    for g in elements:
        if not any(table[(g, h)] == e for h in elements):
            raise InvalidGroupTable(f"{g} has no inverse")
    return e


def _label(prefix: str, name: str) -> str:
    return name if name[0].isalpha() else prefix + name


def gen_group_algebra(elements: list[str], table: dict, conductor: int = 1, obj: str = "*", name: str = "") -> QuantumGroupoid:
    e = _check_group(elements, table)
    pos = {g: i for i, g in enumerate(elements)}
    labels = [_label("g", g) if g != e else "e" for g in elements]
    n = len(elements)
    mult = {(pos[g], pos[h]): {pos[table[(g, h)]]: 1} for g in elements for h in elements}
    inv = {g: next(h for h in elements if table[(g, h)] == e) for g in elements}
    star = [{pos[inv[g]]: 1} for g in elements]
    A = PartialAlgebra([obj], labels, [(0, 0, 0, 0)] * n, mult, conductor, star)
    delta = [{(i, i): 1} for i in range(n)]
    return QuantumGroupoid(A, delta, name=name or f"group algebra of order {n}")


def gen_fun_groupoid(G: GroupoidPresentation, conductor: int = 1, name: str = "") -> QuantumGroupoid:
    n = len(G.arrows)
    labels = [a[0] for a in G.arrows]
    grade = [(G.target(g), G.target(g), G.source(g), G.source(g)) for g in range(n)]
    mult = {(g, g): {g: 1} for g in range(n)}
    delta = []
    for g in range(n):
        d = {}
        for (h, k), c in G.compose.items():
            if c == g:
                d[(h, k)] = 1
        delta.append(d)
    star = [{g: 1} for g in range(n)]
    A = PartialAlgebra(list(G.objects), labels, grade, mult, conductor, star)
    return QuantumGroupoid(A, delta, name=name or "function algebra of a groupoid")


def gen_sweedler() -> QuantumGroupoid:
    labels = ["u", "g", "x", "gx"]
    U, G, X, GX = range(4)
    mult = {
        (U, U): {U: 1}, (U, G): {G: 1}, (U, X): {X: 1}, (U, GX): {GX: 1},
        (G, U): {G: 1}, (G, G): {U: 1}, (G, X): {GX: 1}, (G, GX): {X: 1},
        (X, U): {X: 1}, (X, G): {GX: -1},
        (GX, U): {GX: 1}, (GX, G): {X: -1},
    }
    delta = [
        {(U, U): 1},
        {(G, G): 1},
        {(U, X): 1, (X, G): 1},
        {(G, GX): 1, (GX, U): 1},
    ]
    A = PartialAlgebra(["*"], labels, [(0, 0, 0, 0)] * 4, mult, 1, None)
    return QuantumGroupoid(A, delta, name="SW")


def gen_direct_sum(a: QuantumGroupoid, b: QuantumGroupoid, prefixes: tuple[str, str] = ("", ""), name: str = "") -> QuantumGroupoid:
    A, B = a.algebra, b.algebra
    if B.dim == 0:
        return a
    if A.dim == 0:
        return b
    if set(A.objects) & set(B.objects):
        raise ObjectClash(f"shared objects {sorted(set(A.objects) & set(B.objects))}")
    if A.conductor != B.conductor:
        raise ValueError("direct summands must share a conductor")
    pa, pb = prefixes
    labels = [pa + x for x in A.basis] + [pb + x for x in B.basis]
    if len(set(labels)) != len(labels):
        raise ValueError("basis labels clash; pass distinct prefixes")
    off, oo = A.dim, A.nobj
    grade = list(A.grade) + [tuple(x + oo for x in q) for q in B.grade]
    mult = dict(A.mult)
    for (i, j), v in B.mult.items():
        mult[(i + off, j + off)] = {k + off: c for k, c in v.items()}
    star = None
    if A.star is not None and B.star is not None:
        star = [dict(v) for v in A.star] + [{k + off: c for k, c in v.items()} for v in B.star]
    S = PartialAlgebra(A.objects + B.objects, labels, grade, mult, A.conductor, star)
    delta = [dict(d) for d in a.delta] + [{(p + off, q + off): c for (p, q), c in d.items()} for d in b.delta]
    return QuantumGroupoid(S, delta, name=name or f"{a.name} + {b.name}")


def upper_triangular(n: int = 4) -> QuantumGroupoid:
    objs = [str(k) for k in range(1, n + 1)]
    pairs = [(r, s) for r in range(n) for s in range(n) if r < s]
    idx = {p: i for i, p in enumerate(pairs)}
    labels = [f"e{objs[r]}{objs[s]}" for r, s in pairs]
    grade = [(r, s, r, s) for r, s in pairs]
    mult = {}
    for (r, s), i in idx.items():
        for (s2, t), j in idx.items():
            if s2 == s:
                mult[(i, j)] = {idx[(r, t)]: 1}
    A = PartialAlgebra(objs, labels, grade, mult, 1, None)
    return QuantumGroupoid(A, None, name=f"upper_triangular({n})")


def broken_counit() -> QuantumGroupoid:
    """P2 tensored with functions on the left-zero semigroup {a, b} (x.y = x).

    The coproduct is a coassociative unital morphism but has no counit.
    """
    p2 = P2()
    A = p2.algebra
    sg = ["a", "b"]
    labels = [f"{x}.{z}" for x in A.basis for z in sg]
    pos = {(i, z): 2 * i + z for i in range(A.dim) for z in range(2)}
    grade = [A.grade[i] for i in range(A.dim) for _ in sg]
    mult = {}
    for (i, j), v in A.mult.items():
        for z in range(2):
            mult[(pos[(i, z)], pos[(j, z)])] = {pos[(k, z)]: c for k, c in v.items()}
    delta = []
    for i in range(A.dim):
        for z in range(2):
            d = {}
            for (p, q), c in p2.delta[i].items():
                for w in range(2):
                    d[(pos[(p, z)], pos[(q, w)])] = c
            delta.append(d)
    star = [{pos[(i, z)]: 1} for i in range(A.dim) for z in range(2)]
    B = PartialAlgebra(list(A.objects), labels, grade, mult, 1, star)
    return QuantumGroupoid(B, delta, name="broken_counit")


def broken_canmap() -> QuantumGroupoid:
    """P2 with the block of the arrow 2 -> 1 removed: a category, not a groupoid."""
    objs = ["1", "2"]
    arrows = [("e11", 0, 0), ("e21", 0, 1), ("e22", 1, 1)]
    n = len(arrows)
    grade = [(t, t, s, s) for _, s, t in arrows]
    mult = {(g, g): {g: 1} for g in range(n)}
    comp = {(0, 0): 0, (2, 2): 2, (1, 0): 1, (2, 1): 1}
    delta = []
    for g in range(n):
        delta.append({hk: 1 for hk, c in comp.items() if c == g})
    star = [{g: 1} for g in range(n)]
    A = PartialAlgebra(objs, [a[0] for a in arrows], grade, mult, 1, star)
    return QuantumGroupoid(A, delta, name="broken_canmap")


# -- named fixtures -----------------------------------------------------------------

def Z2() -> QuantumGroupoid:
    names, table = cyclic_group(2)
    return gen_group_algebra(names, table, name="Z2")


def Z3() -> QuantumGroupoid:
    names, table = cyclic_group(3)
    return gen_group_algebra(names, table, conductor=3, name="Z3")


def S3() -> QuantumGroupoid:
    names, table = symmetric_group_3()
    return gen_group_algebra(names, table, name="S3")


def FunZ2() -> QuantumGroupoid:
    names, table = cyclic_group(2)
    return gen_fun_groupoid(group_as_groupoid(names, table), name="FunZ2")


def FunZ3() -> QuantumGroupoid:
    names, table = cyclic_group(3)
    return gen_fun_groupoid(group_as_groupoid(names, table), name="FunZ3")


def FunS3() -> QuantumGroupoid:
    names, table = symmetric_group_3()
    return gen_fun_groupoid(group_as_groupoid(names, table), name="FunS3")


def P2() -> QuantumGroupoid:
    return gen_fun_groupoid(pair_groupoid(["1", "2"]), name="P2")


def AG() -> QuantumGroupoid:
    group = ["1", "s"]
    table = {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"}
    action = {("1", 0): 0, ("1", 1): 1, ("1", 2): 2, ("s", 0): 1, ("s", 1): 0, ("s", 2): 2}
    return gen_fun_groupoid(action_groupoid(group, table, ["1", "2", "3"], action), name="AG")


def SW() -> QuantumGroupoid:
    return gen_sweedler()


def Z2plusZ2() -> QuantumGroupoid:
    names, table = cyclic_group(2)
    a = gen_group_algebra(names, table, obj="a", name="Z2")
    b = gen_group_algebra(names, table, obj="b", name="Z2")
    return gen_direct_sum(a, b, ("a.", "b."), name="Z2+Z2")


def P2plusFunZ3() -> QuantumGroupoid:
    names, table = cyclic_group(3)
    f = gen_fun_groupoid(group_as_groupoid(names, table, obj="o"), name="FunZ3")
    return gen_direct_sum(P2(), f, name="P2+FunZ3")


FIXTURES = {
    "Z2": Z2,
    "Z3": Z3,
    "S3": S3,
    "FunZ2": FunZ2,
    "FunZ3": FunZ3,
    "FunS3": FunS3,
    "P2": P2,
    "AG": AG,
    "SW": SW,
    "Z2+Z2": Z2plusZ2,
    "P2+FunZ3": P2plusFunZ3,
}

NEGATIVES = {
    "upper_triangular4": lambda: upper_triangular(4),
    "broken_counit": broken_counit,
    "broken_canmap": broken_canmap,
}

# what each negative fixture is advertised to break: (stage, check)
NEGATIVE_EXPECTATIONS = {
    "upper_triangular4": ("grading", "nondegenerate_partial"),
    "broken_counit": ("hopf", "counit"),
    "broken_canmap": ("hopf", "canonical_maps"),
}

# fixtures built on a groupoid (function algebras); compact type with trivial modular data
GROUPOID_FIXTURES = ["FunZ2", "FunZ3", "FunS3", "P2", "AG"]
STAR_FIXTURES = ["Z2", "Z3", "S3", "FunZ2", "FunZ3", "FunS3", "P2", "AG", "Z2+Z2", "P2+FunZ3"]


def get(name: str) -> QuantumGroupoid:
    if name in FIXTURES:
        return FIXTURES[name]()
    if name in NEGATIVES:
        return NEGATIVES[name]()
    if name in STAR_VARIANTS:
        return STAR_VARIANTS[name]()
    raise KeyError(f"unknown fixture {name!r}")


def names() -> list[str]:
    return list(FIXTURES) + list(NEGATIVES) + list(STAR_VARIANTS)


def perturb(qg: QuantumGroupoid, rng, which: str | None = None) -> QuantumGroupoid:
    """Add a random nonzero rational to one entry of the product or coproduct table."""
    A = qg.algebra
    n = A.dim
    which = which or rng.choice(["mult", "delta"])
    c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
    mult = {k: dict(v) for k, v in A.mult.items()}
    delta = [dict(d) for d in qg.delta]
    if which == "mult":
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        row = mult.setdefault((i, j), {})
        row[k] = row.get(k, 0) + c
        if not row[k]:
            del row[k]
    else:
        i, p, q = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        d = delta[i]
        d[(p, q)] = d.get((p, q), 0) + c
        if not d[(p, q)]:
            del d[(p, q)]
    B = PartialAlgebra(list(A.objects), list(A.basis), list(A.grade), mult, A.conductor,
                       None if A.star is None else [dict(v) for v in A.star])
    return QuantumGroupoid(B, delta, name=f"{qg.name} (perturbed {which})")


# -- star variants ------------------------------------------------------------------

def with_star(qg: QuantumGroupoid, star: list[Vec] | None, name: str = "") -> QuantumGroupoid:
    A = qg.algebra
    B = PartialAlgebra(list(A.objects), list(A.basis), list(A.grade), A.mult, A.conductor, star)
    return QuantumGroupoid(B, [dict(d) for d in qg.delta], name=name or qg.name)


def sweedler_naive_star() -> QuantumGroupoid:
    """g* = g, x* = x extended anti-multiplicatively, so (gx)* = xg = -gx."""
    return with_star(SW(), [{0: 1}, {1: 1}, {2: 1}, {3: -1}], name="SW (naive star)")


def z2_sign_star() -> QuantumGroupoid:
    """g* = -g on the group algebra of Z/2."""
    return with_star(Z2(), [{0: 1}, {1: -1}], name="Z2 (g* = -g)")


STAR_VARIANTS = {
    "SW-naive-star": sweedler_naive_star,
    "Z2-sign-star": z2_sign_star,
}
