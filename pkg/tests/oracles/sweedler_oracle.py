"""Dense sympy oracle for the Sweedler algebra, independent of the pqg package.

Basis u, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx, Delta(g) = g(x)g, Delta(x) = 1(x)x + x(x)g.
Each structure map is obtained by solving its defining linear system from scratch.
Run as a script to refresh tests/data/sweedler_oracle.json.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import sympy as sp

LABELS = ["u", "g", "x", "gx"]
N = 4
OUT = Path(__file__).resolve().parents[1] / "data" / "sweedler_oracle.json"


def _index(a: int, b: int) -> int:
    # normal form g^a x^b
    return {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}[(a, b)]


NORMAL = [(0, 0), (1, 0), (0, 1), (1, 1)]


def _mul_words(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, tuple[int, int]] | None:
    """(g^a x^b)(g^c x^d) = (-1)^(b c) g^(a+c) x^(b+d)."""
    (a, b), (c, d) = p, q
    if b + d > 1:
        return None
    return (-1) ** (b * c), ((a + c) % 2, b + d)


def mult_tensor() -> list[list[sp.Matrix]]:
    M = [[sp.zeros(N, 1) for _ in range(N)] for _ in range(N)]
    for i, p in enumerate(NORMAL):
        for j, q in enumerate(NORMAL):
            r = _mul_words(p, q)
            if r is not None:
                M[i][j][_index(*r[1])] += r[0]
    return M


MT = mult_tensor()


def mul(v: sp.Matrix, w: sp.Matrix) -> sp.Matrix:
    out = sp.zeros(N, 1)
    for i in range(N):
        for j in range(N):
            if v[i] != 0 and w[j] != 0:
                out += v[i] * w[j] * MT[i][j]
    return out


def e(i: int) -> sp.Matrix:
    v = sp.zeros(N, 1)
    v[i] = 1
    return v


def coproduct() -> list[sp.Matrix]:
    """Delta(e_i) as an N x N matrix of coefficients of e_j (x) e_k; multiplicative extension."""
    one, g, x = sp.zeros(N, N), sp.zeros(N, N), sp.zeros(N, N)
    one[0, 0] = 1
    g[1, 1] = 1
    x[0, 2] = 1
    x[2, 1] = 1

    def tmul(P: sp.Matrix, Q: sp.Matrix) -> sp.Matrix:
        R = sp.zeros(N, N)
        for a in range(N):
            for b in range(N):
                if P[a, b] == 0:
                    continue
                for c in range(N):
                    for d in range(N):
                        if Q[c, d] == 0:
                            continue
                        left, right = mul(e(a), e(c)), mul(e(b), e(d))
                        R += P[a, b] * Q[c, d] * left * right.T
        return R

    return [one, g, x, tmul(g, x)]


DELTA = coproduct()


def _solve(eqs, unknowns):
    sol = sp.solve(eqs, unknowns, dict=True)
    assert len(sol) == 1, sol
    return sol[0]


def counit() -> sp.Matrix:
    eps = sp.Matrix(sp.symbols("e0:4"))
    eqs = []
    for i in range(N):
        D = DELTA[i]
        eqs += list(D * eps - e(i)) + list(D.T * eps - e(i))
    s = _solve(eqs, list(eps))
    return eps.subs(s)


EPS = counit()


def antipode() -> sp.Matrix:
    syms = sp.symbols("s0:16")
    S = sp.Matrix(N, N, syms)
    eqs = []
    for i in range(N):
        D = DELTA[i]
        left, right = sp.zeros(N, 1), sp.zeros(N, 1)
        for a in range(N):
            for b in range(N):
                if D[a, b] != 0:
                    left += D[a, b] * mul(S[:, a], e(b))
                    right += D[a, b] * mul(e(a), S[:, b])
        eqs += list(left - EPS[i] * e(0)) + list(right - EPS[i] * e(0))
    s = _solve(eqs, list(syms))
    return S.subs(s)


S = antipode()


def left_integral() -> sp.Matrix:
    """phi with (id (x) phi) Delta(a) = phi(a) 1, normalized so its first nonzero entry is 1."""
    ph = sp.Matrix(sp.symbols("p0:4"))
    eqs = []
    for i in range(N):
        eqs += list(DELTA[i] * ph - ph[i] * e(0))
    space = sp.Matrix(sp.linsolve(eqs, list(ph)).args[0])
    free = sorted(space.free_symbols, key=str)
    assert len(free) == 1
    v = space.subs(free[0], 1)
    lead = next(c for c in v if c != 0)
    return v / lead


PHI = left_integral()


def modular_automorphism() -> sp.Matrix:
    """phi(a b) = phi(b sigma(a)) for all basis a, b."""
    syms = sp.symbols("t0:16")
    Sg = sp.Matrix(N, N, syms)
    eqs = []
    for a in range(N):
        for b in range(N):
            eqs.append((PHI.T * mul(e(a), e(b)))[0] - (PHI.T * mul(e(b), Sg[:, a]))[0])
    s = _solve(eqs, list(syms))
    return Sg.subs(s)


SIGMA = modular_automorphism()


def modular_element() -> sp.Matrix:
    """phi(S a) = phi(a delta) for all basis a."""
    d = sp.Matrix(sp.symbols("d0:4"))
    eqs = [(PHI.T * S[:, a])[0] - (PHI.T * mul(e(a), d))[0] for a in range(N)]
    s = _solve(eqs, list(d))
    return d.subs(s)


DELTA_PHI = modular_element()


def scaling_constant() -> sp.Expr:
    """One object, so nu is a scalar c with phi o S^2 = c phi."""
    c = sp.Symbol("c")
    S2 = S * S
    eqs = [(PHI.T * S2[:, a])[0] - c * PHI[a] for a in range(N)]
    s = _solve(eqs, [c])
    return s[c]


NU = scaling_constant()


def _vec(v) -> dict[str, str]:
    return {LABELS[i]: str(v[i]) for i in range(N) if v[i] != 0}


def _mat(M: sp.Matrix) -> dict[str, dict[str, str]]:
    return {LABELS[j]: _vec(M[:, j]) for j in range(N)}


def compute() -> dict:
    return {
        "labels": LABELS,
        "counit": [str(c) for c in EPS],
        "antipode": _mat(S),
        "antipode_squared": _mat(S * S),
        "phi": [str(c) for c in PHI],
        "sigma": _mat(SIGMA),
        "delta": _vec(DELTA_PHI),
        "delta_squared": _vec(mul(DELTA_PHI, DELTA_PHI)),
        "nu": str(NU),
    }


if __name__ == "__main__":
    data = compute()
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if "--check" in sys.argv:
        sys.exit(0 if OUT.read_text() == text else 1)
    OUT.write_text(text)
    print(text)
