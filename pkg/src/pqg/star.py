"""Star structures: axioms, positivity of phi, and the joint eigenbasis of the structure maps.

Positive semidefiniteness is the one inexact check: the Hermitian matrix
phi(e_i* e_j) is embedded via zeta -> exp(2 pi i / n) and handed to a
symmetric eigensolver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg as la
from .algebra import PartialAlgebra, Tensor, Vec
from .hopf import HopfData, QuantumGroupoid
from .integrals import ModularData, compose_functional
from .scalars import as_fraction, conj, embed, is_rational

PSD_TOL = 1e-9
OPERATORS = ("sigma_phi", "S2", "L_delta", "R_delta")


class DiagonalizationFailed(ValueError):
    def __init__(self, operator: str, why: str = ""):
        super().__init__(f"{operator} is not diagonalizable{': ' + why if why else ''}")
        self.operator = operator


@dataclass
class StarCheckReport:
    star_axioms_ok: bool = False
    phi_selfadjoint: bool = False
    delta_selfadjoint: bool = False
    phi_positive: bool = False
    joint_eigenbasis_found: bool = False
    eigenvalues_positive: bool = False
    nu_trivial: bool = False
    psi_positive: bool = False
    eigen: list = field(default_factory=list)  # (vector, (sigma, S2, L, R))
    exact: bool = True
    failing_laws: list = field(default_factory=list)

    def flags(self) -> dict[str, bool]:
        return {
            "star_axioms_ok": self.star_axioms_ok,
            "phi_selfadjoint": self.phi_selfadjoint,
            "delta_selfadjoint": self.delta_selfadjoint,
            "phi_positive": self.phi_positive,
            "joint_eigenbasis_found": self.joint_eigenbasis_found,
            "eigenvalues_positive": self.eigenvalues_positive,
            "nu_trivial": self.nu_trivial,
            "psi_positive": self.psi_positive,
        }


# -- axioms ------------------------------------------------------------------------

def star_tensor(A: PartialAlgebra, x: Tensor) -> Tensor:
    out: Tensor = {}
    for (i, j), c in x.items():
        for a, u in A.star[i].items():
            for b, v in A.star[j].items():
                la.axpy(out, conj(c) * u * v, {(a, b): 1})
    return out


def star_laws(qg: QuantumGroupoid, S: list[Vec] | None = None, phi: Vec | None = None, delta: Vec | None = None) -> dict[str, bool]:
    """Each star law as a flag; the antipode, phi and delta laws need their data."""
    A = qg.algebra
    n = A.dim
    st = A.apply_star
    out = {
        "involutive": all(st(A.star[i]) == {i: 1} for i in range(n)),
        "anti_multiplicative": all(
            st(A.product(i, j)) == A.multiply(A.star[j], A.star[i]) for i in range(n) for j in range(n)
        ),
        "grade_flip": all(
            A.grade[k] == (s, r, u, t)
            for i, (r, s, t, u) in enumerate(A.grade)
            for k in A.star[i]
        ),
        "unit_selfadjoint": st(A.unit) == A.unit,
    }
    if qg.delta is not None:
        out["comultiplicative"] = all(
            qg.comultiply(A.star[i]) == star_tensor(A, qg.delta[i]) for i in range(n)
        )
    if S is not None:
        out["antipode_star"] = all(st(la.apply(S, st(S[i]))) == {i: 1} for i in range(n))
    if phi is not None:
        out["phi_selfadjoint"] = all(la.dot(phi, A.star[i]) == conj(phi.get(i, 0)) for i in range(n))
    if delta is not None:
        out["delta_selfadjoint"] = st(delta) == delta
    return out


def check_star_axioms(qg: QuantumGroupoid, hd: HopfData | None = None, md: ModularData | None = None) -> tuple[bool, list[str]]:
    if qg.algebra.star is None:
        return False, ["no star"]
    laws = star_laws(
        qg,
        None if hd is None else hd.S,
        None if md is None else md.phi,
        None if md is None else md.delta,
    )
    failing = [k for k, v in laws.items() if not v]
    return not failing, failing


# -- positivity --------------------------------------------------------------------

def hermitian_form(A: PartialAlgebra, omega: Vec) -> list[list]:
    """H_ij = omega(e_i* e_j)."""
    n = A.dim
    return [[la.dot(omega, A.multiply(A.star[i], {j: 1})) for j in range(n)] for i in range(n)]


def is_hermitian(H: list[list]) -> bool:
    n = len(H)
    return all(H[j][i] == conj(H[i][j]) for i in range(n) for j in range(i, n))


def psd_spectrum(H: list[list]) -> np.ndarray:
    M = np.array([[embed(x) for x in row] for row in H], dtype=complex)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh((M + M.conj().T) / 2)


def is_psd(H: list[list], tol: float = PSD_TOL) -> tuple[bool, float]:
    ev = psd_spectrum(H)
    if ev.size == 0:
        return True, 0.0
    radius = float(np.max(np.abs(ev)))
    lo = float(np.min(ev))
    return lo >= -tol * (1 + radius), lo


def check_positivity(qg: QuantumGroupoid, omega: Vec) -> tuple[bool, dict]:
    A = qg.algebra
    H = hermitian_form(A, omega)
    herm = is_hermitian(H)
    psd, lo = is_psd(H) if herm else (False, float("nan"))
    return herm and psd, {"hermitian": herm, "psd": psd, "min_eigenvalue": lo}


# -- joint eigenbasis --------------------------------------------------------------

def dense_matrix(cols: list[Vec], n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=complex)
    for j, c in enumerate(cols):
        for i, v in c.items():
            M[i, j] = embed(v)
    return M


def rational_eigen_guesses(M: np.ndarray) -> list[Fraction]:
    out: list[Fraction] = []
    if M.size == 0:
        return out
    for z in np.linalg.eigvals(M):
        if abs(z.imag) > 1e-7:
            continue
        q = Fraction(float(z.real)).limit_denominator(10**6)
        if q not in out:
            out.append(q)
    return out


def split_eigenspaces(T: list[Vec], W: list[Vec], guesses: list[Fraction]) -> list[tuple[Fraction, list[Vec]]] | None:
    """Eigenspaces of T inside the T-invariant span W, or None if they do not fill W."""
    k = len(W)
    images = [la.apply(T, w) for w in W]
    parts = []
    total = 0
    for lam in guesses:
        cols = [la.sub(images[j], la.scale(lam, W[j])) for j in range(k)]
        ker = la.kernel_of_columns(cols, k)
        if ker:
            vecs = [la.lincomb((c, W[j]) for j, c in v.items()) for v in ker]
            parts.append((lam, vecs))
            total += len(vecs)
    return parts if total == k else None


def _grade_blocks(A: PartialAlgebra) -> list[list[Vec]]:
    blocks: dict = {}
    for i, q in enumerate(A.grade):
        blocks.setdefault(q, []).append({i: 1})
    return [blocks[q] for q in sorted(blocks)]


def exact_joint_eigenbasis(A: PartialAlgebra, ops: dict[str, list[Vec]]) -> list[tuple[Vec, tuple]]:
    n = A.dim
    spaces: list[tuple[tuple, list[Vec]]] = [((), W) for W in _grade_blocks(A)]
    for name in OPERATORS:
        T = ops[name]
        guesses = rational_eigen_guesses(dense_matrix(T, n))
        nxt = []
        for vals, W in spaces:
            parts = split_eigenspaces(T, W, guesses)
            if parts is None:
                raise DiagonalizationFailed(name, "no rational eigenspace decomposition")
            for lam, vecs in parts:
                nxt.append((vals + (lam,), vecs))
        spaces = nxt
    return [(v, vals) for vals, W in spaces for v in W]


def float_joint_eigenbasis(A: PartialAlgebra, ops: dict[str, list[Vec]], tol: float = PSD_TOL) -> list[tuple[np.ndarray, tuple]]:
    n = A.dim
    mats = {k: dense_matrix(ops[k], n) for k in OPERATORS}
    rng = np.random.default_rng(0)
    combo = sum(rng.standard_normal() * mats[k] for k in OPERATORS)
    _, V = np.linalg.eig(combo)
    if n and np.linalg.cond(V) > 1 / tol:
        raise DiagonalizationFailed("joint", "eigenvector matrix is ill-conditioned")
    out = []
    for j in range(n):
        v = V[:, j]
        vals = []
        for k in OPERATORS:
            w = mats[k] @ v
            lam = complex(np.vdot(v, w) / np.vdot(v, v))
            if np.linalg.norm(w - lam * v) > tol * (1 + np.linalg.norm(mats[k])) * np.linalg.norm(v):
                raise DiagonalizationFailed(k, "no common eigenvector")
            vals.append(lam)
        out.append((v, tuple(vals)))
    return out


def _positive(x) -> bool:
    if isinstance(x, complex):
        return abs(x.imag) <= PSD_TOL and x.real > PSD_TOL
    return is_rational(x) and as_fraction(x) > 0


def positivity_witness(qg: QuantumGroupoid, md: ModularData, a: int, b: Vec) -> tuple[bool, float]:
    """(phi x phi)((1 x b*) D(a*a) (1 x b)) against sum_s phi(a*a 1_s) phi(b* delta 1_s b)."""
    A = qg.algebra
    phi, delta = md.phi, md.delta
    x = A.multiply(A.star[a], {a: 1})
    bs = A.apply_star(b)
    lhs = 0
    for (i, j), c in qg.comultiply(x).items():
        w = phi.get(i)
        if w:
            lhs = lhs + c * w * la.dot(phi, A.multiply(A.multiply(bs, {j: 1}), b))
    rhs = 0
    for s in range(A.nobj):
        one = A.one_lower(s)
        w = la.dot(phi, A.multiply(x, one))
        if w:
            rhs = rhs + w * la.dot(phi, A.multiply(A.multiply(A.multiply(bs, delta), one), b))
    val = embed(lhs)
    return lhs == rhs and val.real >= -PSD_TOL and abs(val.imag) <= PSD_TOL, val.real


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12g}"
    return str(as_fraction(x)) if is_rational(x) else str(x)


def diagonalize_structure_maps(qg: QuantumGroupoid, hd: HopfData, md: ModularData) -> StarCheckReport:
    A = qg.algebra
    rep = StarCheckReport()
    ok, failing = check_star_axioms(qg, hd, md)
    laws = star_laws(qg, hd.S, md.phi, md.delta)
    rep.star_axioms_ok = ok
    rep.failing_laws = failing
    rep.phi_selfadjoint = laws["phi_selfadjoint"]
    rep.delta_selfadjoint = laws["delta_selfadjoint"]
    if not ok:
        return rep
    rep.phi_positive = check_positivity(qg, md.phi)[0]
    if not rep.phi_positive:
        return rep
    ops = {
        "sigma_phi": md.sigma_phi,
        "S2": md.S2,
        "L_delta": A.left_mult_matrix(md.delta),
        "R_delta": A.right_mult_matrix(md.delta),
    }
    try:
        rep.eigen = exact_joint_eigenbasis(A, ops)
    except DiagonalizationFailed:
        rep.exact = False
        rep.eigen = float_joint_eigenbasis(A, ops)
    rep.joint_eigenbasis_found = len(rep.eigen) == A.dim
    rep.eigenvalues_positive = all(_positive(x) for _, vals in rep.eigen for x in vals)
    rep.nu_trivial = all(c == 1 for c in md.nu_fun.values())
    psi = compose_functional(md.phi, hd.S)
    rep.psi_positive = check_positivity(qg, psi)[0]
    return rep


def run_star(qg: QuantumGroupoid, hd: HopfData, md: ModularData) -> dict:
    A = qg.algebra
    if A.star is None:
        return {"status": "absent"}
    rep = diagonalize_structure_maps(qg, hd, md)
    out: dict = {"checks": rep.flags(), "failing_laws": rep.failing_laws}
    if rep.phi_positive:
        psi_S = compose_functional(md.phi, hd.S)
        psi_Sinv = compose_functional(md.phi, hd.Sinv)
        extra = {"psi_equals_phi_S_inverse": psi_S == psi_Sinv}
        exact_vecs = [v for v, _ in rep.eigen] if rep.exact else []
        wit = all(positivity_witness(qg, md, a, b)[0] for b in exact_vecs for a in range(A.dim))
        extra["eigenvalue_witness"] = wit
        out["checks"]["consequences"] = extra
        out["eigen_exact"] = rep.exact
        out["eigenvalues"] = [
            {"vector": A.format_element(v) if isinstance(v, dict) else None,
             **{k: _fmt(x) for k, x in zip(OPERATORS, vals)}}
            for v, vals in rep.eigen
        ]
    else:
        # not a *-algebraic quantum groupoid: positivity consequences do not apply
        for k in ("joint_eigenbasis_found", "eigenvalues_positive", "nu_trivial", "psi_positive"):
            out["checks"].pop(k)
    return out
