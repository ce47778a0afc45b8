"""Invariant functionals and modular data: sigma, delta, nu and their identities."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .algebra import GradedFunctional, PartialAlgebra, Tensor, Vec, tensor
from .hopf import HopfData, QuantumGroupoid, class_of, tensor_map
from .scalars import div, inv


class NoFaithfulIntegral(ValueError):
    pass


class KernelShapeViolation(ValueError):
    pass


class NotProportional(ValueError):
    pass


class GramSingular(ValueError):
    pass


class NoModularElement(ValueError):
    pass


def _diag_support(A: PartialAlgebra) -> list[int]:
    return A.indices(lambda q: q[0] == q[1] and q[2] == q[3])


def left_invariance_rows(qg: QuantumGroupoid, unknowns: list[int]) -> list[Vec]:
    """(id (x) phi) Delta(a) = phi(a) 1^r for a in row r, as linear equations in phi."""
    A = qg.algebra
    allowed = set(unknowns)
    rows = []
    for a in range(A.dim):
        eq: dict[int, Vec] = {}
        for (i, j), c in qg.delta[a].items():
            if j in allowed:
                la.axpy(eq.setdefault(i, {}), c, {j: 1})
        if a in allowed:
            for m, v in A.one_upper(A.grade[a][0]).items():
                la.axpy(eq.setdefault(m, {}), -v, {a: 1})
        rows.extend(r for r in eq.values() if r)
    return rows


def right_invariance_rows(qg: QuantumGroupoid, unknowns: list[int]) -> list[Vec]:
    """(psi (x) id) Delta(a) = psi(a) 1_s for a in column-row s."""
    A = qg.algebra
    allowed = set(unknowns)
    rows = []
    for a in range(A.dim):
        eq: dict[int, Vec] = {}
        for (i, j), c in qg.delta[a].items():
            if i in allowed:
                la.axpy(eq.setdefault(j, {}), c, {i: 1})
        if a in allowed:
            for m, v in A.one_lower(A.grade[a][2]).items():
                la.axpy(eq.setdefault(m, {}), -v, {a: 1})
        rows.extend(r for r in eq.values() if r)
    return rows


def is_left_invariant(qg: QuantumGroupoid, phi: Vec) -> bool:
    A = qg.algebra
    sup = set(_diag_support(A))
    if any(k not in sup for k in phi):
        return False
    for a in range(A.dim):
        lhs: Vec = {}
        for (i, j), c in qg.delta[a].items():
            w = phi.get(j)
            if w:
                la.axpy(lhs, c * w, {i: 1})
        if lhs != la.scale(phi.get(a, 0), A.one_upper(A.grade[a][0])):
            return False
    return True


def is_right_invariant(qg: QuantumGroupoid, psi: Vec) -> bool:
    A = qg.algebra
    sup = set(_diag_support(A))
    if any(k not in sup for k in psi):
        return False
    for a in range(A.dim):
        lhs: Vec = {}
        for (i, j), c in qg.delta[a].items():
            w = psi.get(i)
            if w:
                la.axpy(lhs, c * w, {j: 1})
        if lhs != la.scale(psi.get(a, 0), A.one_lower(A.grade[a][2])):
            return False
    return True


def left_invariant_space(qg: QuantumGroupoid) -> list[Vec]:
    unknowns = _diag_support(qg.algebra)
    return la.nullspace(left_invariance_rows(qg, unknowns), unknowns)


def right_invariant_space(qg: QuantumGroupoid) -> list[Vec]:
    unknowns = _diag_support(qg.algebra)
    return la.nullspace(right_invariance_rows(qg, unknowns), unknowns)


def restrict_column(A: PartialAlgebra, phi: Vec, s: int) -> Vec:
    """phi(- 1_s)."""
    return {k: v for k, v in phi.items() if A.grade[k][3] == s}


def normalize_column(A: PartialAlgebra, phi_s: Vec, s: int) -> tuple[Vec, str]:
    unit = A.base_unit(s, s)
    val = la.dot(phi_s, unit)
    if val:
        return la.scale(inv(val), phi_s), "unit"
    first = min(phi_s)
    return la.scale(inv(phi_s[first]), phi_s), "first-coordinate"


def solve_left_invariant(qg: QuantumGroupoid) -> tuple[Vec, dict]:
    """A faithful left invariant functional assembled column by column."""
    A = qg.algebra
    space = left_invariant_space(qg)
    phi: Vec = {}
    modes = {}
    for s in range(A.nobj):
        col = next((restrict_column(A, v, s) for v in space if restrict_column(A, v, s)), None)
        if col is None:
            raise NoFaithfulIntegral(f"no left invariant functional lives on column {A.objects[s]}")
        col, mode = normalize_column(A, col, s)
        modes[A.objects[s]] = mode
        phi.update(col)
    return phi, {"dimension": len(space), "normalization": modes}


def solve_right_invariant(qg: QuantumGroupoid, phi: Vec, S: list[Vec]) -> tuple[Vec, dict]:
    psi = compose_functional(phi, S)
    space = right_invariant_space(qg)
    return psi, {"dimension": len(space), "phi_S_right_invariant": is_right_invariant(qg, psi)}


def compose_functional(omega: Vec, f: list[Vec]) -> Vec:
    """omega o f."""
    out = {}
    for i, col in enumerate(f):
        v = la.dot(omega, col)
        if v:
            out[i] = v
    return out


def gram(A: PartialAlgebra, omega: Vec) -> list[Vec]:
    """Rows of G_ij = omega(e_i e_j)."""
    rows = []
    for i in range(A.dim):
        row = {}
        for j in range(A.dim):
            v = la.dot(omega, A.product(i, j))
            if v:
                row[j] = v
        rows.append(row)
    return rows


def support_indices(qg: QuantumGroupoid, omega: Vec) -> tuple[list[int], dict]:
    """I_omega and exact comparison of the kernels with the predicted shape."""
    A = qg.algebra
    I_w = [s for s in range(A.nobj) if restrict_column(A, omega, s)]
    G = gram(A, omega)
    # Ker_r = {a : omega(b a) = 0 for all b}; Ker_l = {a : omega(a b) = 0 for all b}
    ker_r = la.nullspace(G, list(range(A.dim)))
    ker_l = la.nullspace(la.transpose([dict(r) for r in G], A.dim), list(range(A.dim)))
    outside = [s for s in range(A.nobj) if s not in I_w]
    pred_r = [{i: 1} for i in range(A.dim) if A.grade[i][3] in outside]
    pred_l = [{i: 1} for i in range(A.dim) if A.grade[i][2] in outside]
    return I_w, {
        "right_kernel_shape": la.same_span(ker_r, pred_r),
        "left_kernel_shape": la.same_span(ker_l, pred_l),
    }


def compare_invariant_functionals(qg: QuantumGroupoid, phi: Vec, other: Vec) -> dict[int, object]:
    """The f in Fun(I) with other = phi(- sum_s f(s) 1_s)."""
    A = qg.algebra
    f = {}
    for s in range(A.nobj):
        col = [i for i in range(A.dim) if A.grade[i][3] == s]
        ref = next((i for i in col if phi.get(i)), None)
        if ref is None:
            raise NotProportional(f"reference functional vanishes on column {A.objects[s]}")
        ratio = div(other.get(ref, 0), phi[ref])
        for i in col:
            if other.get(i, 0) != ratio * phi.get(i, 0):
                raise NotProportional(f"not proportional on column {A.objects[s]}")
        f[s] = ratio
    return f


def fun_to_element(A: PartialAlgebra, f: dict[int, object], side: str = "lower") -> Vec:
    units = A.one_lower if side == "lower" else A.one_upper
    return la.lincomb((c, units(s)) for s, c in f.items())


def solve_modular_automorphism(A: PartialAlgebra, omega: Vec) -> tuple[list[Vec], list[Vec]]:
    """sigma with omega(ab) = omega(b sigma(a)); returns (sigma, Gram inverse columns)."""
    G = gram(A, omega)
    cols = la.transpose(G, A.dim)  # column j of G
    try:
        Ginv = la.inverse(cols, A.dim)
    except la.Singular:
        raise GramSingular("Gram matrix is singular") from None
    # sigma = G^{-1} G^T; column i of G^T is row i of G
    sigma = [la.apply(Ginv, G[i]) for i in range(A.dim)]
    return sigma, Ginv


def is_automorphism(A: PartialAlgebra, f: list[Vec]) -> bool:
    for i in range(A.dim):
        for j in range(A.dim):
            if la.apply(f, A.product(i, j)) != A.multiply(f[i], f[j]):
                return False
    return True


def fixes_base_units(A: PartialAlgebra, f: list[Vec]) -> bool:
    return all(
        la.apply(f, A.one_lower(s)) == A.one_lower(s) and la.apply(f, A.one_upper(s)) == A.one_upper(s)
        for s in range(A.nobj)
    )


def element_inverse(A: PartialAlgebra, x: Vec) -> Vec | None:
    L = A.left_mult_matrix(x)
    try:
        Linv = la.inverse(L, A.dim)
    except la.Singular:
        return None
    y = la.apply(Linv, A.unit)
    if A.multiply(y, x) != A.unit:
        return None
    return y


@dataclass
class ModularData:
    phi: Vec
    psi: Vec
    gram_inv: list[Vec]
    sigma_phi: list[Vec]
    sigma_psi: list[Vec]
    sigma_phiS: list[Vec]
    delta: Vec
    delta_inv: Vec
    delta_phi_psi: Vec
    mu: dict
    nu_fun: dict
    nu: Vec
    S2: list[Vec]
    S2inv: list[Vec]
    kappa: list[Vec]
    rho: list[Vec]
    I_phi: list[int]
    info: dict = field(default_factory=dict)


def _comm(f: list[Vec], g: list[Vec]) -> bool:
    return la.compose(f, g) == la.compose(g, f)


def run_integrals(qg: QuantumGroupoid, hd: HopfData, phi: Vec | None = None, psi: Vec | None = None) -> tuple[dict, ModularData | None]:
    A = qg.algebra
    n = A.dim
    S, Sinv, eps = hd.S, hd.Sinv, hd.eps
    rep: dict = {"checks": {}}
    ch = rep["checks"]
    phi = phi if phi is not None else qg.phi
    psi = psi if psi is not None else qg.psi
    space = left_invariant_space(qg)
    rep["left_invariant_dimension"] = len(space)
    rep["right_invariant_dimension"] = len(right_invariant_space(qg))
    if phi is None:
        try:
            phi, info = solve_left_invariant(qg)
        except NoFaithfulIntegral as exc:
            rep["failed_at"] = "left_invariant"
            rep["error"] = f"NoFaithfulIntegral: {exc}"
            return rep, None
        rep["normalization"] = info["normalization"]
    ch["left_invariant"] = {
        "phi_left_invariant": is_left_invariant(qg, phi),
        "dimension_at_most_objects": len(space) <= A.nobj,
    }
    if psi is None:
        psi = compose_functional(phi, S)
    ch["right_invariant"] = {"psi_right_invariant": is_right_invariant(qg, psi)}
    rep["phi"] = A.format_element(phi)
    rep["psi"] = A.format_element(psi)
    if not (all(ch["left_invariant"].values()) and all(ch["right_invariant"].values())):
        rep["failed_at"] = "invariance"
        return rep, None
    I_phi, kern = support_indices(qg, phi)
    try:
        sigma_phi, Ginv = solve_modular_automorphism(A, phi)
        gram_ok = True
    except GramSingular:
        gram_ok = False
    full = len(I_phi) == A.nobj
    ch["faithfulness"] = {
        "gram_invertible": gram_ok,
        "support_is_all_objects": full,
        "kernels_zero": kern["right_kernel_shape"] and kern["left_kernel_shape"],
        "three_routes_agree": gram_ok == full,
    }
    rep["I_phi"] = [A.objects[s] for s in I_phi]
    if not all(ch["faithfulness"].values()):
        rep["failed_at"] = "faithfulness"
        return rep, None
    try:
        sigma_psi, _ = solve_modular_automorphism(A, psi)
    except GramSingular:
        ch["faithfulness"]["psi_gram_invertible"] = False
        rep["failed_at"] = "faithfulness"
        return rep, None
    ch["modular_automorphisms"] = {
        "sigma_phi_automorphism": is_automorphism(A, sigma_phi),
        "sigma_psi_automorphism": is_automorphism(A, sigma_psi),
        "sigma_phi_fixes_base_units": fixes_base_units(A, sigma_phi),
        "sigma_psi_fixes_base_units": fixes_base_units(A, sigma_psi),
        "sigma_phi_defining_identity": all(
            la.dot(phi, A.product(i, j)) == la.dot(phi, A.multiply({j: 1}, sigma_phi[i]))
            for i in range(n) for j in range(n)
        ),
    }
    # modular element: phi(S(a)) = phi(a delta)
    phiS = compose_functional(phi, S)
    v = [phiS.get(a, 0) for a in range(n)]
    delta = la.apply(Ginv, {a: x for a, x in enumerate(v) if x})
    delta_inv = element_inverse(A, delta)
    me: dict[str, bool] = {"invertible": delta_inv is not None}
    if delta_inv is None:
        ch["modular_element"] = me
        rep["failed_at"] = "modular_element"
        rep["error"] = "NoModularElement: delta is not invertible"
        return rep, None
    me["defining_identity"] = all(
        la.dot(phi, A.multiply({a: 1}, delta)) == phiS.get(a, 0) for a in range(n)
    )
    phiSinv = compose_functional(phi, Sinv)
    me["left_identity"] = all(la.dot(phi, A.multiply(delta, {a: 1})) == phiSinv.get(a, 0) for a in range(n))
    me["commutes_with_base_units"] = all(
        A.multiply(delta, A.one_lower(s)) == A.multiply(A.one_lower(s), delta)
        and A.multiply(delta, A.one_upper(s)) == A.multiply(A.one_upper(s), delta)
        for s in range(A.nobj)
    )
    T = qg.tensor_square
    me["grouplike"] = qg.comultiply(delta) == T.sandwich(tensor(delta, delta))
    me["antipode_inverts"] = la.apply(S, delta) == delta_inv
    me["counit_trivial"] = all(
        la.dot(eps, A.multiply(delta, {a: 1})) == eps.get(a, 0)
        and la.dot(eps, A.multiply({a: 1}, delta)) == eps.get(a, 0)
        for a in range(n)
    )
    mod_el = True
    for a in range(n):
        lhs: Vec = {}
        for (i, j), c in qg.delta[a].items():
            w = phi.get(i)
            if w:
                la.axpy(lhs, c * w, {j: 1})
        rhs: Vec = {}
        for s in range(A.nobj):
            w = la.dot(phi, A.multiply({a: 1}, A.one_lower(s)))
            if w:
                la.axpy(rhs, w, A.multiply(delta, A.one_lower(s)))
        if lhs != rhs:
            mod_el = False
            break
    me["slice_formula"] = mod_el
    ch["modular_element"] = me
    # delta_{phi,psi} and mu
    w = {a: x for a, x in psi.items()}
    d2 = la.apply(Ginv, w)
    mu_ok = True
    mu: dict = {}
    x = A.multiply(d2, delta_inv)
    for r in range(A.nobj):
        up = A.one_upper(r)
        part = A.multiply(up, x)
        if not part:
            mu[r] = 0
            continue
        k = next(iter(sorted(up)))
        c = div(part.get(k, 0), up[k])
        mu[r] = c
    if fun_to_element(A, mu, "upper") != x:
        mu_ok = False
    ch["relative_modular_element"] = {
        "defining_identity": all(la.dot(phi, A.multiply({a: 1}, d2)) == psi.get(a, 0) for a in range(n)),
        "factors_through_target": mu_ok,
    }
    # scaling element
    S2 = la.compose(S, S)
    S2inv = la.compose(Sinv, Sinv)
    sc: dict[str, bool] = {}
    try:
        f = compare_invariant_functionals(qg, phi, compose_functional(phi, S2))
        sc["phi_S2_proportional"] = True
    except NotProportional:
        sc["phi_S2_proportional"] = False
        ch["scaling"] = sc
        rep["failed_at"] = "scaling"
        return rep, None
    cls = class_of(hd.partition)
    sc["constant_on_classes"] = all(f[r] == f[s] for r in range(A.nobj) for s in range(A.nobj) if cls[r] == cls[s])
    nu = fun_to_element(A, f, "lower")
    nu_inv = element_inverse(A, nu)
    sc["invertible"] = nu_inv is not None
    sc["central"] = all(A.multiply(nu, {a: 1}) == A.multiply({a: 1}, nu) for a in range(n))
    psiS2 = compose_functional(psi, S2)
    sc["psi_scaling"] = all(psiS2.get(a, 0) == la.dot(psi, A.multiply({a: 1}, nu)) for a in range(n))
    sc["sigma_delta"] = nu_inv is not None and la.apply(sigma_phi, delta) == A.multiply(delta, nu_inv)
    ch["scaling"] = sc
    # modular identities
    try:
        sigma_phiS, _ = solve_modular_automorphism(A, phiS)
    except GramSingular:
        sigma_phiS = None
    try:
        sigma_phiS_inv = la.inverse(sigma_phiS, n) if sigma_phiS is not None else None
    except la.Singular:
        sigma_phiS_inv = None
    mi: dict[str, bool] = {}
    mi["coproduct_sigma_phi"] = all(
        qg.comultiply(sigma_phi[i]) == tensor_map(S2, sigma_phi, qg.delta[i]) for i in range(n)
    )
    mi["coproduct_sigma_psi"] = all(
        qg.comultiply(sigma_psi[i]) == tensor_map(sigma_psi, S2inv, qg.delta[i]) for i in range(n)
    )
    mi["commute_S2_sigma_phi"] = _comm(S2, sigma_phi)
    mi["commute_S2_sigma_psi"] = _comm(S2, sigma_psi)
    mi["commute_sigma_phi_sigma_psi"] = _comm(sigma_phi, sigma_psi)
    mi["coproduct_S2"] = sigma_phiS_inv is not None and all(
        qg.comultiply(S2[i]) == tensor_map(sigma_phi, sigma_phiS_inv, qg.delta[i]) for i in range(n)
    )
    mi["sigma_phiS_conjugate"] = sigma_phiS is not None and all(
        sigma_phiS[i] == A.multiply(A.multiply(delta, sigma_phi[i]), delta_inv) for i in range(n)
    )
    ch["modular_identities"] = mi
    sigma_inv = la.inverse(sigma_phi, n)
    kappa = la.compose(sigma_inv, S2)
    rho = la.compose(sigma_phiS, S2) if sigma_phiS is not None else []
    nu_trivial = all(c == 1 for c in f.values())
    if nu_trivial and rho:
        Ld = A.left_mult_matrix(delta)
        Rd = A.right_mult_matrix(delta)
        ch["kappa_rho"] = {
            "commute": _comm(kappa, rho),
            "kappa_commutes_with_delta": _comm(kappa, Ld) and _comm(kappa, Rd),
            "rho_commutes_with_delta": _comm(rho, Ld) and _comm(rho, Rd),
        }
    rep["sigma_phi"] = {A.basis[i]: A.format_element(sigma_phi[i]) for i in range(n)}
    rep["sigma_psi"] = {A.basis[i]: A.format_element(sigma_psi[i]) for i in range(n)}
    rep["delta_phi"] = A.format_element(delta)
    rep["delta_phi_psi"] = A.format_element(d2)
    rep["mu"] = {A.objects[r]: A.field.format(c) for r, c in mu.items()}
    rep["nu"] = {A.objects[r]: A.field.format(c) for r, c in f.items()}
    rep["S2"] = {A.basis[i]: A.format_element(S2[i]) for i in range(n)}
    # informational: normalization of compact type
    norm = True
    for r in range(A.nobj):
        for s in range(A.nobj):
            if cls[r] == cls[s] and la.dot(phi, A.base_unit(r, s)) != 1:
                norm = False
    rep["compact_normalized"] = norm
    md = ModularData(
        phi=phi, psi=psi, gram_inv=Ginv, sigma_phi=sigma_phi, sigma_psi=sigma_psi,
        sigma_phiS=sigma_phiS, delta=delta, delta_inv=delta_inv, delta_phi_psi=d2, mu=mu,
        nu_fun=f, nu=nu, S2=S2, S2inv=S2inv, kappa=kappa, rho=rho, I_phi=I_phi,
    )
    return rep, md


def all_true(section: dict) -> bool:
    for v in section.values():
        if isinstance(v, dict):
            if not all_true(v):
                return False
        elif v is not True:
            return False
    return True
