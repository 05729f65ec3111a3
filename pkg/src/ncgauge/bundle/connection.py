"""Connection forms, connection projections, strong connections, covariant derivative."""
from __future__ import annotations

from functools import cached_property

from ..calculus import base_forms_in_total, d0, differential, form_product, left_mul, right_mul
from ..comodule import Comodule, adjoint_comodule, intertwiner_space, intertwiner_witness
from ..errors import InternalInconsistency, InvariantFailure
from ..field import ONE, ZERO, Cyc
from ..linalg import LinMap, Space, Subspace, axpy, kernel, solve, vtensor
from ..report import Report
from .core import PrincipalBundle

__all__ = [
    "ConnectionForm", "ConnectionProjection", "projection_from_connection", "connection_from_projection",
    "projection_map", "is_strong", "strong_report", "covariant_derivative", "connection_from_gauge_field",
    "check_connection_form", "check_connection_projection", "maurer_cartan", "gauge_field_space",
    "random_gauge_field", "gauge_field_in_total", "connection_space", "annihilator",
]


def _pp_space(b: PrincipalBundle) -> Space:
    return b.P.space.tensor(b.P.space)


def check_connection_form(b: PrincipalBundle, omega: LinMap, adjoint: Comodule | None = None) -> Report:
    P, H = b.P, b.H
    rep = Report("connection form")
    rep.add("ω(1) = 0", not omega(H.unit))
    bad = next((h for h in range(H.dim) if not b.omega1.contains(omega.cols[h])), None)
    rep.add("values in Ω¹P", bad is None, None if bad is None else {"basis": H.space.label(bad)})
    w = None
    for h in range(H.dim):
        lhs = b.chi_tilde(omega.cols[h])
        rhs = vtensor(P.unit, {h: ONE}, H.dim)
        axpy(rhs, -H.eps_basis(h), vtensor(P.unit, H.unit, H.dim))
        if lhs != rhs:
            w = {"basis": H.space.label(h), "chi(omega)": b.chi_tilde.target.describe(lhs)}
            break
    rep.add("χ̃∘ω = 1⊗(id − ε)", w is None, w)
    ad = adjoint or adjoint_comodule(H)
    w = intertwiner_witness(omega, ad, b.pp_comodule)
    rep.add("ω: H_Ad -> Ω¹P_ρ intertwiner", w is None, w)
    return rep


class ConnectionForm:
    def __init__(self, bundle: PrincipalBundle, omega: LinMap, check: bool = True, adjoint=None):
        self.bundle = bundle
        self.omega = omega
        if check:
            rep = check_connection_form(bundle, omega, adjoint)
            if not rep.ok:
                bad = rep.failures()[0]
                raise InvariantFailure(f"not a connection form: {bad.name}", bad.witness)

    def __call__(self, h: dict) -> dict:
        return self.omega(h)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConnectionForm) and self.omega == other.omega

    @cached_property
    def projection(self) -> "ConnectionProjection":
        return projection_from_connection(self)


def projection_map(b: PrincipalBundle, omega: LinMap) -> LinMap:
    """Π = (·⊗id)(id⊗ω)χ̃ on all of P⊗P."""
    P, H = b.P, b.H
    dh = H.dim
    cols = []
    for col in b.chi_tilde.cols:
        out: dict = {}
        for k, a in col.items():
            p, h = divmod(k, dh)
            axpy(out, a, left_mul(P.algebra, {p: ONE}, omega.cols[h], 1))
        cols.append(out)
    sp = _pp_space(b)
    return LinMap(sp, sp, cols)


def check_connection_projection(b: PrincipalBundle, Pi: LinMap) -> Report:
    P = b.P
    rep = Report("connection projection")
    basis = list(b.omega1.basis)
    imgs = [Pi(v) for v in basis]
    bad = next((i for i, v in enumerate(imgs) if not b.omega1.contains(v)), None)
    rep.add("Π(Ω¹P) ⊆ Ω¹P", bad is None)
    bad = next((i for i, v in enumerate(imgs) if Pi(v) != v), None)
    rep.add("Π² = Π", bad is None, None if bad is None else {"form": _pp_space(b).describe(basis[bad])})
    w = None
    for i, v in enumerate(basis):
        for u in range(P.dim):
            if Pi(left_mul(P.algebra, {u: ONE}, v, 1)) != left_mul(P.algebra, {u: ONE}, imgs[i], 1):
                w = {"element": P.space.label(u), "form": _pp_space(b).describe(v)}
                break
        if w:
            break
    rep.add("left P-module map", w is None, w)
    restricted = LinMap(Space(len(basis)), Pi.target, imgs)
    ker = Subspace.span(Pi.source, [_combine(basis, k) for k in kernel(restricted).basis])
    rep.add("ker Π = P(Ω¹M)P", ker == b.horizontal,
            None if ker == b.horizontal else {"dim_kernel": ker.dim, "dim_horizontal": b.horizontal.dim})
    pp = b.pp_comodule
    dh = b.H.dim
    w = None
    for v, img in zip(basis, imgs):
        lhs = pp.rho(img)
        rhs: dict = {}
        for k, a in pp.rho(v).items():
            x, h = divmod(k, dh)
            for t, c in Pi.cols[x].items():
                axpy(rhs, a * c, {t * dh + h: ONE})
        if lhs != rhs:
            w = {"form": _pp_space(b).describe(v)}
            break
    rep.add("covariant", w is None, w)
    return rep


def _combine(basis, coeffs: dict) -> dict:
    out: dict = {}
    for i, c in coeffs.items():
        axpy(out, c, basis[i])
    return out


class ConnectionProjection:
    def __init__(self, bundle: PrincipalBundle, Pi: LinMap, check: bool = True):
        self.bundle = bundle
        self.Pi = Pi
        if check:
            rep = check_connection_projection(bundle, Pi)
            if not rep.ok:
                bad = rep.failures()[0]
                raise InvariantFailure(f"not a connection projection: {bad.name}", bad.witness)

    def __call__(self, v: dict) -> dict:
        return self.Pi(v)

    def equal_on_forms(self, other: "ConnectionProjection") -> bool:
        return all(self.Pi(v) == other.Pi(v) for v in self.bundle.omega1.basis)


def projection_from_connection(w: ConnectionForm) -> ConnectionProjection:
    return ConnectionProjection(w.bundle, projection_map(w.bundle, w.omega))


def connection_from_projection(Pi: ConnectionProjection) -> ConnectionForm:
    """ω(h) = Π(τ(h − ε(h)1)), so that ω(1) = 0."""
    b = Pi.bundle
    H = b.H
    if not all(not Pi.Pi(r) for r in b.relations.basis):
        raise InvariantFailure("Π does not vanish on the relations of P⊗_M P")
    cols = []
    for h in range(H.dim):
        x = {h: ONE}
        axpy(x, -H.eps_basis(h), H.unit)
        cols.append(Pi.Pi(b.translation(x)))
    return ConnectionForm(b, LinMap(H.space, _pp_space(b), cols))


# --- strong connections -----------------------------------------------------------------

def _first_leg_coaction(b: PrincipalBundle, X: dict) -> dict:
    """ρ on the first leg of X ∈ P⊗P, with the H output placed last."""
    P = b.P
    dp, dh = P.dim, b.H.dim
    out: dict = {}
    for k, a in X.items():
        i, j = divmod(k, dp)
        for w, h, c in P.comodule.legs(i):
            key = (w * dp + j) * dh + h
            x = out.get(key, ZERO) + a * c
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def strong_report(w: ConnectionForm) -> Report:
    """Both forms of the strong-connection condition on every basis element of P."""
    b = w.bundle
    P, H = b.P, b.H
    dp, dh = P.dim, H.dim
    Pi = w.projection.Pi
    rep = Report("strong connection")
    pi_fail = None
    co_fail = None
    for u in range(dp):
        du = d0(P.algebra, {u: ONE})
        hor = dict(du)
        axpy(hor, -ONE, Pi(du))
        if pi_fail is None and not b.strong_horizontal.contains(hor):
            pi_fail = {"basis": P.space.label(u), "(id-Π)du": _pp_space(b).describe(hor)}
        # u(1) ω(u(2))
        X: dict = {}
        for v, h, a in P.comodule.legs(u):
            axpy(X, a, left_mul(P.algebra, {v: ONE}, w.omega.cols[h], 1))
        lhs = _first_leg_coaction(b, X)
        rhs = vtensor(vtensor({u: ONE}, P.unit, dp), H.unit, dh)
        for v, h, a in P.comodule.legs(u):
            axpy(rhs, -a, vtensor(vtensor({v: ONE}, P.unit, dp), {h: ONE}, dh))
        axpy(rhs, ONE, vtensor(X, H.unit, dh))
        if co_fail is None and lhs != rhs:
            co_fail = {"basis": P.space.label(u)}
    rep.add("(id − Π)du ∈ (Ω¹M)P", pi_fail is None, pi_fail)
    rep.add("coaction form of the strong condition", co_fail is None, co_fail)
    return rep


def is_strong(w: ConnectionForm) -> tuple[bool, Report]:
    rep = strong_report(w)
    a, c = (chk.passed for chk in rep.checks)
    if a != c:
        raise InternalInconsistency("the two forms of the strong-connection condition disagree",
                                    {"pi_form": a, "coaction_form": c})
    return a, rep


def covariant_derivative(w: ConnectionForm, Sigma: LinMap, degree: int = 0) -> LinMap:
    """DΣ = (id − Π) d Σ.

    Degree 0 applies the formula literally.  For degree n ≥ 1 the values of Σ
    must lie in (ΩⁿM)P; writing them as Σ μ_i p_i with μ_i ∈ ΩⁿM, the result is
    Σ (dμ_i) p_i + (−1)^n μ_i (id − Π) dp_i.
    """
    b = w.bundle
    P = b.P
    Pi = w.projection.Pi
    if degree == 0:
        cols = []
        for col in Sigma.cols:
            du = d0(P.algebra, col)
            out = dict(du)
            axpy(out, -ONE, Pi(du))
            cols.append(out)
        return LinMap(Sigma.source, _pp_space(b), cols)
    dp = P.dim
    forms = base_forms_in_total(b.M_basis, b.M.algebra, P.algebra, degree)
    gens = [(f, q) for f in forms for q in range(dp)]
    span_map = LinMap(Space(len(gens)), Space(dp ** (degree + 1)),
                      [right_mul(P.algebra, f, {q: ONE}, degree) for f, q in gens])
    sign = ONE if degree % 2 == 0 else -ONE
    cols = []
    for col in Sigma.cols:
        coeffs = solve(span_map, col)
        if coeffs is None:
            raise InvariantFailure("Σ does not take values in (ΩⁿM)P", {"value": str(col)})
        out: dict = {}
        for g, c in coeffs.items():
            f, q = gens[g]
            axpy(out, c, right_mul(P.algebra, differential(P.algebra, f, degree, check=False), {q: ONE},
                                   degree + 1))
            dq = d0(P.algebra, {q: ONE})
            hor = dict(dq)
            axpy(hor, -ONE, Pi(dq))
            axpy(out, sign * c, form_product(P.algebra, f, degree, hor, 1))
        cols.append(out)
    return LinMap(Sigma.source, Space(dp ** (degree + 2)), cols)


# --- connections from gauge fields ----------------------------------------------------------

def maurer_cartan(b: PrincipalBundle, Phi: LinMap, Phi_inv: LinMap) -> LinMap:
    """Φ⁻¹ * dΦ."""
    return _omega_from(b, Phi, Phi_inv, None)


def _omega_from(b: PrincipalBundle, Phi: LinMap, Phi_inv: LinMap, A: LinMap | None) -> LinMap:
    P, H = b.P, b.H
    dh = H.dim
    alg = P.algebra
    cols = []
    for h in range(dh):
        out: dict = {}
        for k, a in H.delta_basis(h).items():
            h1, h2 = divmod(k, dh)
            axpy(out, a, left_mul(alg, Phi_inv.cols[h1], d0(alg, Phi.cols[h2]), 1))
        if A is not None:
            for k, a in H.coalgebra.delta2({h: ONE}).items():
                h12, h3 = divmod(k, dh)
                h1, h2 = divmod(h12, dh)
                if not A.cols[h2]:
                    continue
                t = left_mul(alg, Phi_inv.cols[h1], A.cols[h2], 1)
                axpy(out, a, right_mul(alg, t, Phi.cols[h3], 1))
        cols.append(out)
    return LinMap(H.space, _pp_space(b), cols)


def gauge_field_in_total(b: PrincipalBundle, A_local: LinMap) -> LinMap:
    """Push A: H -> Ω¹M (M-coordinates, M⊗M legs) into P⊗P."""
    dm = b.M.dim
    dp = b.P.dim
    Mb = b.M_basis
    cols = []
    for col in A_local.cols:
        out: dict = {}
        for k, a in col.items():
            i, j = divmod(k, dm)
            axpy(out, a, vtensor(Mb[i], Mb[j], dp))
        cols.append(out)
    return LinMap(A_local.source, _pp_space(b), cols)


def connection_from_gauge_field(b: PrincipalBundle, A_local: LinMap | None, Phi: LinMap, Phi_inv: LinMap,
                                check_strong: bool = True) -> ConnectionForm:
    """ω = Φ⁻¹*dΦ + Φ⁻¹*A*Φ; A is given in M-coordinates with values in Ω¹M ⊂ M⊗M."""
    A = None if A_local is None else gauge_field_in_total(b, A_local)
    w = ConnectionForm(b, _omega_from(b, Phi, Phi_inv, A))
    if check_strong:
        ok, rep = is_strong(w)
        if not ok:
            raise InvariantFailure("connection from a gauge field is not strong", rep.failures()[0].witness)
    return w


def gauge_field_space(b: PrincipalBundle) -> list[LinMap]:
    """A basis of the gauge fields A: H -> Ω¹M with A(1) = 0, in M-coordinates.

    A pivot coordinate p of the unit of H absorbs the constraint: A(e_p) is
    fixed by the values on the other basis vectors.
    """
    M = b.M.algebra
    forms = kernel(M.mult).basis
    H = b.H
    p = min(H.unit)
    up = H.unit[p]
    out = []
    for h in range(H.dim):
        if h == p:
            continue
        for f in forms:
            cols = [{} for _ in range(H.dim)]
            cols[h] = dict(f)
            c = H.unit.get(h)
            if c:
                cols[p] = {k: -c / up * a for k, a in f.items()}
            out.append(LinMap(H.space, M.space.tensor(M.space), cols))
    return out


def random_gauge_field(b: PrincipalBundle, rng, spread: int = 3) -> LinMap:
    """A random exact gauge field with small integer coefficients."""
    basis = gauge_field_space(b)
    H, M = b.H, b.M.algebra
    cols = [{} for _ in range(H.dim)]
    for f in basis:
        s = rng.randint(-spread, spread)
        if s:
            for h, col in enumerate(f.cols):
                axpy(cols[h], Cyc(s), col)
    return LinMap(H.space, M.space.tensor(M.space), cols)


# --- all connections by linear solving ------------------------------------------------------

def annihilator(sub: Subspace) -> list[dict]:
    """Functionals f (f(v) = Σ f[p] v[p]) whose common kernel is ``sub``."""
    n = sub.ambient.dim
    rows = LinMap(Space(n), Space(sub.dim), [{i: v[p] for i, v in enumerate(sub.basis) if p in v} for p in range(n)])
    return list(kernel(rows).basis)


def _pair(f: dict, v: dict):
    out = ZERO
    for k, a in v.items():
        c = f.get(k)
        if c:
            out = out + a * c
    return out


def connection_space(b: PrincipalBundle, strong: bool = False) -> tuple[LinMap, list[LinMap]] | None:
    """The affine space of connection forms (strong ones if asked) as (particular ω, directions).

    ω ranges over intertwiners H_Ad -> P_ρ⊗P_ρ; the remaining conditions are
    linear in ω.  None when no such connection exists.
    """
    P, H = b.P, b.H
    dh, dp = H.dim, P.dim
    maps = intertwiner_space(adjoint_comodule(H), b.pp_comodule).maps()
    rows: list[tuple[list, object]] = []
    add = rows.append

    mult = P.algebra.mult
    for h in range(dh):
        imgs = [f.cols[h] for f in maps]
        e = H.eps_basis(h)
        for q in range(dp):
            add(([mult(v).get(q, ZERO) for v in imgs], ZERO))
        chis = [b.chi_tilde(v) for v in imgs]
        target = vtensor(P.unit, {h: ONE}, dh)
        axpy(target, -e, vtensor(P.unit, H.unit, dh))
        for k in range(dp * dh):
            add(([c.get(k, ZERO) for c in chis], target.get(k, ZERO)))
    units = [f(H.unit) for f in maps]
    for k in range(dp * dp):
        add(([v.get(k, ZERO) for v in units], ZERO))
    if strong:
        ann = annihilator(b.strong_horizontal)
        pis = [projection_map(b, f) for f in maps]
        for u in range(dp):
            du = d0(P.algebra, {u: ONE})
            imgs = [Pi(du) for Pi in pis]
            for phi in ann:
                add(([_pair(phi, v) for v in imgs], _pair(phi, du)))
    n = len(maps)
    cols = [{} for _ in range(n)]
    rhs: dict = {}
    for r, (vals, y) in enumerate(rows):
        for i, a in enumerate(vals):
            if a:
                cols[i][r] = a
        if y:
            rhs[r] = y
    system = LinMap(Space(n), Space(len(rows)), cols)
    x = solve(system, rhs)
    if x is None:
        return None

    def comb(c: dict) -> LinMap:
        out = [{} for _ in range(dh)]
        for i, t in c.items():
            for h, col in enumerate(maps[i].cols):
                axpy(out[h], t, col)
        return LinMap(H.space, _pp_space(b), out)

    return comb(x), [comb(k) for k in kernel(system).basis]
