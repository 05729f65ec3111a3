"""Global gauge transformations Γ, bundle maps Θ, and the gauge-transformed bundle P^Γ."""
from __future__ import annotations

from functools import cached_property

from ..comodule import adjoint_comodule, intertwiner_witness, regular_comodule
from ..errors import InvariantFailure
from ..field import ONE
from ..hopf import Algebra
from ..linalg import LinMap, axpy, tensor_map
from ..report import Report, compare
from .connection import ConnectionForm, gauge_field_in_total, _omega_from
from .core import PrincipalBundle, build_bundle

__all__ = [
    "GaugeTransform", "theta_from_gamma", "gamma_from_theta", "check_theta", "bundle_gauge_transform",
    "GaugedBundle", "global_gauge_from_local", "omega_A", "theta_map", "Trivialisation", "check_trivialisation",
]


class Trivialisation:
    """Φ: H_R -> P_ρ, unit preserving and convolution invertible."""

    def __init__(self, bundle: PrincipalBundle, Phi: LinMap, Phi_inv: LinMap | None = None, check: bool = True):
        self.bundle = bundle
        self.Phi = Phi
        if Phi_inv is None:
            Phi_inv = bundle.convolution.inverse(Phi)
            if Phi_inv is None:
                raise InvariantFailure("Φ is not convolution invertible")
        self.Phi_inv = Phi_inv
        if check:
            rep = check_trivialisation(self)
            if not rep.ok:
                bad = rep.failures()[0]
                raise InvariantFailure(f"not a trivialisation: {bad.name}", bad.witness)


def check_trivialisation(t: Trivialisation) -> Report:
    b = t.bundle
    rep = Report("trivialisation")
    rep.add("Φ(1) = 1", t.Phi(b.H.unit) == b.P.unit)
    w = intertwiner_witness(t.Phi, regular_comodule(b.H), b.P.comodule)
    rep.add("Φ: H_R -> P_ρ intertwiner", w is None, w)
    conv = b.convolution
    u = conv.unit
    compare(rep, "Φ*Φ⁻¹ = η∘ε", conv.mul(t.Phi, t.Phi_inv), u)
    compare(rep, "Φ⁻¹*Φ = η∘ε", conv.mul(t.Phi_inv, t.Phi), u)
    return rep


class GaugeTransform:
    """Γ: H_Ad -> P_ρ, unit preserving, convolution invertible."""

    def __init__(self, bundle: PrincipalBundle, Gamma: LinMap, check: bool = True):
        self.bundle = bundle
        self.Gamma = Gamma
        inv = bundle.convolution.inverse(Gamma)
        if inv is None:
            raise InvariantFailure("Γ is not convolution invertible")
        self.Gamma_inv = inv
        if check:
            rep = Report("gauge transform")
            rep.add("Γ(1) = 1", Gamma(bundle.H.unit) == bundle.P.unit)
            w = intertwiner_witness(Gamma, adjoint_comodule(bundle.H), bundle.P.comodule)
            rep.add("Γ: H_Ad -> P_ρ intertwiner", w is None, w)
            if not rep.ok:
                bad = rep.failures()[0]
                raise InvariantFailure(f"not a gauge transformation: {bad.name}", bad.witness)

    @cached_property
    def theta(self) -> LinMap:
        return theta_map(self.bundle, self.Gamma)

    @cached_property
    def theta_inv(self) -> LinMap:
        return theta_map(self.bundle, self.Gamma_inv)


def theta_map(b: PrincipalBundle, Gamma: LinMap) -> LinMap:
    """Θ(u) = u(1) Γ(u(2))."""
    P = b.P
    cols = []
    for u in range(P.dim):
        out: dict = {}
        for v, h, a in P.comodule.legs(u):
            axpy(out, a, P.mul({v: ONE}, Gamma.cols[h]))
        cols.append(out)
    return LinMap(P.space, P.space, cols)


def check_theta(b: PrincipalBundle, Theta: LinMap) -> Report:
    P = b.P
    rep = Report("bundle map Θ")
    w = intertwiner_witness(Theta, P.comodule, P.comodule)
    rep.add("covariant", w is None, w)
    rep.add("Θ(1) = 1", Theta(P.unit) == P.unit)
    w = None
    for m in b.M_basis:
        for u in range(P.dim):
            if Theta(P.mul(m, {u: ONE})) != P.mul(m, Theta.cols[u]):
                w = {"m": P.space.describe(m), "u": P.space.label(u)}
                break
        if w:
            break
    rep.add("left M-module map", w is None, w)
    rep.add("invertible", Theta.rank == P.dim)
    return rep


def theta_from_gamma(G: GaugeTransform) -> LinMap:
    rep = check_theta(G.bundle, G.theta)
    if not rep.ok:
        bad = rep.failures()[0]
        raise InvariantFailure(f"Θ fails: {bad.name}", bad.witness)
    return G.theta


def gamma_from_theta(b: PrincipalBundle, Theta: LinMap) -> GaugeTransform:
    """Γ(h) = τ(h)⁽¹⁾ Θ(τ(h)⁽²⁾)."""
    rep = check_theta(b, Theta)
    if not rep.ok:
        bad = rep.failures()[0]
        raise InvariantFailure(f"Θ fails: {bad.name}", bad.witness)
    P, H = b.P, b.H
    dp = P.dim
    cols = []
    for h in range(H.dim):
        out: dict = {}
        for k, a in b.translation({h: ONE}).items():
            x, y = divmod(k, dp)
            axpy(out, a, P.mul({x: ONE}, Theta.cols[y]))
        cols.append(out)
    G = GaugeTransform(b, LinMap(H.space, P.space, cols))
    if G.theta != Theta:
        raise InvariantFailure("Θ -> Γ -> Θ is not the identity")
    return G


# --- the gauge-transformed bundle ---------------------------------------------------------------

class GaugedBundle:
    """P^Γ together with Θ: P -> P^Γ."""

    def __init__(self, original: PrincipalBundle, G: GaugeTransform, bundle: PrincipalBundle):
        self.original = original
        self.G = G
        self.bundle = bundle

    @property
    def theta(self) -> LinMap:
        return self.G.theta

    def transport_connection(self, w: ConnectionForm) -> ConnectionForm:
        """ω^Γ = (Θ⊗Θ)∘ω as a connection on P^Γ."""
        TT = tensor_map(self.theta, self.theta)
        return ConnectionForm(self.bundle, LinMap(w.omega.source, TT.target, [TT(c) for c in w.omega.cols]))

    def check_projection_law(self, w: ConnectionForm) -> Report:
        """(Θ⊗Θ)∘Π = Π^Γ∘(Θ⊗Θ) on Ω¹P."""
        rep = Report("projection law")
        wG = self.transport_connection(w)
        TT = tensor_map(self.theta, self.theta)
        Pi, PiG = w.projection.Pi, wG.projection.Pi
        bad = None
        for v in self.original.omega1.basis:
            if TT(Pi(v)) != PiG(TT(v)):
                bad = {"form": TT.source.describe(v)}
                break
        rep.add("(Θ⊗Θ)∘Π = Π^Γ∘(Θ⊗Θ)", bad is None, bad)
        return rep

    def transport_trivialisation(self, triv: "Trivialisation") -> "Trivialisation":
        """Φ^Γ = Θ∘Φ, checked against Φ*Γ."""
        PhiG = self.theta @ triv.Phi
        alt = self.original.convolution.mul(triv.Phi, self.G.Gamma)
        if PhiG != LinMap(PhiG.source, PhiG.target, alt.cols):
            raise InvariantFailure("Θ∘Φ ≠ Φ*Γ")
        return Trivialisation(self.bundle, PhiG)

    def check_gauge_field_law(self, A_local: LinMap | None, triv: "Trivialisation") -> Report:
        """(ω_{A,P,Φ})^Γ = ω_{A,P^Γ,Φ^Γ}."""
        rep = Report("gauge field law")
        w = omega_A(self.original, A_local, triv)
        lhs = self.transport_connection(w)
        rhs = omega_A(self.bundle, A_local, self.transport_trivialisation(triv))
        compare(rep, "(ω_{A,P,Φ})^Γ = ω_{A,P^Γ,Φ^Γ}", lhs.omega, rhs.omega)
        return rep


def bundle_gauge_transform(b: PrincipalBundle, G: GaugeTransform) -> GaugedBundle:
    """u ·_Γ v = Θ(Θ⁻¹(u) Θ⁻¹(v)); same coaction, same M."""
    P = b.P
    T = theta_from_gamma(G)
    Ti = T.inverse()
    if G.theta_inv @ T != LinMap.identity(P.space):
        raise InvariantFailure("Θ_{Γ⁻¹} is not the inverse of Θ_Γ")
    d = P.dim
    cols = []
    for i in range(d):
        for j in range(d):
            cols.append(T(P.mul(Ti.cols[i], Ti.cols[j])))
    alg = Algebra(P.space, LinMap(P.space.tensor(P.space), P.space, cols), T(P.unit), f"{P.name}^Γ")
    PG = P.with_product(alg, f"{P.name}^Γ")
    bG = build_bundle(PG)
    if bG.M.subspace != b.M.subspace:
        raise InvariantFailure("gauge transformed bundle has a different base")
    return GaugedBundle(b, G, bG)


def global_gauge_from_local(b: PrincipalBundle, gamma_local: LinMap, triv: Trivialisation) -> GaugeTransform:
    """Γ = Φ⁻¹ * γ * Φ with γ: H -> M given in M-coordinates."""
    conv = b.convolution
    gamma = b.M.inclusion @ gamma_local
    G = conv.mul_many(triv.Phi_inv, gamma, triv.Phi)
    return GaugeTransform(b, LinMap(b.H.space, b.P.space, G.cols))


def omega_A(b: PrincipalBundle, A_local, triv: Trivialisation) -> ConnectionForm:
    A = None if A_local is None else gauge_field_in_total(b, A_local)
    return ConnectionForm(b, _omega_from(b, triv.Phi, triv.Phi_inv, A))
