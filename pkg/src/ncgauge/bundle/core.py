"""Principal bundles with the universal calculus: the Galois maps χ̃ and χ."""
from __future__ import annotations

from functools import cached_property

from ..calculus import horizontal_span, strong_span
from ..comodule import (Comodule, ComoduleAlgebra, FixedSubalgebra, adjoint_comodule, check_comodule_algebra,
                        fixed_subalgebra, intertwiner_witness, left_regular_comodule,
                        regular_comodule, tensor_comodule)
from ..errors import AxiomPrecheckError, NotFree, NotGalois
from ..field import ONE, ZERO
from ..hopf import ConvolutionAlgebra
from ..linalg import LinMap, Space, Subspace, axpy, image, kernel, quotient, vtensor
from ..report import Report, compare

__all__ = ["PrincipalBundle", "build_bundle", "galois_map", "check_chi_covariance", "check_galois"]


def galois_map(P: ComoduleAlgebra) -> LinMap:
    """χ̃: P⊗P -> P⊗H, u⊗v ↦ u v(1) ⊗ v(2)."""
    dp, dh = P.dim, P.host.dim
    co = P.comodule
    legs = [list(co.legs(j)) for j in range(dp)]
    cols = []
    for u in range(dp):
        for v in range(dp):
            out: dict = {}
            for w, h, a in legs[v]:
                for t, c in P.algebra.mul_basis(u, w).items():
                    key = t * dh + h
                    x = out.get(key, ZERO) + a * c
                    if x:
                        out[key] = x
                    else:
                        out.pop(key, None)
            cols.append(out)
    return LinMap(P.space.tensor(P.space), P.space.tensor(P.host.space), cols)


class PrincipalBundle:
    """A verified Galois extension M ⊂ P with structure Hopf algebra (or braided group) H."""

    def __init__(self, P: ComoduleAlgebra, M: FixedSubalgebra, chi_tilde: LinMap, relations: Subspace,
                 tensor_over_M, chi: LinMap, chi_inv: LinMap, name: str = ""):
        self.P = P
        self.H = P.host
        self.M = M
        self.chi_tilde = chi_tilde
        self.relations = relations
        self.tensor_over_M = tensor_over_M
        self.chi = chi
        self.chi_inv = chi_inv
        self.name = name or P.name

    def __repr__(self) -> str:
        return f"PrincipalBundle({self.name}, dim P={self.P.dim}, dim H={self.H.dim}, dim M={self.M.dim})"

    @property
    def M_basis(self) -> list[dict]:
        return list(self.M.subspace.basis)

    def translation(self, h: dict) -> dict:
        """τ(h) = χ⁻¹(1⊗h), lifted to P⊗P along the quotient section."""
        x = vtensor(self.P.unit, h, self.H.dim)
        return self.tensor_over_M.lift(self.chi_inv(x))

    @cached_property
    def translation_map(self) -> LinMap:
        return LinMap(self.H.space, self.P.space.tensor(self.P.space),
                      [self.translation({h: ONE}) for h in range(self.H.dim)])

    @cached_property
    def horizontal(self) -> Subspace:
        """P(Ω¹M)P."""
        return horizontal_span(self.P.algebra, self.M_basis)

    @cached_property
    def strong_horizontal(self) -> Subspace:
        """(Ω¹M)P."""
        return strong_span(self.P.algebra, self.M_basis, self.M.algebra, 1)

    @cached_property
    def omega1(self) -> Subspace:
        """Ω¹P = ker(multiplication)."""
        return kernel(self.P.algebra.mult)

    @cached_property
    def pp_comodule(self):
        """P_ρ⊗P_ρ with the tensor product coaction."""
        return tensor_comodule(self.P.comodule, self.P.comodule)

    @cached_property
    def convolution(self) -> ConvolutionAlgebra:
        return ConvolutionAlgebra(self.H.coalgebra, self.P.algebra)

    def with_algebra(self, P: ComoduleAlgebra) -> "PrincipalBundle":
        return build_bundle(P)


def build_bundle(P: ComoduleAlgebra, precheck: bool = True, name: str = "") -> PrincipalBundle:
    if precheck:
        rep = check_comodule_algebra(P)
        if not rep.ok:
            bad = rep.failures()[0]
            raise AxiomPrecheckError(f"not a comodule algebra: {bad.name}", bad.witness)
    M = fixed_subalgebra(P)
    chi_tilde = galois_map(P)
    target = chi_tilde.target
    img = image(chi_tilde)
    if img.dim != target.dim:
        missing = next(i for i in range(target.dim) if not img.contains({i: ONE}))
        raise NotFree("χ̃ is not surjective", {"not_in_image": target.label(missing)})
    relations = horizontal_span(P.algebra, list(M.subspace.basis))
    Q = quotient(chi_tilde.source, relations)
    chi = chi_tilde @ Q.section
    if chi.rank != Q.dim:
        ker = kernel(chi)
        w = Q.lift(ker.basis[0])
        raise NotGalois("χ is not injective on P⊗_M P", {"kernel_vector": chi_tilde.source.describe(w)})
    chi_inv = chi.inverse()
    return PrincipalBundle(P, M, chi_tilde, relations, Q, chi, chi_inv, name)


def check_galois(b: PrincipalBundle) -> Report:
    rep = Report(f"galois {b.name}")
    ct = b.chi_tilde
    rep.add("relations ⊆ ker χ̃", all(not ct(r) for r in b.relations.basis))
    compare(rep, "χ∘χ⁻¹ = id", b.chi @ b.chi_inv, LinMap.identity(b.chi.target))
    compare(rep, "χ⁻¹∘χ = id", b.chi_inv @ b.chi, LinMap.identity(b.chi.source))
    ker = kernel(ct)
    rep.add("ker χ̃ = P(Ω¹M)P", ker == b.horizontal,
            None if ker == b.horizontal else {"dim_kernel": ker.dim, "dim_horizontal": b.horizontal.dim})
    return rep


def check_chi_covariance(b: PrincipalBundle) -> Report:
    """The three intertwining properties of χ̃ and their χ⁻¹ counterparts."""
    P, H = b.P, b.H
    rep = Report(f"chi covariance {b.name}")
    Pr = P.comodule
    triv = _trivial_like(P)
    HR, HL, HAd = regular_comodule(H), left_regular_comodule(H), adjoint_comodule(H)
    cases = [
        ("χ̃: P⊗P_ρ -> P⊗H_R", triv, Pr, HR),
        ("χ̃: P_ρ⊗P -> P_ρ⊗H_L", Pr, triv, HL),
        ("χ̃: P_ρ⊗P_ρ -> P_ρ⊗H_Ad", Pr, Pr, HAd),
    ]
    Q = b.tensor_over_M
    for label, left, right, out in cases:
        src = tensor_comodule(left, right)
        tgt = tensor_comodule(left, out)
        w = intertwiner_witness(b.chi_tilde, src, tgt)
        rep.add(label, w is None, w)
        # χ⁻¹ covariance, read on P⊗P through the quotient: (ρ on a lift) ≡ (lift of the image)
        w = _chi_inv_witness(b, src, tgt, Q)
        rep.add(label.replace("χ̃", "χ⁻¹").replace("->", "<-"), w is None, w)
    return rep


def _trivial_like(P: ComoduleAlgebra):
    H = P.host
    return Comodule(P.space, LinMap(P.space, P.space.tensor(H.space),
                                    [vtensor({i: ONE}, H.unit, H.dim) for i in range(P.dim)]), H, "P")


def _chi_inv_witness(b: PrincipalBundle, src, tgt, Q):
    """Check (χ⁻¹⊗id)∘ρ_tgt = ρ_src∘χ⁻¹ modulo the relations (tensored with H)."""
    H = b.H
    dh = H.dim
    rel_h = Subspace.span(Space(Q.ambient.dim * dh),
                          [vtensor(r, {h: ONE}, dh) for r in Q.relations.basis for h in range(dh)])
    lift = [Q.lift(c) for c in b.chi_inv.cols]
    for i in range(tgt.dim):
        lhs = src.rho(lift[i])
        rhs: dict = {}
        for v, h, a in tgt.legs(i):
            for k, x in lift[v].items():
                axpy(rhs, a * x, {k * dh + h: ONE})
        diff = dict(lhs)
        axpy(diff, -ONE, rhs)
        if not rel_h.contains(diff):
            return {"basis": tgt.space.label(i)}
    return None
