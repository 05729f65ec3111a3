"""Cocycle cross products M_c⋊H and reading cocycle data back off a product."""
from __future__ import annotations

from dataclasses import dataclass

from ..comodule import Comodule, ComoduleAlgebra
from ..errors import NotAssociative, NotCanonicalForm
from ..field import ONE
from ..hopf import Algebra, ConvolutionAlgebra, HopfAlgebra
from ..linalg import LinMap, axpy, vtensor
from .core import PrincipalBundle, build_bundle
from .gauge import Trivialisation

__all__ = ["CocycleData", "cocycle_cross_product", "extract_cocycle_data", "cross_product_algebra",
           "trivial_cocycle_data"]


@dataclass
class CocycleData:
    """c: H⊗H -> M and α: H⊗M -> M, both with values in M-coordinates."""

    M: Algebra
    H: HopfAlgebra
    c: LinMap
    alpha: LinMap

    def c_basis(self, h: int, g: int) -> dict:
        return self.c.cols[h * self.H.dim + g]

    def alpha_basis(self, h: int, m: int) -> dict:
        return self.alpha.cols[h * self.M.dim + m]


def trivial_cocycle_data(M: Algebra, H: HopfAlgebra) -> CocycleData:
    dh, dm = H.dim, M.dim
    c = LinMap(H.space.tensor(H.space), M.space,
               [{k: H.eps_basis(h) * H.eps_basis(g) * x for k, x in M.unit.items()}
                for h in range(dh) for g in range(dh)])
    alpha = LinMap(H.space.tensor(M.space), M.space,
                   [{m: H.eps_basis(h)} if H.eps_basis(h) else {} for h in range(dh) for m in range(dm)])
    return CocycleData(M, H, c, alpha)


def cross_product_algebra(data: CocycleData) -> Algebra:
    """(m⊗h)(n⊗g) = m α(h1⊗n) c(h2⊗g1) ⊗ h3 g2."""
    M, H = data.M, data.H
    dh = H.dim
    delta2 = [H.coalgebra.delta2({h: ONE}) for h in range(dh)]
    deltas = [H.delta_basis(h) for h in range(dh)]
    sp = M.space.tensor(H.space)

    def prod(p, q):
        m, h = divmod(p, dh)
        n, g = divmod(q, dh)
        out: dict = {}
        for k1, a in delta2[h].items():
            h12, h3 = divmod(k1, dh)
            h1, h2 = divmod(h12, dh)
            left = M.mul({m: ONE}, data.alpha_basis(h1, n))
            if not left:
                continue
            for k2, b in deltas[g].items():
                g1, g2 = divmod(k2, dh)
                mm = M.mul(left, data.c_basis(h2, g1))
                if not mm:
                    continue
                axpy(out, a * b, vtensor(mm, H.mul_basis(h3, g2), dh))
        return out

    return Algebra.from_products(sp, prod, vtensor(M.unit, H.unit, dh), "cross product")


def _coaction(M: Algebra, H: HopfAlgebra) -> LinMap:
    """id⊗Δ on M⊗H."""
    dm, dh = M.dim, H.dim
    sp = M.space.tensor(H.space)
    cols = []
    for p in range(dm * dh):
        m, h = divmod(p, dh)
        cols.append({(m * dh + x) * dh + y: a for k, a in H.delta_basis(h).items() for x, y in [divmod(k, dh)]})
    return LinMap(sp, sp.tensor(H.space), cols)


def cocycle_cross_product(data: CocycleData, name: str = "cross product") -> tuple[PrincipalBundle, Trivialisation]:
    alg = cross_product_algebra(data)
    w = alg.associativity_witness()
    if w is not None:
        raise NotAssociative("cocycle data do not give an associative product", w)
    w = alg.unit_witness()
    if w is not None:
        raise NotAssociative("cocycle data do not give a unital product", w)
    alg.name = name
    M, H = data.M, data.H
    co = Comodule(alg.space, _coaction(M, H), H, "id⊗Δ")
    b = build_bundle(ComoduleAlgebra(alg, co, name))
    dh = H.dim
    Phi = LinMap(H.space, alg.space, [vtensor(M.unit, {h: ONE}, dh) for h in range(dh)])
    return b, Trivialisation(b, Phi)


def extract_cocycle_data(b: PrincipalBundle, M: Algebra) -> CocycleData:
    """Read c(h⊗g) off (1⊗h)(1⊗g) and α(h⊗m) off (1⊗h)(m⊗1), then re-verify the whole table.

    ``b`` must live on M⊗H with coaction id⊗Δ; the algebra M gives the base
    coordinates (its product must agree with the restriction of P's product).
    """
    H = b.H
    P = b.P
    dm, dh = M.dim, H.dim
    if P.dim != dm * dh:
        raise NotCanonicalForm("total space is not M⊗H", {"dim_P": P.dim, "dim_M⊗H": dm * dh})
    if P.comodule.coaction != _coaction(M, H):
        j = P.comodule.coaction.first_difference(_coaction(M, H))
        raise NotCanonicalForm("coaction is not id⊗Δ", {"basis": P.space.label(j)})
    one_h = lambda h: vtensor(M.unit, {h: ONE}, dh)  # noqa: E731
    m_one = lambda m: vtensor(m, H.unit, dh)  # noqa: E731

    def split_m(v: dict, h_target: dict) -> dict:
        """Write v = x ⊗ h_target, returning x (NotCanonicalForm otherwise)."""
        out: dict = {}
        hk = min(h_target)
        for k, a in v.items():
            m, h = divmod(k, dh)
            if h == hk:
                out[m] = a / h_target[hk]
        if vtensor(out, h_target, dh) != v:
            raise NotCanonicalForm("product is not of cross-product shape", {"value": P.space.describe(v)})
        return out

    # c'(h⊗g) from (1⊗h1)(1⊗g1) = Σ c'(h1⊗g1)⊗h2g2 is triangular; solve it through the identity
    # (1⊗h)(1⊗g) = c'(h1⊗g1) ⊗ h2 g2, using the trivialisation to invert the H-leg: we use
    # the convolution inverse of the identity on the H⊗H coalgebra.
    HH = H.coalgebra.tensor(H.coalgebra)
    target_alg = P.algebra
    # F(h⊗g) = (1⊗h)(1⊗g) ∈ P; G(h⊗g) = 1⊗hg; c'⊗1 = F * G⁻¹ in Hom(H⊗H, P)
    F = LinMap(HH.space, P.space, [P.mul(one_h(h), one_h(g)) for h in range(dh) for g in range(dh)])
    G = LinMap(HH.space, P.space, [one_h_prod(H, M, h, g) for h in range(dh) for g in range(dh)])
    conv = ConvolutionAlgebra(HH, target_alg)
    Ginv = conv.inverse(G)
    if Ginv is None:
        raise NotCanonicalForm("H-leg products are not convolution invertible")
    C = conv.mul(F, Ginv)
    c_cols = [split_m(col, H.unit) if col else {} for col in C.cols]
    # α'(h⊗m) ⊗ 1 = (1⊗h1)(m⊗1) Φ⁻¹(h2), Φ(h) = 1⊗h
    conv_h = ConvolutionAlgebra(H.coalgebra, target_alg)
    Phi = LinMap(H.space, P.space, [one_h(h) for h in range(dh)])
    Phi_inv = conv_h.inverse(Phi)
    if Phi_inv is None:
        raise NotCanonicalForm("h ↦ 1⊗h is not convolution invertible")
    a_cols = []
    for h in range(dh):
        for m in range(dm):
            acc: dict = {}
            for k, a in H.delta_basis(h).items():
                h1, h2 = divmod(k, dh)
                axpy(acc, a, P.mul(P.mul(one_h(h1), m_one({m: ONE})), Phi_inv.cols[h2]))
            a_cols.append(split_m(acc, H.unit) if acc else {})
    data = CocycleData(M, H, LinMap(H.space.tensor(H.space), M.space, c_cols),
                       LinMap(H.space.tensor(M.space), M.space, a_cols))
    rebuilt = cross_product_algebra(data)
    if rebuilt.mult != P.algebra.mult:
        j = rebuilt.mult.first_difference(P.algebra.mult)
        raise NotCanonicalForm("cross-product formula does not reproduce the product",
                               {"pair": P.space.tensor(P.space).label(j),
                                "expected": P.space.describe(P.algebra.mult.cols[j]),
                                "formula": P.space.describe(rebuilt.mult.cols[j])})
    return data


def one_h_prod(H: HopfAlgebra, M: Algebra, h: int, g: int) -> dict:
    return vtensor(M.unit, H.mul_basis(h, g), H.dim)
