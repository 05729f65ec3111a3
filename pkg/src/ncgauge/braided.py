"""Braided categories of comodules, braided groups, braided bundles and bosonisation."""
from __future__ import annotations

from functools import cached_property

from .bundle.connection import _omega_from, gauge_field_in_total
from .bundle.core import PrincipalBundle, build_bundle
from .calculus import is_form, universal_forms
from .comodule import (Comodule, ComoduleAlgebra, check_comodule, intertwiner_space,
                       intertwiner_witness, regular_comodule, tensor_comodule)
from .errors import (AxiomPrecheckError, EntwiningAxiomFailure, HopfAxiomFailure, InvariantFailure,
                     NotAssociative)
from .field import ONE, ZERO, Cyc, zeta
from .hopf import (Algebra, Coalgebra, ConvolutionAlgebra, DualQuasitriangular, HopfAlgebra, check_hopf_axioms,
                   is_hopf_isomorphism)
from .linalg import LinMap, Space, axpy, kernel, solve, vtensor
from .report import Report, compare

__all__ = [
    "BraidedCategory", "BraidedGroup", "BraidedBundle", "Entwining", "braided_line", "zeta_binomial",
    "braided_tensor_algebra", "check_braided_group", "braided_trivial_bundle", "bosonise",
    "Bosonisation", "bosonisation_as_braided_bundle", "bosonisation_as_quantum_bundle",
    "tensconn", "qgtensconn", "check_braided_connection", "braided_ad_candidate",
    "entwining_from_bosonisation", "check_entwining", "cyclic_category", "find_taft_isomorphism",
    "compare_entwinings", "morphism_gauge_fields",
]


class BraidedCategory:
    """Right comodules of a dual-quasitriangular Hopf algebra H."""

    def __init__(self, H: HopfAlgebra, R: DualQuasitriangular, name: str = ""):
        self.H = H
        self.R = R
        self.name = name or f"comod({H.name})"

    def braiding(self, V: Comodule, W: Comodule) -> LinMap:
        """Ψ(v⊗w) = w⁽¹⁾⊗v⁽¹⁾ R(v⁽²⁾⊗w⁽²⁾), a map V⊗W -> W⊗V."""
        dv, dw = V.dim, W.dim
        wl = [list(W.legs(j)) for j in range(dw)]
        cols = []
        for i in range(dv):
            vl = list(V.legs(i))
            for j in range(dw):
                out: dict = {}
                for v, h, a in vl:
                    for w, g, b in wl[j]:
                        r = self.R.value(h, g)
                        if r:
                            axpy(out, a * b * r, {w * dv + v: ONE})
                cols.append(out)
        return LinMap(V.space.tensor(W.space), W.space.tensor(V.space), cols)

    def braiding_inverse(self, V: Comodule, W: Comodule) -> LinMap:
        """Ψ⁻¹: W⊗V -> V⊗W, w⊗v ↦ v⁽¹⁾⊗w⁽¹⁾ R⁻¹(v⁽²⁾⊗w⁽²⁾)."""
        return self.braiding(V, W).inverse()

    def check_hexagons(self, U: Comodule, V: Comodule, W: Comodule) -> Report:
        """Ψ_{U⊗V,W} = (Ψ_{U,W}⊗id)(id⊗Ψ_{V,W}) and Ψ_{U,V⊗W} = (id⊗Ψ_{U,W})(Ψ_{U,V}⊗id)."""
        rep = Report(f"hexagons {U.name},{V.name},{W.name}")
        du, dv, dw = U.dim, V.dim, W.dim
        UV, VW = tensor_comodule(U, V), tensor_comodule(V, W)
        lhs = self.braiding(UV, W)
        step1 = _id_tensor(du, self.braiding(V, W), dv * dw, dw * dv)
        step2 = _tensor_id(self.braiding(U, W), dw, du * dw, dw * du, dv)
        compare(rep, "Ψ_{U⊗V,W} hexagon", lhs, step2 @ step1)
        lhs = self.braiding(U, VW)
        s1 = _tensor_id(self.braiding(U, V), dw, du * dv, dv * du, dw)
        s2 = _id_tensor(dv, self.braiding(U, W), du * dw, dw * du)
        compare(rep, "Ψ_{U,V⊗W} hexagon", lhs, s2 @ s1)
        return rep

    def check_naturality(self, f: LinMap, V: Comodule, V2: Comodule, W: Comodule) -> Report:
        """(id⊗f)∘Ψ_{V,W} = Ψ_{V2,W}∘(f⊗id) for an intertwiner f: V -> V2."""
        rep = Report("Ψ naturality")
        lhs = _id_tensor(W.dim, f, V.dim, V2.dim) @ self.braiding(V, W)
        rhs = self.braiding(V2, W) @ _tensor_id(f, W.dim, V.dim, V2.dim, 1)
        compare(rep, "(id⊗f)Ψ = Ψ(f⊗id)", lhs, rhs)
        return rep


def _id_tensor(d_left: int, f: LinMap, ds: int, dt: int) -> LinMap:
    """id_{d_left}⊗f."""
    cols = []
    for i in range(d_left):
        for j in range(ds):
            cols.append({i * dt + k: a for k, a in f.cols[j].items()})
    return LinMap(Space(d_left * ds), Space(d_left * dt), cols)


def _tensor_id(f: LinMap, d_right: int, ds: int, dt: int, _unused: int = 0) -> LinMap:
    """f⊗id_{d_right}."""
    cols = []
    for j in range(ds):
        for i in range(d_right):
            cols.append({k * d_right + i: a for k, a in f.cols[j].items()})
    return LinMap(Space(ds * d_right), Space(dt * d_right), cols)


def cyclic_category(n: int, q: Cyc | None = None) -> BraidedCategory:
    """kℤ_n comodules with R(g^a⊗g^b) = q^{ab}."""
    from .catalog import cyclic_dqt, group_algebra  # catalog imports this module
    H = group_algebra(n)
    return BraidedCategory(H, cyclic_dqt(H, n, q), f"comod(kZ{n})")


# --- braided tensor product algebras ------------------------------------------------------------

def braided_tensor_algebra(cat: BraidedCategory, A: Algebra, Aco: Comodule, B: Algebra, Bco: Comodule,
                           check: bool = True) -> Algebra:
    """(a⊗b)(a'⊗b') = a Ψ(b⊗a') b' on A⊗B."""
    da, db = A.dim, B.dim
    psi = cat.braiding(Bco, Aco)

    def prod(p, q):
        a, b = divmod(p, db)
        a2, b2 = divmod(q, db)
        out: dict = {}
        for k, c in psi.cols[b * da + a2].items():
            x, y = divmod(k, db)
            left = A.mul_basis(a, x)
            right = B.mul_basis(y, b2)
            for i, s in left.items():
                for j, t in right.items():
                    axpy(out, c * s * t, {i * db + j: ONE})
        return out

    alg = Algebra.from_products(A.space.tensor(B.space), prod, vtensor(A.unit, B.unit, db),
                                f"{A.name}⊗̲{B.name}")
    if check:
        w = alg.associativity_witness()
        if w is not None:
            raise NotAssociative("braided tensor product is not associative", w)
    return alg


# --- braided groups ---------------------------------------------------------------------------

class BraidedGroup(HopfAlgebra):
    """A Hopf algebra in a braided category: Δ̲ is multiplicative into B⊗̲B."""

    def __init__(self, algebra: Algebra, coalgebra: Coalgebra, antipode: LinMap, category: BraidedCategory,
                 comodule: Comodule, name: str = ""):
        super().__init__(algebra, coalgebra, antipode, name)
        self.category = category
        self.comodule = comodule

    @cached_property
    def tensor_square(self) -> Algebra:
        return braided_tensor_algebra(self.category, self.algebra, self.comodule, self.algebra, self.comodule)


def zeta_binomial(m: int, k: int, q: Cyc) -> Cyc:
    """q-binomial via [m,k] = [m−1,k−1] + q^k [m−1,k]."""
    row = [ONE]
    for i in range(1, m + 1):
        new = [ONE] * (i + 1)
        for j in range(1, i):
            new[j] = row[j - 1] + q ** j * row[j]
        row = new
    return row[k] if 0 <= k <= m else ZERO


def braided_line(n: int, q: Cyc | None = None, cat: BraidedCategory | None = None) -> BraidedGroup:
    """ℓ_n = k[x]/(xⁿ) with x of degree 1 in kℤ_n comodules."""
    q = zeta(n) if q is None else q
    cat = cyclic_category(n, q) if cat is None else cat
    H = cat.H
    sp = Space(["1", "x"] + [f"x^{m}" for m in range(2, n)])
    alg = Algebra.from_products(sp, lambda i, j: {i + j: ONE} if i + j < n else {}, {0: ONE}, f"l{n}")
    coalg = Coalgebra.from_functions(
        sp, lambda m: {k * n + (m - k): zeta_binomial(m, k, q) for k in range(m + 1)}, lambda m: 1 if m == 0 else 0)
    co = Comodule.from_function(sp, H, lambda m: {m * n + m % n: ONE}, f"l{n}")
    S = ConvolutionAlgebra(coalg, alg).inverse(LinMap.identity(sp))
    if S is None:
        raise HopfAxiomFailure("braided line has no antipode")
    return BraidedGroup(alg, coalg, S, cat, co, f"braided-line:{n}")


def check_braided_group(B: BraidedGroup) -> Report:
    rep = Report(f"braided group {B.name}")
    rep.extend(check_comodule(B.comodule))
    w = B.algebra.associativity_witness()
    rep.add("associativity", w is None, w)
    w = B.coalgebra.coassociativity_witness()
    rep.add("coassociativity", w is None, w)
    w = B.coalgebra.counit_witness()
    rep.add("counit", w is None, w)
    d = B.dim
    BB = B.tensor_square
    bad = None
    for i in range(d):
        for j in range(d):
            if B.delta(B.mul_basis(i, j)) != BB.mul(B.delta_basis(i), B.delta_basis(j)):
                bad = {"pair": [B.space.label(i), B.space.label(j)]}
                break
        if bad:
            break
    rep.add("Δ̲ multiplicative into B⊗̲B", bad is None, bad)
    bad = next(([B.space.label(i), B.space.label(j)] for i in range(d) for j in range(d)
                if B.eps(B.mul_basis(i, j)) != B.eps_basis(i) * B.eps_basis(j)), None)
    rep.add("ε multiplicative", bad is None, None if bad is None else {"pair": bad})
    rep.add("Δ̲(1) = 1⊗1", B.delta(B.unit) == vtensor(B.unit, B.unit, d))
    conv = ConvolutionAlgebra(B.coalgebra, B.algebra)
    idm = LinMap.identity(B.space)
    compare(rep, "S̲*id = ηε", conv.mul(B.antipode, idm), conv.unit)
    compare(rep, "id*S̲ = ηε", conv.mul(idm, B.antipode), conv.unit)
    BBco = tensor_comodule(B.comodule, B.comodule)
    for label, f, V, W in [("Δ̲ morphism", B.coalgebra.comult, B.comodule, BBco),
                           ("product morphism", B.algebra.mult, BBco, B.comodule),
                           ("S̲ morphism", B.antipode, B.comodule, B.comodule)]:
        w = intertwiner_witness(f, V, W)
        rep.add(label, w is None, w)
    return rep


# --- braided principal bundles -----------------------------------------------------------------

class BraidedBundle:
    """A braided comodule algebra P (H-comodule, B-comodule) whose Galois map is invertible."""

    def __init__(self, bundle: PrincipalBundle, B: BraidedGroup, P_H: Comodule, name: str = ""):
        self.bundle = bundle
        self.B = B
        self.P_H = P_H
        self.name = name or bundle.name

    @property
    def P(self) -> ComoduleAlgebra:
        return self.bundle.P

    @cached_property
    def braided_PB(self) -> Algebra:
        return braided_tensor_algebra(self.B.category, self.P.algebra, self.P_H, self.B.algebra, self.B.comodule)

    @cached_property
    def pp_coaction(self) -> LinMap:
        """Braided tensor product B-coaction on P⊗P: u⊗v ↦ u⁽¹⁾⊗Ψ(u⁽²⁾⊗v⁽¹⁾)v⁽²⁾."""
        P, B = self.P, self.B
        dp, db = P.dim, B.dim
        psi = B.category.braiding(B.comodule, self.P_H)
        legs = [list(P.comodule.legs(i)) for i in range(dp)]
        cols = []
        for u in range(dp):
            for v in range(dp):
                out: dict = {}
                for u1, c2, a in legs[u]:
                    for v1, b2, b in legs[v]:
                        for k, c in psi.cols[c2 * dp + v1].items():
                            p, c3 = divmod(k, db)
                            for t, s in B.mul_basis(c3, b2).items():
                                axpy(out, a * b * c * s, {(u1 * dp + p) * db + t: ONE})
                cols.append(out)
        return LinMap(P.space.tensor(P.space), Space(dp * dp * db), cols)


def check_braided_comodule_algebra(P: ComoduleAlgebra, B: BraidedGroup, P_H: Comodule) -> Report:
    rep = Report(f"braided comodule algebra {P.name}")
    rep.extend(check_comodule(P.comodule))
    rep.extend(check_comodule(P_H))
    PB = braided_tensor_algebra(B.category, P.algebra, P_H, B.algebra, B.comodule)
    d = P.dim
    bad = None
    for i in range(d):
        for j in range(d):
            if P.rho(P.algebra.mul_basis(i, j)) != PB.mul(P.comodule.rho_basis(i), P.comodule.rho_basis(j)):
                bad = {"pair": [P.space.label(i), P.space.label(j)]}
                break
        if bad:
            break
    rep.add("ρ: P -> P⊗̲B algebra map", bad is None, bad)
    rep.add("ρ(1) = 1⊗1", P.rho(P.unit) == vtensor(P.unit, B.unit, B.dim))
    w = intertwiner_witness(P.comodule.coaction, P_H, tensor_comodule(P_H, B.comodule))
    rep.add("ρ is a morphism", w is None, w)
    w = intertwiner_witness(P.algebra.mult, tensor_comodule(P_H, P_H), P_H)
    rep.add("product is a morphism", w is None, w)
    return rep


def _braided_bundle(P: ComoduleAlgebra, B: BraidedGroup, P_H: Comodule, name: str) -> BraidedBundle:
    rep = check_braided_comodule_algebra(P, B, P_H)
    if not rep.ok:
        bad = rep.failures()[0]
        raise AxiomPrecheckError(f"not a braided comodule algebra: {bad.name}", bad.witness)
    return BraidedBundle(build_bundle(P, precheck=False, name=name), B, P_H, name)


def braided_trivial_bundle(M: Algebra, M_H: Comodule, B: BraidedGroup, name: str = "") -> tuple[BraidedBundle, LinMap, LinMap]:
    """P = M⊗̲B, ρ = id⊗Δ̲, Φ = η⊗id, Φ⁻¹ = η⊗S̲."""
    cat = B.category
    alg = braided_tensor_algebra(cat, M, M_H, B.algebra, B.comodule)
    dm, db = M.dim, B.dim
    cols = []
    for p in range(dm * db):
        m, b = divmod(p, db)
        cols.append({(m * db + x) * db + y: a for k, a in B.delta_basis(b).items() for x, y in [divmod(k, db)]})
    co = Comodule(alg.space, LinMap(alg.space, alg.space.tensor(B.space), cols), B, "id⊗Δ̲")
    P = ComoduleAlgebra(alg, co, name or f"{M.name}⊗̲{B.name}")
    bb = _braided_bundle(P, B, tensor_comodule(M_H, B.comodule), P.name)
    Phi = LinMap(B.space, alg.space, [vtensor(M.unit, {b: ONE}, db) for b in range(db)])
    Phi_inv = LinMap(B.space, alg.space, [vtensor(M.unit, B.antipode.cols[b], db) for b in range(db)])
    return bb, Phi, Phi_inv


# --- bosonisation --------------------------------------------------------------------------------

class Bosonisation:
    """H·▷<B on H⊗B (index h*dim B + b) with its three bundle structures."""

    def __init__(self, cat: BraidedCategory, B: BraidedGroup, hopf: HopfAlgebra, H_R: Comodule):
        self.cat = cat
        self.H = cat.H
        self.B = B
        self.hopf = hopf
        self.H_R = H_R

    @cached_property
    def object_comodule(self) -> Comodule:
        """H_R⊗B as an object of the category: h⊗b ↦ h₁⊗b⁽¹⁾⊗h₂b⁽²⁾."""
        return tensor_comodule(self.H_R, self.B.comodule)

    def pi_B(self) -> LinMap:
        """π(h⊗b) = ε(h)b."""
        H, B = self.H, self.B
        db = B.dim
        return LinMap(self.hopf.space, B.space,
                      [{p % db: H.eps_basis(p // db)} if H.eps_basis(p // db) else {} for p in range(H.dim * db)])

    def pi_H(self) -> LinMap:
        """h⊗b ↦ h ε(b)."""
        B = self.B
        db = B.dim
        return LinMap(self.hopf.space, self.H.space,
                      [{p // db: B.eps_basis(p % db)} if B.eps_basis(p % db) else {} for p in range(self.hopf.dim)])

    def inclusion_H(self) -> LinMap:
        db = self.B.dim
        return LinMap(self.H.space, self.hopf.space, [{h * db + min(self.B.unit): ONE} for h in range(self.H.dim)])


def bosonise(cat: BraidedCategory, B: BraidedGroup, check: bool = True) -> Bosonisation:
    """Algebra H_R⊗̲B; coproduct Δ(h⊗b) = (h₁⊗b₍₁₎⁽¹⁾)⊗(h₂b₍₁₎⁽²⁾⊗b₍₂₎)."""
    H = cat.H
    HR = regular_comodule(H)
    alg = braided_tensor_algebra(cat, H.algebra, HR, B.algebra, B.comodule)
    dh, db = H.dim, B.dim
    d = dh * db

    def delta(p):
        h, b = divmod(p, db)
        out: dict = {}
        for k1, a in H.delta_basis(h).items():
            h1, h2 = divmod(k1, dh)
            for k2, c in B.delta_basis(b).items():
                b1, b2 = divmod(k2, db)
                for x, g, e in B.comodule.legs(b1):
                    for t, s in H.mul_basis(h2, g).items():
                        axpy(out, a * c * e * s, {(h1 * db + x) * d + (t * db + b2): ONE})
        return out

    coalg = Coalgebra.from_functions(alg.space, delta, lambda p: H.eps_basis(p // db) * B.eps_basis(p % db))
    S = ConvolutionAlgebra(coalg, alg).inverse(LinMap.identity(alg.space))
    if S is None:
        raise HopfAxiomFailure("bosonisation has no antipode")
    hopf = HopfAlgebra(alg, coalg, S, f"{H.name}·▷<{B.name}")
    alg.name = hopf.name
    if check:
        rep = check_hopf_axioms(hopf)
        if not rep.ok:
            bad = rep.failures()[0]
            raise HopfAxiomFailure(f"bosonisation fails {bad.name}", bad.witness)
    return Bosonisation(cat, B, hopf, HR)


def bosonisation_as_braided_bundle(bos: Bosonisation) -> tuple[BraidedBundle, LinMap, LinMap]:
    """H_R⊗̲B with ρ = id⊗Δ̲ over the base H."""
    bb, Phi, Phi_inv = braided_trivial_bundle(bos.H.algebra, bos.H_R, bos.B, f"{bos.hopf.name} over {bos.H.name}")
    if bb.P.algebra.mult != bos.hopf.algebra.mult:
        raise InvariantFailure("bosonisation algebra differs from H_R⊗̲B")
    return bb, Phi, Phi_inv


def bosonisation_as_quantum_bundle(bos: Bosonisation) -> tuple[PrincipalBundle, LinMap, LinMap]:
    """Right H-coaction (id⊗π_H)Δ; base ≅ B; Φ the inclusion of H, Φ⁻¹ = Φ∘S."""
    hopf, H = bos.hopf, bos.H
    co = Comodule(hopf.space, _compose_right(hopf.coalgebra.comult, bos.pi_H(), hopf.dim, H.dim), H,
                  "(id⊗π)Δ")
    P = ComoduleAlgebra(hopf.algebra, co, f"{hopf.name} over B")
    b = build_bundle(P)
    Phi = bos.inclusion_H()
    return b, Phi, Phi @ H.antipode


def _compose_right(delta: LinMap, f: LinMap, d_left: int, d_target: int) -> LinMap:
    """(id⊗f)∘Δ."""
    dr = f.source.dim
    cols = []
    for col in delta.cols:
        out: dict = {}
        for k, a in col.items():
            x, y = divmod(k, dr)
            for t, c in f.cols[y].items():
                axpy(out, a * c, {x * d_target + t: ONE})
        cols.append(out)
    return LinMap(delta.source, Space(d_left * d_target), cols)


# --- connections on the two fibrations ---------------------------------------------------------

def tensconn(bb: BraidedBundle, A: LinMap | None) -> LinMap:
    """ω(b) = 1⊗S̲b₍₁₎⊗1⊗b₍₂₎ − ε(b)1⊗1⊗1⊗1 + Ψ(S̲b₍₁₎⊗A(b₍₂₎)_i)⊗A(b₍₂₎)^i⊗b₍₃₎.

    A: B -> Ω¹H ⊂ H⊗H.  The last term reads the second b₍₂₎ as b₍₃₎, which is
    the ordering under which ω is Φ⁻¹*dΦ + Φ⁻¹*A*Φ.
    """
    B = bb.B
    P = bb.P
    dp, db = P.dim, B.dim
    dh = dp // db
    HR = Comodule(Space(dh), LinMap(Space(dh), Space(dh * B.category.H.dim),
                                    [B.category.H.delta_basis(h) for h in range(dh)]), B.category.H)
    psi = B.category.braiding(B.comodule, HR)
    S = B.antipode
    one = P.unit
    cols = []
    for b in range(db):
        out: dict = {}
        for k, a in B.delta_basis(b).items():
            b1, b2 = divmod(k, db)
            for s, c in S.cols[b1].items():
                axpy(out, a * c, vtensor({s: ONE}, {b2: ONE}, dp))
        if B.eps_basis(b):
            axpy(out, -B.eps_basis(b), vtensor(one, one, dp))
        if A is not None:
            for k, a in B.coalgebra.delta2({b: ONE}).items():
                b12, b3 = divmod(k, db)
                b1, b2 = divmod(b12, db)
                for i_j, c in A.cols[b2].items():
                    hi, hj = divmod(i_j, dh)
                    for s, e in S.cols[b1].items():
                        for t, f in psi.cols[s * dh + hi].items():
                            # Ψ(S̲b₍₁₎⊗A_i) ∈ H⊗B is the first P leg; A^i⊗b₍₃₎ the second
                            axpy(out, a * c * e * f, vtensor({t: ONE}, {hj * db + b3: ONE}, dp))
        cols.append(out)
    return LinMap(B.space, P.space.tensor(P.space), cols)


def qgtensconn(bos: Bosonisation, b: PrincipalBundle, A: LinMap | None, literal: bool = False) -> LinMap:
    """ω(h) = Sh₁⊗1⊗h₂⊗1 − ε(h)1⊗1⊗1⊗1 + Sh₁⊗A(h₂)_i⊗h₃⊗A(h₂)^i.

    With ``literal`` the legs A_i, A^i ∈ B are placed as written, P ∋ h⊗a; otherwise
    A: H -> Ω¹M is given on the computed base M and the term is Φ⁻¹(h₁)A(h₂)Φ(h₃).
    """
    H = bos.H
    hopf = bos.hopf
    db = bos.B.dim
    dp = hopf.dim
    Phi = bos.inclusion_H()
    Phi_inv = Phi @ H.antipode
    if not literal or A is None:
        At = None if A is None else gauge_field_in_total(b, A)
        return _omega_from(b, Phi, Phi_inv, At)
    base = _omega_from(b, Phi, Phi_inv, None)
    cols = [dict(c) for c in base.cols]
    dh = H.dim
    for h in range(dh):
        for k, a in H.coalgebra.delta2({h: ONE}).items():
            h12, h3 = divmod(k, dh)
            h1, h2 = divmod(h12, dh)
            for i_j, c in A.cols[h2].items():
                ai, aj = divmod(i_j, db)
                for s, e in H.antipode.cols[h1].items():
                    axpy(cols[h], a * c * e, vtensor({s * db + ai: ONE}, {h3 * db + aj: ONE}, dp))
    return LinMap(H.space, base.target, cols)


def braided_ad_candidate(bb: BraidedBundle, omega0: LinMap) -> Comodule | None:
    """The B-coaction β on B with ρ_{P⊗P}∘ω₀ = (ω₀⊗id)∘β, solved exactly.

    β(1) = 1⊗1; on the other basis vectors ω₀ must be injective.  Returns None
    when no such β exists or it fails the comodule axioms.
    """
    B = bb.B
    db = B.dim
    dpp = omega0.target.dim
    # ω₀⊗id : B⊗B -> (P⊗P)⊗B
    cols = []
    for x in range(db):
        for y in range(db):
            cols.append({k * db + y: a for k, a in omega0.cols[x].items()})
    big = LinMap(Space(db * db), Space(dpp * db), cols)
    unit = min(B.unit)
    out_cols = []
    for b in range(db):
        if b == unit:
            out_cols.append({unit * db + unit: ONE})
            continue
        target = bb.pp_coaction(omega0.cols[b])
        x = solve(big, target)
        if x is None:
            return None
        out_cols.append(x)
    co = Comodule(B.space, LinMap(B.space, B.space.tensor(B.space), out_cols), B, f"{B.name}_Ad")
    if not check_comodule(co).ok:
        return None
    return co


def check_braided_connection(bb: BraidedBundle, omega: LinMap, adjoint: Comodule | None = None) -> Report:
    """ω∘η = 0, values in Ω¹P, χ̃∘ω = η⊗(id−ηε), morphism in the category, and B_Ad covariance."""
    b = bb.bundle
    P, B = bb.P, bb.B
    db = B.dim
    rep = Report("braided connection")
    rep.add("ω(1) = 0", not omega(B.unit))
    bad = next((i for i in range(db) if not is_form(P.algebra, omega.cols[i], 1)), None)
    rep.add("values in Ω¹P", bad is None, None if bad is None else {"basis": B.space.label(bad)})
    expect = LinMap(B.space, b.chi_tilde.target,
                    [_one_tensor(P, {i: ONE}, db, -B.eps_basis(i), B.unit) for i in range(db)])
    compare(rep, "χ̃∘ω = 1⊗(id − ε)", b.chi_tilde @ omega, expect)
    w = intertwiner_witness(omega, B.comodule, tensor_comodule(bb.P_H, bb.P_H))
    rep.add("morphism in the category", w is None, w)
    if adjoint is not None:
        lhs = bb.pp_coaction @ omega
        cols = []
        for i in range(db):
            out: dict = {}
            for x, y, a in adjoint.legs(i):
                for k, c in omega.cols[x].items():
                    axpy(out, a * c, {k * db + y: ONE})
            cols.append(out)
        compare(rep, "B_Ad -> Ω¹P_ρ intertwiner", lhs, LinMap(B.space, lhs.target, cols))
    return rep


def _one_tensor(P: ComoduleAlgebra, h: dict, dh: int, eps_coeff, unit_h: dict) -> dict:
    """1⊗h + eps_coeff·1⊗1 in P⊗H."""
    out = vtensor(P.unit, h, dh)
    if eps_coeff:
        axpy(out, eps_coeff, vtensor(P.unit, unit_h, dh))
    return out


def morphism_gauge_fields(bb: BraidedBundle, base_alg: Algebra, base_co: Comodule) -> list[LinMap]:
    """A basis of morphisms A: B -> Ω¹(base) with A(1) = 0 (base-leg coordinates)."""
    B = bb.B
    target = tensor_comodule(base_co, base_co)
    sp = intertwiner_space(B.comodule, target)
    forms = universal_forms(base_alg, 1).space
    unit = min(B.unit)
    maps = sp.maps()
    # impose values in Ω¹ and A(1) = 0 on combinations of the intertwiner basis
    conds = []
    for f in maps:
        col: dict = {}
        for bi in range(B.dim):
            v = f.cols[bi]
            red = v if bi == unit else forms.reduce(v)
            for k, a in red.items():
                col[bi * target.dim + k] = a
        conds.append(col)
    K = kernel(LinMap(Space(len(maps)), Space(B.dim * target.dim), conds))
    out = []
    for vec in K.basis:
        cols = [{} for _ in range(B.dim)]
        for i, c in vec.items():
            for bi, col in enumerate(maps[i].cols):
                axpy(cols[bi], c, col)
        out.append(LinMap(B.space, target.space, cols))
    return out


# --- entwining ---------------------------------------------------------------------------------

class Entwining:
    def __init__(self, C: Coalgebra, A: Algebra, psi: LinMap, name: str = ""):
        self.C = C
        self.A = A
        self.psi = psi
        self.name = name


def check_entwining(E: Entwining) -> Report:
    C, A, psi = E.C, E.A, E.psi
    dc, da = C.dim, A.dim
    rep = Report(f"entwining {E.name}")
    # ψ(c⊗aa') = a_ψ a'_ψ ⊗ c^ψψ
    bad = None
    for c in range(dc):
        for a in range(da):
            first = psi.cols[c * da + a]
            for a2 in range(da):
                lhs: dict = {}
                for k, s in A.mul_basis(a, a2).items():
                    axpy(lhs, s, psi.cols[c * da + k])
                rhs: dict = {}
                for k1, s in first.items():
                    x, c1 = divmod(k1, dc)
                    for k2, t in psi.cols[c1 * da + a2].items():
                        y, c2 = divmod(k2, dc)
                        for z, u in A.mul_basis(x, y).items():
                            axpy(rhs, s * t * u, {z * dc + c2: ONE})
                if lhs != rhs:
                    bad = {"c": C.space.label(c), "a": A.space.label(a), "a'": A.space.label(a2)}
                    break
            if bad:
                break
        if bad:
            break
    rep.add("ψ∘(id⊗m) = (m⊗id)(id⊗ψ)(ψ⊗id)", bad is None, bad)
    bad = next((c for c in range(dc) if psi(vtensor({c: ONE}, A.unit, da)) != vtensor(A.unit, {c: ONE}, dc)), None)
    rep.add("ψ(c⊗1) = 1⊗c", bad is None, None if bad is None else {"c": C.space.label(bad)})
    bad = None
    for c in range(dc):
        for a in range(da):
            lhs: dict = {}
            for k, s in psi.cols[c * da + a].items():
                x, c1 = divmod(k, dc)
                for k2, t in C.delta_basis(c1).items():
                    axpy(lhs, s * t, {x * dc * dc + k2: ONE})
            rhs: dict = {}
            for k, s in C.delta_basis(c).items():
                ca, cb = divmod(k, dc)
                for k2, t in psi.cols[cb * da + a].items():
                    x, cb2 = divmod(k2, dc)
                    for k3, u in psi.cols[ca * da + x].items():
                        y, ca2 = divmod(k3, dc)
                        axpy(rhs, s * t * u, {(y * dc + ca2) * dc + cb2: ONE})
            if lhs != rhs:
                bad = {"c": C.space.label(c), "a": A.space.label(a)}
                break
        if bad:
            break
    rep.add("(id⊗Δ)ψ = (ψ⊗id)(id⊗ψ)(Δ⊗id)", bad is None, bad)
    bad = None
    for c in range(dc):
        for a in range(da):
            lhs: dict = {}
            for k, s in psi.cols[c * da + a].items():
                x, c1 = divmod(k, dc)
                e = C.eps_basis(c1)
                if e:
                    axpy(lhs, s * e, {x: ONE})
            rhs = {a: C.eps_basis(c)} if C.eps_basis(c) else {}
            if lhs != rhs:
                bad = {"c": C.space.label(c), "a": A.space.label(a)}
                break
        if bad:
            break
    rep.add("(id⊗ε)ψ = ε⊗id", bad is None, bad)
    return rep


def entwining_from_bosonisation(bos: Bosonisation) -> tuple[Entwining, Report]:
    """ψ(c⊗(h⊗b)) = h₁⊗b₍₁₎⁽¹⁾⊗c⁽¹⁾b₍₂₎ R(c⁽²⁾⊗h₂b₍₁₎⁽²⁾), compared with the other two forms."""
    H, B, hopf = bos.H, bos.B, bos.hopf
    R = bos.cat.R
    dh, db, dp = H.dim, B.dim, hopf.dim
    cols = []
    for c in range(db):
        cl = list(B.comodule.legs(c))
        for p in range(dp):
            h, b = divmod(p, db)
            out: dict = {}
            for k1, a in H.delta_basis(h).items():
                h1, h2 = divmod(k1, dh)
                for k2, e in B.delta_basis(b).items():
                    b1, b2 = divmod(k2, db)
                    for x, g, s in B.comodule.legs(b1):
                        hg = H.mul_basis(h2, g)
                        for c1, cg, t in cl:
                            r = R.pair({cg: ONE}, hg)
                            if not r:
                                continue
                            for z, u in B.mul_basis(c1, b2).items():
                                axpy(out, a * e * s * t * r * u, {(h1 * db + x) * db + z: ONE})
            cols.append(out)
    psi = LinMap(B.space.tensor(hopf.space), hopf.space.tensor(B.space), cols)
    E = Entwining(B.coalgebra, hopf.algebra, psi, f"{hopf.name} over {B.name}")
    rep = check_entwining(E)
    if not rep.ok:
        bad = rep.failures()[0]
        raise EntwiningAxiomFailure(f"entwining fails {bad.name}", bad.witness)
    rep.extend(compare_entwinings(bos, psi))
    return E, rep


def _homogeneous_psi(bos: Bosonisation) -> LinMap:
    """ψ(c⊗u) = u₁⊗π((1⊗c)u₂)."""
    hopf, B = bos.hopf, bos.B
    db, dp = B.dim, hopf.dim
    pi = bos.pi_B()
    unit_h = min(bos.H.unit)
    cols = []
    for c in range(db):
        g = {unit_h * db + c: ONE}
        for p in range(dp):
            out: dict = {}
            for k, a in hopf.delta_basis(p).items():
                u1, u2 = divmod(k, dp)
                for t, s in pi(hopf.mul(g, {u2: ONE})).items():
                    axpy(out, a * s, {u1 * db + t: ONE})
            cols.append(out)
    return LinMap(B.space.tensor(hopf.space), hopf.space.tensor(B.space), cols)


def _braided_psi(bos: Bosonisation) -> LinMap:
    """ψ(c⊗u) = Ψ(c⊗u⁽¹⁾)u⁽²⁾ with ρ = id⊗Δ̲."""
    B = bos.B
    db, dp = B.dim, bos.hopf.dim
    Pobj = bos.object_comodule
    psi = bos.cat.braiding(B.comodule, Pobj)
    cols = []
    for c in range(db):
        for p in range(dp):
            h, b = divmod(p, db)
            out: dict = {}
            for k, a in B.delta_basis(b).items():
                b1, b2 = divmod(k, db)
                for k2, s in psi.cols[c * dp + h * db + b1].items():
                    u, c1 = divmod(k2, db)
                    for z, t in B.mul_basis(c1, b2).items():
                        axpy(out, a * s * t, {u * db + z: ONE})
            cols.append(out)
    return LinMap(B.space.tensor(bos.hopf.space), bos.hopf.space.tensor(B.space), cols)


def compare_entwinings(bos: Bosonisation, psi: LinMap) -> Report:
    rep = Report("entwining comparisons")
    compare(rep, "explicit ψ = homogeneous-space ψ", psi, _homogeneous_psi(bos))
    compare(rep, "explicit ψ = braided-bundle ψ", psi, _braided_psi(bos))
    B, hopf = bos.B, bos.hopf
    db, dp = B.dim, hopf.dim
    unit_b = min(B.unit)
    induced = LinMap(hopf.space, hopf.space.tensor(B.space), [psi.cols[unit_b * dp + p] for p in range(dp)])
    cols = []
    for p in range(dp):
        h, b = divmod(p, db)
        cols.append({(h * db + x) * db + y: a for k, a in B.delta_basis(b).items() for x, y in [divmod(k, db)]})
    compare(rep, "ψ(1⊗u) = (id⊗Δ̲)u", induced, LinMap(hopf.space, induced.target, cols))
    pi = bos.pi_B()
    lhs = B.coalgebra.comult @ pi
    rhs_cols = []
    for p in range(dp):
        out: dict = {}
        for k, a in hopf.delta_basis(p).items():
            u1, u2 = divmod(k, dp)
            axpy(out, a, vtensor(pi.cols[u1], pi.cols[u2], db))
        rhs_cols.append(out)
    compare(rep, "Δ̲∘π = (π⊗π)∘Δ", lhs, LinMap(hopf.space, lhs.target, rhs_cols))
    rep.add("ε∘π = ε", all(B.eps(pi.cols[p]) == hopf.eps_basis(p) for p in range(dp)))
    ker = kernel(pi)
    bad = next((k for k in ker.basis for u in range(dp) if pi(hopf.mul(k, {u: ONE}))), None)
    rep.add("ker π is a right ideal", bad is None, None if bad is None else {"element": hopf.space.describe(bad)})
    return rep


def find_taft_isomorphism(bos: Bosonisation, T: HopfAlgebra, n: int) -> LinMap | None:
    """A Hopf isomorphism taft -> bosonisation of the form g ↦ g^a, x ↦ x g^b.

    ``T`` has basis g^a x^b at index a + n b; the bosonisation has g at index
    dim B and x at index 1.
    """
    H = bos.hopf
    db = bos.B.dim
    x = {1: ONE}
    for a in range(1, n):
        for b in range(n):
            gi = {(a % n) * db: ONE}
            xi = H.mul(x, {b * db: ONE})
            cols = []
            for i in range(n * n):
                v = dict(H.unit)
                for _ in range(i % n):
                    v = H.mul(v, gi)
                for _ in range(i // n):
                    v = H.mul(v, xi)
                cols.append(v)
            phi = LinMap(T.space, H.space, cols)
            if is_hopf_isomorphism(phi, T, H):
                return phi
    return None
