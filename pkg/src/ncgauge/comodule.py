"""Right comodules, comodule algebras, coinvariants and intertwiners.

A coaction V -> V⊗H is a LinMap whose target index is ``v * dim(H) + h``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, InvariantFailure
from .field import ONE, ZERO
from .hopf import Algebra, HopfAlgebra
from .linalg import LinMap, Space, Subspace, axpy, kernel, vtensor
from .report import Report

__all__ = [
    "Comodule", "ComoduleAlgebra", "FixedSubalgebra", "PointedComodule",
    "check_comodule", "check_comodule_algebra", "fixed_subalgebra", "invariants",
    "regular_comodule", "left_regular_comodule", "adjoint_comodule", "trivial_comodule",
    "standard_comodules", "tensor_comodule", "intertwiner_space", "IntertwinerSpace",
    "is_intertwiner", "intertwiner_witness",
]


class Comodule:
    def __init__(self, space: Space, coaction: LinMap, host: HopfAlgebra, name: str = ""):
        if coaction.source.dim != space.dim or coaction.target.dim != space.dim * host.dim:
            raise DimensionMismatch("coaction must map V -> V⊗H")
        self.space = space
        self.coaction = coaction
        self.host = host
        self.name = name

    @staticmethod
    def from_function(space: Space, host: HopfAlgebra, fn, name: str = "") -> "Comodule":
        return Comodule(space, LinMap(space, space.tensor(host.space), [fn(i) for i in range(space.dim)]),
                        host, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def rho_basis(self, i: int) -> dict:
        return self.coaction.cols[i]

    def rho(self, v: dict) -> dict:
        return self.coaction(v)

    def legs(self, i: int):
        """Iterate (v, h, coefficient) over the coaction of basis vector i."""
        dh = self.host.dim
        for k, a in self.coaction.cols[i].items():
            v, h = divmod(k, dh)
            yield v, h, a

    def coassociativity_witness(self):
        H = self.host
        dh = H.dim
        for i in range(self.dim):
            lhs: dict = {}
            rhs: dict = {}
            for v, h, a in self.legs(i):
                # (ρ⊗id)ρ
                for k, b in self.coaction.cols[v].items():
                    axpy(lhs, a * b, {k * dh + h: ONE})
                # (id⊗Δ)ρ
                for k, b in H.delta_basis(h).items():
                    axpy(rhs, a * b, {v * dh * dh + k: ONE})
            if lhs != rhs:
                return {"basis": self.space.label(i)}
        return None

    def counit_witness(self):
        H = self.host
        for i in range(self.dim):
            out: dict = {}
            for v, h, a in self.legs(i):
                e = H.eps_basis(h)
                if e:
                    axpy(out, a * e, {v: ONE})
            if out != {i: ONE}:
                return {"basis": self.space.label(i), "image": self.space.describe(out)}
        return None

    def invariant_subspace(self) -> Subspace:
        return invariants(self)


def check_comodule(V: Comodule) -> Report:
    rep = Report(f"comodule {V.name}".strip())
    w = V.coassociativity_witness()
    rep.add("coaction coassociativity", w is None, w)
    w = V.counit_witness()
    rep.add("coaction counit", w is None, w)
    return rep


def _unit_map(H: HopfAlgebra, dim: int) -> LinMap:
    """v -> v⊗1 on a space of dimension ``dim``."""
    sp = Space(dim)
    return LinMap(sp, Space(dim * H.dim), [vtensor({i: ONE}, H.unit, H.dim) for i in range(dim)])


def invariants(V: Comodule) -> Subspace:
    """{v | ρ(v) = v⊗1}."""
    diff = V.coaction - LinMap(V.space, V.coaction.target, _unit_map(V.host, V.dim).cols)
    return kernel(diff)


class ComoduleAlgebra:
    """An algebra P with a coaction that is an algebra map."""

    def __init__(self, algebra: Algebra, comodule: Comodule, name: str = ""):
        if algebra.dim != comodule.dim:
            raise DimensionMismatch("algebra and comodule must share one space")
        self.algebra = algebra
        self.comodule = comodule
        self.name = name

    @property
    def space(self) -> Space:
        return self.algebra.space

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def host(self) -> HopfAlgebra:
        return self.comodule.host

    @property
    def unit(self) -> dict:
        return self.algebra.unit

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def rho(self, v):
        return self.comodule.rho(v)

    def with_product(self, algebra: Algebra, name: str = "") -> "ComoduleAlgebra":
        return ComoduleAlgebra(algebra, self.comodule, name or self.name)


def _tensor_algebra_mul(P: Algebra, H: HopfAlgebra, x: dict, y: dict) -> dict:
    dh = H.dim
    out: dict = {}
    for k1, a in x.items():
        p1, h1 = divmod(k1, dh)
        for k2, b in y.items():
            p2, h2 = divmod(k2, dh)
            pp = P.mul_basis(p1, p2)
            hh = H.mul_basis(h1, h2)
            for i, c in pp.items():
                for j, e in hh.items():
                    key = i * dh + j
                    v = out.get(key, ZERO) + a * b * c * e
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def check_comodule_algebra(P: ComoduleAlgebra) -> Report:
    rep = check_comodule(P.comodule)
    rep.title = f"comodule algebra {P.name}".strip()
    w = P.algebra.associativity_witness()
    rep.add("associativity", w is None, w)
    w = P.algebra.unit_witness()
    rep.add("unit", w is None, w)
    H = P.host
    d = P.dim
    witness = None
    for i in range(d):
        for j in range(d):
            lhs = P.rho(P.algebra.mul_basis(i, j))
            rhs = _tensor_algebra_mul(P.algebra, H, P.comodule.rho_basis(i), P.comodule.rho_basis(j))
            if lhs != rhs:
                witness = {"pair": [P.space.label(i), P.space.label(j)]}
                break
        if witness:
            break
    rep.add("coaction multiplicative", witness is None, witness)
    ok = P.rho(P.unit) == vtensor(P.unit, H.unit, H.dim)
    rep.add("coaction unital", ok)
    return rep


@dataclass
class FixedSubalgebra:
    """Coinvariants M ⊂ P, with product written in the echelon basis of M."""

    subspace: Subspace
    inclusion: LinMap
    algebra: Algebra

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def contains(self, v: dict) -> bool:
        return self.subspace.contains(v)

    def coords(self, v: dict) -> dict:
        return {i: c for i, c in enumerate(self.subspace.coords(v)) if c}

    def embed(self, m: dict) -> dict:
        return self.inclusion(m)


def fixed_subalgebra(P: ComoduleAlgebra) -> FixedSubalgebra:
    sub = invariants(P.comodule)
    sub = Subspace(P.space, [(p, r) for p, r in zip(sub.pivots, sub.basis)])
    labels = [_vector_label(P.space, b) for b in sub.basis]
    sp = Space(labels) if len(set(labels)) == len(labels) else Space.named(sub.dim, "m")
    incl = LinMap(sp, P.space, list(sub.basis))
    cols = []
    for a in sub.basis:
        for b in sub.basis:
            prod = P.mul(a, b)
            if not sub.contains(prod):
                raise InvariantFailure("coinvariants not closed under multiplication",
                                       {"product": P.space.describe(prod)})
            cols.append({i: c for i, c in enumerate(sub.coords(prod)) if c})
    if not sub.contains(P.unit):
        raise InvariantFailure("unit is not coinvariant")
    unit = {i: c for i, c in enumerate(sub.coords(P.unit)) if c}
    alg = Algebra(sp, LinMap(sp.tensor(sp), sp, cols), unit, f"M({P.name})")
    return FixedSubalgebra(sub, incl, alg)


def _vector_label(space: Space, v: dict) -> str:
    if len(v) == 1:
        (i, c), = v.items()
        if c == 1:
            return space.label(i)
    return space.describe(v)


class PointedComodule:
    """A comodule with a distinguished coinvariant vector 1."""

    def __init__(self, comodule: Comodule, one: dict):
        self.comodule = comodule
        self.one = dict(one)
        H = comodule.host
        if comodule.rho(self.one) != vtensor(self.one, H.unit, H.dim):
                raise InvariantFailure("distinguished vector is not coinvariant")

    @property
    def space(self) -> Space:
        return self.comodule.space

    @property
    def dim(self) -> int:
        return self.comodule.dim


# --- standard comodules ------------------------------------------------------------

def regular_comodule(H: HopfAlgebra) -> Comodule:
    """H_R: ρ = Δ."""
    return Comodule(H.space, H.coalgebra.comult, H, "H_R")


def left_regular_comodule(H: HopfAlgebra) -> Comodule:
    """H_L: h -> h2 ⊗ S h1."""
    d = H.dim

    def fn(i):
        out: dict = {}
        for k, a in H.delta_basis(i).items():
            h1, h2 = divmod(k, d)
            axpy(out, a, vtensor({h2: ONE}, H.antipode.cols[h1], d))
        return out

    return Comodule.from_function(H.space, H, fn, "H_L")


def adjoint_comodule(H: HopfAlgebra) -> Comodule:
    """H_Ad: h -> h2 ⊗ (S h1) h3."""
    d = H.dim

    def fn(i):
        out: dict = {}
        for k, a in H.coalgebra.delta2({i: ONE}).items():
            h12, h3 = divmod(k, d)
            h1, h2 = divmod(h12, d)
            axpy(out, a, vtensor({h2: ONE}, H.mul(H.antipode.cols[h1], {h3: ONE}), d))
        return out

    return Comodule.from_function(H.space, H, fn, "H_Ad")


def trivial_comodule(H: HopfAlgebra, dim: int = 1, name: str = "k") -> Comodule:
    sp = Space(["1"]) if dim == 1 else Space.named(dim, "t")
    return Comodule(sp, LinMap(sp, sp.tensor(H.space), _unit_map(H, dim).cols), H, name)


def standard_comodules(H: HopfAlgebra) -> dict:
    return {"H_R": regular_comodule(H), "H_L": left_regular_comodule(H), "H_Ad": adjoint_comodule(H)}


def tensor_comodule(V: Comodule, W: Comodule) -> Comodule:
    """v⊗w -> v(1)⊗w(1)⊗v(2)w(2)."""
    if V.host is not W.host and V.host.dim != W.host.dim:
        raise DimensionMismatch("comodules over different Hopf algebras")
    H = V.host
    dh, dw = H.dim, W.dim
    sp = V.space.tensor(W.space)
    cache_w = [list(W.legs(j)) for j in range(dw)]

    def fn(p):
        i, j = divmod(p, dw)
        out: dict = {}
        for v, h, a in V.legs(i):
            for w, g, b in cache_w[j]:
                for t, c in H.mul_basis(h, g).items():
                    key = (v * dw + w) * dh + t
                    x = out.get(key, ZERO) + a * b * c
                    if x:
                        out[key] = x
                    else:
                        out.pop(key, None)
        return out

    return Comodule.from_function(sp, H, fn, f"{V.name}⊗{W.name}")


# --- intertwiners ---------------------------------------------------------------------

def intertwiner_witness(f: LinMap, V: Comodule, W: Comodule):
    """First basis vector where ρ_W∘f ≠ (f⊗id)∘ρ_V, or None."""
    dh = V.host.dim
    for i in range(V.dim):
        lhs = W.rho(f.cols[i])
        rhs: dict = {}
        for v, h, a in V.legs(i):
            for w, b in f.cols[v].items():
                axpy(rhs, a * b, {w * dh + h: ONE})
        if lhs != rhs:
            return {"basis": V.space.label(i),
                    "rho(f(v))": W.space.tensor(V.host.space).describe(lhs),
                    "(f⊗id)rho(v)": W.space.tensor(V.host.space).describe(rhs)}
    return None


def is_intertwiner(f: LinMap, V: Comodule, W: Comodule) -> bool:
    return intertwiner_witness(f, V, W) is None


class IntertwinerSpace:
    """Subspace of Hom(V, W); a map f is flattened as index v * dim(W) + w."""

    def __init__(self, V: Comodule, W: Comodule, subspace: Subspace):
        self.V = V
        self.W = W
        self.subspace = subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_map(self, vec: dict) -> LinMap:
        dw = self.W.dim
        cols = [{} for _ in range(self.V.dim)]
        for k, x in vec.items():
            v, w = divmod(k, dw)
            cols[v][w] = x
        return LinMap(self.V.space, self.W.space, cols)

    def flatten(self, f: LinMap) -> dict:
        dw = self.W.dim
        return {v * dw + w: x for v, col in enumerate(f.cols) for w, x in col.items()}

    def maps(self) -> list[LinMap]:
        return [self.to_map(b) for b in self.subspace.basis]

    def contains(self, f: LinMap) -> bool:
        return self.subspace.contains(self.flatten(f))


def intertwiner_space(V: Comodule, W: Comodule) -> IntertwinerSpace:
    dv, dw, dh = V.dim, W.dim, V.host.dim
    block = dw * dh
    # ρ_V(u) coefficients indexed by the V-leg so each unknown finds its terms quickly
    by_leg: list[list] = [[] for _ in range(dv)]
    for u in range(dv):
        for v, h, a in V.legs(u):
            by_leg[v].append((u, h, a))
    cols = []
    for v in range(dv):
        for w in range(dw):
            col: dict = {}
            for k, a in W.coaction.cols[w].items():
                col[v * block + k] = a
            for u, h, a in by_leg[v]:
                key = u * block + w * dh + h
                x = col.get(key, ZERO) - a
                if x:
                    col[key] = x
                else:
                    col.pop(key, None)
            cols.append(col)
    system = LinMap(Space(dv * dw), Space(dv * block), cols)
    return IntertwinerSpace(V, W, kernel(system))
