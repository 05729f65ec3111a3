"""Local gauge theory on the base: gauge fields, curvature, matter fields, local gauge transformations.

Only a coalgebra B with a distinguished group-like 1 is needed.  Form-valued
maps X -> ΩⁿM are stored as LinMaps into M^{⊗(n+1)} together with their degree.
Convolutions name the splitting explicitly: the coproduct of B or a coaction
V -> V⊗B.
"""
from __future__ import annotations

from dataclasses import dataclass

from .calculus import differential, form_product, universal_forms
from .errors import BianchiFailure, InvariantFailure
from .field import ONE, Cyc
from .hopf import Algebra, Coalgebra, ConvolutionAlgebra
from .linalg import LinMap, Space, axpy
from .report import Report, compare

__all__ = [
    "FormMap", "LocalTheory", "gauge_field", "matter_field", "curvature", "nabla", "bianchi_residual",
    "local_gauge_transform", "transform_matter", "check_local_theory", "random_gauge_field",
    "random_matter_field", "random_gauge_transform",
]


@dataclass(frozen=True)
class FormMap:
    lin: LinMap
    degree: int

    def __add__(self, other: "FormMap") -> "FormMap":
        _same_degree(self, other)
        return FormMap(self.lin + other.lin, self.degree)

    def __sub__(self, other: "FormMap") -> "FormMap":
        _same_degree(self, other)
        return FormMap(self.lin - other.lin, self.degree)

    def __neg__(self) -> "FormMap":
        return FormMap(-self.lin, self.degree)

    def scale(self, s) -> "FormMap":
        return FormMap(self.lin.scale(s), self.degree)

    @property
    def is_zero(self) -> bool:
        return not any(self.lin.cols)


def _same_degree(f: FormMap, g: FormMap) -> None:
    if f.degree != g.degree:
        raise InvariantFailure("form degrees differ", {"left": f.degree, "right": g.degree})


class LocalTheory:
    """Base algebra M with a coalgebra B whose group-like ``one`` is the unit."""

    def __init__(self, M: Algebra, B: Coalgebra, one: dict):
        self.M = M
        self.B = B
        self.one = dict(one)
        if B.delta(self.one) != {i * B.dim + j: a * b for i, a in self.one.items() for j, b in self.one.items()}:
            raise InvariantFailure("distinguished element of B is not group-like")
        self.conv = ConvolutionAlgebra(B, M)

    def forms_space(self, n: int) -> Space:
        return Space(self.M.dim ** (n + 1))

    def d(self, f: FormMap) -> FormMap:
        cols = [differential(self.M, c, f.degree, check=False) for c in f.lin.cols]
        return FormMap(LinMap(f.lin.source, self.forms_space(f.degree + 1), cols), f.degree + 1)

    def convolve(self, f: FormMap, g: FormMap, split: LinMap | None = None) -> FormMap:
        """(f*g)(x) = f(x₁) g(x₂), where x ↦ x₁⊗x₂ is ``split`` (default: the coproduct of B)."""
        split = self.B.comult if split is None else split
        db = self.B.dim
        M = self.M
        cols = []
        for col in split.cols:
            out: dict = {}
            for k, a in col.items():
                x, y = divmod(k, db)
                fx, gy = f.lin.cols[x], g.lin.cols[y]
                if fx and gy:
                    axpy(out, a, form_product(M, fx, f.degree, gy, g.degree))
            cols.append(out)
        return FormMap(LinMap(f.lin.source, self.forms_space(f.degree + g.degree), cols), f.degree + g.degree)

    def inverse(self, gamma: FormMap) -> FormMap:
        if gamma.degree != 0:
            raise InvariantFailure("only 0-form valued maps are convolution inverted")
        inv = self.conv.inverse(gamma.lin)
        if inv is None:
            raise InvariantFailure("γ is not convolution invertible")
        return FormMap(LinMap(self.B.space, self.forms_space(0), inv.cols), 0)

    def values_are_forms(self, f: FormMap) -> bool:
        sp = universal_forms(self.M, f.degree).space
        return all(sp.contains(c) for c in f.lin.cols)


def gauge_field(T: LocalTheory, A: LinMap) -> FormMap:
    f = FormMap(A, 1)
    if not T.values_are_forms(f):
        raise InvariantFailure("A does not take values in Ω¹M")
    if A(T.one):
        raise InvariantFailure("A(1) ≠ 0")
    return f


def matter_field(T: LocalTheory, sigma: LinMap, degree: int) -> FormMap:
    f = FormMap(sigma, degree)
    if not T.values_are_forms(f):
        raise InvariantFailure(f"σ does not take values in Ω^{degree}M")
    return f


def bianchi_residual(T: LocalTheory, A: FormMap, F: FormMap) -> FormMap:
    """dF + A*F − F*A."""
    return T.d(F) + T.convolve(A, F) - T.convolve(F, A)


def curvature(T: LocalTheory, A: FormMap) -> FormMap:
    """F = dA + A*A, with the Bianchi identity checked before returning."""
    F = T.d(A) + T.convolve(A, A)
    res = bianchi_residual(T, A, F)
    if not res.is_zero:
        j = next(i for i, c in enumerate(res.lin.cols) if c)
        raise BianchiFailure("dF + A*F − F*A ≠ 0", {"basis": T.B.space.label(j)})
    return F


def nabla(T: LocalTheory, sigma: FormMap, A: FormMap, coaction: LinMap) -> FormMap:
    """∇σ = dσ − (−1)ⁿ σ*A, the convolution using the coaction of V."""
    sign = ONE if sigma.degree % 2 == 0 else -ONE
    return T.d(sigma) - T.convolve(sigma, A, coaction).scale(sign)


def local_gauge_transform(T: LocalTheory, A: FormMap, gamma: FormMap) -> FormMap:
    """A^γ = γ⁻¹*A*γ + γ⁻¹*dγ."""
    gi = T.inverse(gamma)
    return T.convolve(T.convolve(gi, A), gamma) + T.convolve(gi, T.d(gamma))


def transform_matter(T: LocalTheory, sigma: FormMap, gamma: FormMap, coaction: LinMap) -> FormMap:
    """σ^γ = σ*γ."""
    return T.convolve(sigma, gamma, coaction)


def check_local_theory(T: LocalTheory, A: FormMap, sigma: FormMap, coaction: LinMap,
                       gammas: list[FormMap] = ()) -> Report:
    rep = Report("local gauge theory")
    F = T.d(A) + T.convolve(A, A)
    res = bianchi_residual(T, A, F)
    compare(rep, "dF + A*F − F*A = 0", res.lin, LinMap.zero(res.lin.source, res.lin.target))
    n2 = nabla(T, nabla(T, sigma, A, coaction), A, coaction)
    compare(rep, "∇²σ = −σ*F", n2.lin, (-T.convolve(sigma, F, coaction)).lin)
    for i, g in enumerate(gammas):
        Ag = local_gauge_transform(T, A, g)
        gi = T.inverse(g)
        Fg = T.d(Ag) + T.convolve(Ag, Ag)
        compare(rep, f"F^γ = γ⁻¹*F*γ [{i}]", Fg.lin, T.convolve(T.convolve(gi, F), g).lin)
        sg = transform_matter(T, sigma, g, coaction)
        compare(rep, f"∇_(A^γ)(σ*γ) = (∇σ)*γ [{i}]", nabla(T, sg, Ag, coaction).lin,
                T.convolve(nabla(T, sigma, A, coaction), g, coaction).lin)
        for j, g2 in enumerate(gammas):
            if j == i:
                continue
            lhs = local_gauge_transform(T, Ag, g2)
            rhs = local_gauge_transform(T, A, T.convolve(g, g2))
            compare(rep, f"(A^γ)^γ′ = A^(γ*γ′) [{i},{j}]", lhs.lin, rhs.lin)
    return rep


# --- random exact data ---------------------------------------------------------------------

def _random_combination(rng, basis: list[dict], spread: int) -> dict:
    out: dict = {}
    for v in basis:
        s = rng.randint(-spread, spread)
        if s:
            axpy(out, Cyc(s), v)
    return out


def random_gauge_field(T: LocalTheory, rng, spread: int = 3) -> FormMap:
    if len(T.one) != 1:
        raise InvariantFailure("the group-like 1 of B must be a basis vector")
    basis = universal_forms(T.M, 1).space.basis
    unit = min(T.one)
    cols = [{} if i == unit else _random_combination(rng, basis, spread) for i in range(T.B.dim)]
    return gauge_field(T, LinMap(T.B.space, T.forms_space(1), cols))


def random_matter_field(T: LocalTheory, source: Space, degree: int, rng, spread: int = 3) -> FormMap:
    basis = universal_forms(T.M, degree).space.basis
    cols = [_random_combination(rng, basis, spread) for _ in range(source.dim)]
    return matter_field(T, LinMap(source, T.forms_space(degree), cols), degree)


def random_gauge_transform(T: LocalTheory, rng, spread: int = 3, tries: int = 50) -> FormMap:
    """γ: B -> M with γ(1) = 1, convolution invertible, small integer coefficients."""
    unit = min(T.one)
    for _ in range(tries):
        cols = []
        for i in range(T.B.dim):
            if i == unit:
                cols.append(dict(T.M.unit))
            else:
                cols.append({a: Cyc(rng.randint(-spread, spread)) for a in range(T.M.dim)})
                cols[-1] = {a: x for a, x in cols[-1].items() if x}
        g = FormMap(LinMap(T.B.space, T.forms_space(0), cols), 0)
        if T.conv.inverse(g.lin) is not None:
            return g
    raise InvariantFailure("no invertible γ found")
