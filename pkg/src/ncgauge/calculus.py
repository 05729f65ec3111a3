"""Universal differential calculus.

n-forms are stored as raw vectors over P^{⊗(n+1)} (row-major legs).  Ω^nP is
the set of tensors killed by multiplication of every adjacent pair of legs;
membership is tested directly from that characterisation, and an explicit
basis is built only on request.
"""
from __future__ import annotations

from functools import cached_property

from .errors import NotAForm
from .field import ONE, ZERO
from .hopf import Algebra
from .linalg import LinMap, Space, Subspace, axpy, kernel, vtensor

__all__ = [
    "UniversalForms", "universal_forms", "differential", "d0", "is_form",
    "form_product", "left_mul", "right_mul", "adjacent_contraction",
    "horizontal_span", "strong_span", "base_forms_in_total",
]


def adjacent_contraction(A: Algebra, v: dict, n: int, pos: int) -> dict:
    """Multiply legs pos, pos+1 of v ∈ A^{⊗(n+1)}, giving an element of A^{⊗n}."""
    d = A.dim
    right = d ** (n - pos - 1)
    out: dict = {}
    for k, a in v.items():
        head, rest = divmod(k, d ** (n - pos + 1))
        i, rest = divmod(rest, d * right)
        j, tail = divmod(rest, right)
        for t, c in A.mul_basis(i, j).items():
            key = (head * d + t) * right + tail
            x = out.get(key, ZERO) + a * c
            if x:
                out[key] = x
            else:
                out.pop(key, None)
    return out


def is_form(A: Algebra, v: dict, n: int) -> bool:
    return all(not adjacent_contraction(A, v, n, p) for p in range(n))


def _contraction_map(A: Algebra, n: int, pos: int) -> LinMap:
    d = A.dim
    src = Space(d ** (n + 1))
    return LinMap(src, Space(d ** n), [adjacent_contraction(A, {k: ONE}, n, pos) for k in range(src.dim)])


class UniversalForms:
    def __init__(self, algebra: Algebra, degree: int):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.algebra = algebra
        self.degree = degree
        self.ambient = Space(algebra.dim ** (degree + 1))

    @cached_property
    def space(self) -> Subspace:
        A, n = self.algebra, self.degree
        if n == 0:
            return Subspace.full(self.ambient)
        sub = kernel(_contraction_map(A, n, 0))
        for p in range(1, n):
            sub = sub.intersect(kernel(_contraction_map(A, n, p)))
        return sub

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, v: dict) -> bool:
        return is_form(self.algebra, v, self.degree)

    __contains__ = contains


def universal_forms(P: Algebra, n: int) -> UniversalForms:
    return UniversalForms(P, n)


def differential(A: Algebra, v: dict, n: int, check: bool = True) -> dict:
    """d(u0⊗…⊗un) = Σ_i (−1)^i (1 inserted at slot i), i = 0..n+1."""
    if check and not is_form(A, v, n):
        raise NotAForm(f"input is not a {n}-form")
    d = A.dim
    unit = A.unit
    out: dict = {}
    for i in range(n + 2):
        sign = ONE if i % 2 == 0 else -ONE
        right = d ** (n + 1 - i)
        for k, a in v.items():
            head, tail = divmod(k, right)
            for u, c in unit.items():
                key = (head * d + u) * right + tail
                x = out.get(key, ZERO) + sign * a * c
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
    return out


def d0(A: Algebra, v: dict) -> dict:
    """du = 1⊗u − u⊗1."""
    d = A.dim
    out = vtensor(A.unit, v, d)
    axpy(out, -ONE, vtensor(v, A.unit, d))
    return out


def left_mul(A: Algebra, x: dict, v: dict, n: int) -> dict:
    """x · v for x ∈ A and v ∈ A^{⊗(n+1)} (acts on the first leg)."""
    d = A.dim
    right = d ** n
    out: dict = {}
    for k, a in v.items():
        i, tail = divmod(k, right)
        axpy(out, a, {t * right + tail: c for t, c in A.mul(x, {i: ONE}).items()})
    return out


def right_mul(A: Algebra, v: dict, x: dict, n: int) -> dict:
    """v · x (acts on the last leg)."""
    d = A.dim
    out: dict = {}
    for k, a in v.items():
        head, j = divmod(k, d)
        axpy(out, a, {head * d + t: c for t, c in A.mul({j: ONE}, x).items()})
    return out


def form_product(A: Algebra, v: dict, n: int, w: dict, m: int) -> dict:
    """(a0⊗…⊗an)(b0⊗…⊗bm) = a0⊗…⊗an b0⊗…⊗bm, an (n+m)-form."""
    d = A.dim
    rw = d ** m
    out: dict = {}
    for k1, a in v.items():
        head, i = divmod(k1, d)
        for k2, b in w.items():
            j, tail = divmod(k2, rw)
            for t, c in A.mul_basis(i, j).items():
                key = ((head * d) + t) * rw + tail
                x = out.get(key, ZERO) + a * b * c
                if x:
                    out[key] = x
                else:
                    out.pop(key, None)
    return out


def base_forms_in_total(M_basis: list[dict], M_alg: Algebra, P: Algebra, n: int) -> list[dict]:
    """Basis of Ω^nM pushed into P^{⊗(n+1)} along the inclusion given by ``M_basis``."""
    forms = UniversalForms(M_alg, n).space.basis
    dp = P.dim
    out = []
    for f in forms:
        acc: dict = {}
        for k, a in f.items():
            idx = []
            for _ in range(n + 1):
                k, r = divmod(k, M_alg.dim)
                idx.append(r)
            vec = {0: ONE}
            for r in reversed(idx):
                vec = vtensor(vec, M_basis[r], dp)
            axpy(acc, a, vec)
        out.append(acc)
    return out


def horizontal_span(P: Algebra, M_basis: list[dict]) -> Subspace:
    """P(Ω¹M)P = span{u·dm·v} inside P⊗P."""
    dp = P.dim
    ambient = Space(dp * dp)
    vecs = []
    for m in M_basis:
        dm = d0(P, m)
        for u in range(dp):
            um = left_mul(P, {u: ONE}, dm, 1)
            for v in range(dp):
                vecs.append(right_mul(P, um, {v: ONE}, 1))
    return Subspace.span(ambient, vecs)


def strong_span(P: Algebra, M_basis: list[dict], M_alg: Algebra, n: int) -> Subspace:
    """(Ω^nM)P inside P^{⊗(n+1)}."""
    dp = P.dim
    ambient = Space(dp ** (n + 1))
    vecs = []
    for f in base_forms_in_total(M_basis, M_alg, P, n):
        for v in range(dp):
            vecs.append(right_mul(P, f, {v: ONE}, n))
    return Subspace.span(ambient, vecs)
