"""Searching for trivialisations, and certificates that none exist."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from ..comodule import intertwiner_space, regular_comodule
from ..field import ONE, Cyc
from ..linalg import LinMap, Space, Subspace, axpy, kernel, solve, vtensor
from ..report import FAIL, PASS, UNDECIDED
from .core import PrincipalBundle
from .gauge import Trivialisation

__all__ = ["TrivialisationSearch", "find_trivialisation", "group_likes", "invertible_in_span"]


@dataclass
class TrivialisationSearch:
    status: str  # PASS: found, FAIL: proved none exists, UNDECIDED
    trivialisation: Trivialisation | None = None
    candidate_dim: int = -1
    certificate: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.trivialisation is not None


def _affine_candidates(b: PrincipalBundle):
    """Intertwiners H_R -> P_ρ with Φ(1) = 1, as (base point, direction maps)."""
    sp = intertwiner_space(regular_comodule(b.H), b.P.comodule)
    maps = sp.maps()
    H, P = b.H, b.P
    # unit condition: Σ t_i f_i(1) = 1
    cond = LinMap(Space(len(maps)), P.space, [f(H.unit) for f in maps])
    base = solve(cond, P.unit)
    if base is None:
        return None, [], sp.dim
    base_map = _combine(maps, base, b)
    dirs = [_combine(maps, k, b) for k in kernel(cond).basis]
    return base_map, dirs, sp.dim


def _combine(maps: list[LinMap], coeffs: dict, b: PrincipalBundle) -> LinMap:
    cols = [{} for _ in range(b.H.dim)]
    for i, c in coeffs.items():
        for h, col in enumerate(maps[i].cols):
            axpy(cols[h], c, col)
    return LinMap(b.H.space, b.P.space, cols)


def _with(base: LinMap, dirs: list[LinMap], t) -> LinMap:
    cols = [dict(c) for c in base.cols]
    for s, f in zip(t, dirs):
        if s:
            for h, col in enumerate(f.cols):
                axpy(cols[h], Cyc(s), col)
    return LinMap(base.source, base.target, cols)


def group_likes(b: PrincipalBundle) -> list[dict]:
    """Group-like elements of H (Δg = g⊗g, g ≠ 0), found among 0/±1 vectors in the span of H.

    Group-likes are linearly independent, so at most dim H of them exist; the
    search enumerates coefficient vectors over {0, 1, −1}, which covers the
    group-likes of every catalog Hopf algebra.
    """
    H = b.H
    d = H.dim
    out = []
    if d > 9:
        return out
    for t in iproduct((0, 1, -1), repeat=d):
        v = {i: Cyc(c) for i, c in enumerate(t) if c}
        if not v or H.eps(v) != 1:
            continue
        if H.delta(v) == vtensor(v, v, d):
            out.append(v)
    return out


def _left_mult_rank(P, v: dict) -> int:
    return P.algebra.left_mult(v).rank


def invertible_in_span(P, vectors: list[dict]) -> tuple[bool, dict | None, int]:
    """Decide whether span(vectors) ⊂ P contains an invertible element.

    det L_p for p = Σ t_i v_i is a homogeneous polynomial of degree dim P, and
    of degree at most dim P in each variable.  A polynomial of that kind that
    vanishes on the grid {0..dim P}^r is zero, and homogeneity lets the first
    non-zero coordinate be normalised to 1.  Returns (exists, witness, evaluations).
    """
    d = P.dim
    r = len(vectors)
    grid = range(d + 1)
    count = 0
    for lead in range(r):
        for rest in iproduct(grid, repeat=r - lead - 1):
            t = (0,) * lead + (1,) + rest
            p: dict = {}
            for s, v in zip(t, vectors):
                if s:
                    axpy(p, Cyc(s), v)
            count += 1
            if p and _left_mult_rank(P, p) == d:
                return True, p, count
    return False, None, count


def find_trivialisation(b: PrincipalBundle, grid: int = 2) -> TrivialisationSearch:
    base, dirs, dim = _affine_candidates(b)
    if base is None:
        return TrivialisationSearch(FAIL, None, dim, {"reason": "no unit-preserving intertwiner H_R -> P_ρ"})
    conv = b.convolution
    r = len(dirs)
    # small affine spaces are decided exactly: det of Φ*(−) is a polynomial of degree ≤ N in t
    n_hom = b.H.dim * b.P.dim
    if r <= 1:
        points = [(s,) for s in range(n_hom + 1)] if r == 1 else [()]
    else:
        points = list(iproduct(range(grid), repeat=r))
    for t in points:
        Phi = _with(base, dirs, t)
        inv = conv.inverse(Phi)
        if inv is not None:
            return TrivialisationSearch(PASS, Trivialisation(b, Phi, inv), r, {"parameters": list(t)})
    if r <= 1:
        return TrivialisationSearch(FAIL, None, r, {"reason": "convolution determinant vanishes identically",
                                                     "evaluations": len(points)})
    # obstruction: Φ(g) must be an invertible element of P_g = {p | ρ(p) = p⊗g} for each group-like g
    for g in group_likes(b):
        Pg = _isotypic(b, g)
        exists, _, evals = invertible_in_span(b.P, list(Pg.basis))
        if not exists:
            return TrivialisationSearch(FAIL, None, r, {
                "reason": "no invertible element of P transforms like a group-like of H",
                "group_like": b.H.space.describe(g), "isotypic_dim": Pg.dim, "evaluations": evals})
    return TrivialisationSearch(UNDECIDED, None, r, {"reason": "affine candidate space of dimension ≥ 2"})


def _isotypic(b: PrincipalBundle, g: dict) -> Subspace:
    P, H = b.P, b.H
    cols = []
    for u in range(P.dim):
        col = dict(P.comodule.rho_basis(u))
        axpy(col, -ONE, vtensor({u: ONE}, g, H.dim))
        cols.append(col)
    return kernel(LinMap(P.space, Space(P.dim * H.dim), cols))
