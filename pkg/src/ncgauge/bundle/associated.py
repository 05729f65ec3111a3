"""Associated bundles E = (P⊗V)^H, cross sections and pseudotensorial 0-forms."""
from __future__ import annotations

from functools import cached_property

from ..comodule import PointedComodule, intertwiner_space, intertwiner_witness, tensor_comodule
from ..errors import InvariantFailure
from ..field import ONE, Cyc
from ..hopf import antipode_inverse
from ..linalg import LinMap, Space, Subspace, axpy, kernel, solve, vtensor
from ..report import Report, compare
from .core import PrincipalBundle
from .gauge import Trivialisation

__all__ = ["AssociatedBundle", "associated_bundle", "sections_space", "section_from_sigma",
           "sigma_from_section", "sigma_space", "check_section_correspondence", "phi_E"]


class AssociatedBundle:
    def __init__(self, bundle: PrincipalBundle, V: PointedComodule, E: Subspace):
        self.bundle = bundle
        self.V = V
        self.E = E
        self.name = f"({bundle.name})⊗{V.comodule.name}"

    @property
    def dim(self) -> int:
        return self.E.dim

    def left_action(self, m: dict, x: dict) -> dict:
        """m·(u⊗v) = mu⊗v."""
        P = self.bundle.P
        dv = self.V.dim
        out: dict = {}
        for k, a in x.items():
            u, v = divmod(k, dv)
            axpy(out, a, vtensor(P.mul(m, {u: ONE}), {v: ONE}, dv))
        return out

    @cached_property
    def one(self) -> dict:
        return vtensor(self.bundle.P.unit, self.V.one, self.V.dim)


def associated_bundle(b: PrincipalBundle, V: PointedComodule) -> AssociatedBundle:
    co = tensor_comodule(b.P.comodule, V.comodule)
    E = co.invariant_subspace()
    A = AssociatedBundle(b, V, E)
    dv = V.dim
    for m in b.M_basis:
        if not E.contains(vtensor(m, V.one, dv)):
            raise InvariantFailure("M⊗1 ⊄ E", {"m": b.P.space.describe(m)})
        for e in E.basis:
            if not E.contains(A.left_action(m, e)):
                raise InvariantFailure("E is not a left M-module", {"m": b.P.space.describe(m)})
    return A


# --- sections s: E -> M (unit preserving, left M-linear), stored as maps E-coordinates -> P ----

def _section_system(A: AssociatedBundle):
    """Linear conditions on s ∈ Hom(E, P): values in M, M-linearity, s(1) = 1."""
    b = A.bundle
    P = b.P
    dE, dp = A.dim, P.dim
    n = dE * dp  # unknown s flattened e*dp + p
    rows: list[tuple[dict, object]] = []
    # values in M: each coordinate of s(e) modulo M vanishes
    Mperp = _complement_functionals(b)
    for e in range(dE):
        for f in Mperp:
            rows.append(({e * dp + p: a for p, a in f.items()}, 0))
    # s(m·e) = m s(e)
    for m in b.M_basis:
        L = P.algebra.left_mult(m)
        for e in range(dE):
            me = A.E.coords(A.left_action(m, A.E.basis[e]))
            for q in range(dp):
                row: dict = {}
                for j, c in enumerate(me):
                    if c:
                        axpy(row, c, {j * dp + q: ONE})
                for p in range(dp):
                    x = L.cols[p].get(q)
                    if x:
                        axpy(row, -x, {e * dp + p: ONE})
                if row:
                    rows.append((row, 0))
    one = A.E.coords(A.one)
    for q in range(dp):
        row = {}
        for j, c in enumerate(one):
            if c:
                row[j * dp + q] = c
        rows.append((row, P.unit.get(q, 0)))
    return n, rows


def _complement_functionals(b: PrincipalBundle) -> list[dict]:
    """Functionals on P whose common kernel is M."""
    P = b.P
    M = b.M.subspace
    ann = kernel(LinMap(P.space, Space(len(M.basis)),
                        [{i: m[p] for i, m in enumerate(M.basis) if p in m} for p in range(P.dim)]))
    return list(ann.basis)


def sections_space(A: AssociatedBundle) -> tuple[LinMap, list[LinMap]]:
    """(a particular section, directions) spanning all cross sections."""
    n, rows = _section_system(A)
    eqs = LinMap(Space(n), Space(len(rows)), _columns(rows, n))
    rhs = {i: Cyc(r) for i, (_, r) in enumerate(rows) if r}
    x = solve(eqs, rhs)
    if x is None:
        raise InvariantFailure("no cross section exists")
    base = _unflatten(A, x)
    dirs = [_unflatten(A, k) for k in kernel(eqs).basis]
    return base, dirs


def _columns(rows, n) -> list[dict]:
    cols = [{} for _ in range(n)]
    for i, (row, _) in enumerate(rows):
        for j, a in row.items():
            cols[j][i] = a
    return cols


def _unflatten(A: AssociatedBundle, x: dict) -> LinMap:
    dp = A.bundle.P.dim
    cols = [{} for _ in range(A.dim)]
    for k, a in x.items():
        e, p = divmod(k, dp)
        cols[e][p] = a
    return LinMap(Space(A.dim), A.bundle.P.space, cols)


def sigma_space(A: AssociatedBundle) -> tuple[LinMap, list[LinMap]]:
    """Unit-preserving intertwiners Σ: V -> P_ρ as (particular, directions)."""
    b = A.bundle
    sp = intertwiner_space(A.V.comodule, b.P.comodule)
    maps = sp.maps()
    cond = LinMap(Space(len(maps)), b.P.space, [f(A.V.one) for f in maps])
    x = solve(cond, b.P.unit)
    if x is None:
        raise InvariantFailure("no unit-preserving intertwiner V -> P_ρ")

    def comb(c):
        cols = [{} for _ in range(A.V.dim)]
        for i, s in c.items():
            for v, col in enumerate(maps[i].cols):
                axpy(cols[v], s, col)
        return LinMap(A.V.space, b.P.space, cols)

    return comb(x), [comb(k) for k in kernel(cond).basis]


def section_from_sigma(A: AssociatedBundle, Sigma: LinMap) -> LinMap:
    """s(u⊗v) = uΣ(v), on the basis of E."""
    P = A.bundle.P
    dv = A.V.dim
    cols = []
    for e in A.E.basis:
        out: dict = {}
        for k, a in e.items():
            u, v = divmod(k, dv)
            axpy(out, a, P.mul({u: ONE}, Sigma.cols[v]))
        if not A.bundle.M.contains(out):
            raise InvariantFailure("s(E) ⊄ M", {"value": P.space.describe(out)})
        cols.append(out)
    return LinMap(Space(A.dim), P.space, cols)


def sigma_from_section(A: AssociatedBundle, s: LinMap) -> LinMap:
    """Σ(v) = τ⁽¹⁾(S⁻¹v⁽²⁾) s(τ⁽²⁾(S⁻¹v⁽²⁾)⊗v⁽¹⁾).

    The inner tensor lives in P⊗_M E; it is rewritten modulo the relations
    um⊗x − u⊗mx as a combination of u⊗e with e in the basis of E before s is applied.
    """
    b = A.bundle
    P, H, V = b.P, b.H, A.V.comodule
    dp, dv, dE = P.dim, A.V.dim, A.dim
    Sinv = antipode_inverse(H)
    inner = dp * dv
    amb = Space(dp * inner)
    # generators u⊗e_j and relations um⊗x − u⊗m·x (x over a basis of P⊗V)
    gens = [vtensor({u: ONE}, e, inner) for u in range(dp) for e in A.E.basis]
    rels = []
    for m in b.M_basis:
        for u in range(dp):
            um = P.mul({u: ONE}, m)
            for x in range(inner):
                r = vtensor(um, {x: ONE}, inner)
                axpy(r, -ONE, vtensor({u: ONE}, A.left_action(m, {x: ONE}), inner))
                if r:
                    rels.append(r)
    system = LinMap(Space(len(gens) + len(rels)), amb, gens + rels)
    # consistency: anything in span(gens) ∩ span(rels) is killed by u⊗e ↦ u s(e)
    apply_s = LinMap(Space(len(gens) + len(rels)), P.space,
                     [P.mul({u: ONE}, s.cols[j]) for u in range(dp) for j in range(dE)] + [{}] * len(rels))
    for k in kernel(system).basis:
        if apply_s(k):
            raise InvariantFailure("s is not well defined on P⊗_M E")
    tau = b.translation_map
    cols = []
    for v in range(dv):
        X: dict = {}
        for w, h, a in V.legs(v):
            for k, c in tau(Sinv({h: ONE})).items():
                x, y = divmod(k, dp)
                axpy(X, a * c, vtensor({x: ONE}, {y * dv + w: ONE}, inner))
        coeffs = solve(system, X)
        if coeffs is None:
            raise InvariantFailure("τ(S⁻¹v⁽²⁾)⊗v⁽¹⁾ is not in P⊗_M E", {"v": A.V.space.label(v)})
        cols.append(apply_s(coeffs))
    return LinMap(A.V.space, P.space, cols)


def phi_E(A: AssociatedBundle, triv: Trivialisation) -> LinMap:
    """Φ_E(v) = Φ(S⁻¹v⁽²⁾)⊗v⁽¹⁾, as a map V -> P⊗V."""
    H = A.bundle.H
    Sinv = antipode_inverse(H)
    dv = A.V.dim
    cols = []
    for v in range(A.V.dim):
        out: dict = {}
        for w, h, a in A.V.comodule.legs(v):
            axpy(out, a, vtensor(triv.Phi(Sinv({h: ONE})), {w: ONE}, dv))
        cols.append(out)
    return LinMap(A.V.space, A.bundle.P.space.tensor(A.V.space), cols)


def check_section_correspondence(A: AssociatedBundle, s: LinMap | None = None, Sigma: LinMap | None = None,
                                 triv: Trivialisation | None = None) -> Report:
    b = A.bundle
    rep = Report(f"sections {A.name}")
    if Sigma is not None:
        w = intertwiner_witness(Sigma, A.V.comodule, b.P.comodule)
        rep.add("Σ intertwiner", w is None, w)
        s1 = section_from_sigma(A, Sigma)
        compare(rep, "Σ -> s -> Σ", sigma_from_section(A, s1), Sigma)
    if s is not None:
        rep.add("s(1) = 1", _apply_on_E(A, s, A.one) == b.P.unit)
        S1 = sigma_from_section(A, s)
        w = intertwiner_witness(S1, A.V.comodule, b.P.comodule)
        rep.add("Σ(s) intertwiner", w is None, w)
        compare(rep, "s -> Σ -> s", section_from_sigma(A, S1), s)
    if triv is not None:
        F = phi_E(A, triv)
        dv = A.V.dim
        bad = next((v for v in range(dv) if not A.E.contains(F.cols[v])), None)
        rep.add("Φ_E(V) ⊆ E", bad is None, None if bad is None else {"v": A.V.space.label(bad)})
        cols = [A.left_action(m, F.cols[v]) for m in b.M_basis for v in range(dv)]
        rank = LinMap(Space(len(cols)), F.target, cols).rank
        rep.add("M⊗V -> E bijective", rank == len(cols) == A.dim,
                None if rank == len(cols) == A.dim else {"rank": rank, "dim_M⊗V": len(cols), "dim_E": A.dim})
    return rep


def _apply_on_E(A: AssociatedBundle, s: LinMap, x: dict) -> dict:
    return s({i: c for i, c in enumerate(A.E.coords(x)) if c})
