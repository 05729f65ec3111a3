"""Algebras, coalgebras and Hopf algebras by structure constants.

Tensor legs are flattened row-major: the basis vector e_i ⊗ e_j of C⊗C has
index ``i * dim + j``.  Axioms are verified on basis elements, which is
exhaustive because every identity involved is multilinear.
"""
from __future__ import annotations

from itertools import product as iproduct
from typing import Callable, Sequence

from .errors import DimensionMismatch, NotInvertible
from .field import ONE, ZERO, Cyc, as_scalar
from .linalg import K, Echelon, LinMap, Space, axpy, solve, vscale, vtensor
from .report import Report

__all__ = [
    "Algebra", "Coalgebra", "HopfAlgebra", "ConvolutionAlgebra", "DualQuasitriangular",
    "convolve", "convolution_inverse", "antipode_inverse", "check_hopf_axioms",
    "check_dqt", "dualize", "find_hopf_isomorphism", "is_hopf_isomorphism", "solve_antipode",
]


class Algebra:
    """Associative unital algebra; ``mult`` is a LinMap A⊗A -> A."""

    def __init__(self, space: Space, mult: LinMap, unit: dict, name: str = ""):
        d = space.dim
        if mult.source.dim != d * d or mult.target.dim != d:
            raise DimensionMismatch(f"product must map {d * d} -> {d}")
        self.space = space
        self.mult = mult
        self.unit = dict(unit)
        self.name = name

    @staticmethod
    def from_products(space: Space, fn: Callable[[int, int], dict], unit: dict, name: str = "") -> "Algebra":
        d = space.dim
        cols = [fn(i, j) for i in range(d) for j in range(d)]
        return Algebra(space, LinMap(space.tensor(space), space, cols), unit, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult.cols[i * self.space.dim + j]

    def mul(self, x: dict, y: dict) -> dict:
        d = self.space.dim
        cols = self.mult.cols
        out: dict = {}
        for i, a in x.items():
            base = i * d
            for j, b in y.items():
                axpy(out, a * b, cols[base + j])
        return out

    def mul_many(self, *xs: dict) -> dict:
        out = xs[0]
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def left_mult(self, x: dict) -> LinMap:
        return LinMap(self.space, self.space, [self.mul(x, {j: ONE}) for j in range(self.dim)])

    def associativity_witness(self):
        d = self.dim
        for i, j, k in iproduct(range(d), repeat=3):
            lhs = self.mul(self.mul_basis(i, j), {k: ONE})
            rhs = self.mul({i: ONE}, self.mul_basis(j, k))
            if lhs != rhs:
                s = self.space
                return {"triple": [s.label(i), s.label(j), s.label(k)],
                        "lhs": s.describe(lhs), "rhs": s.describe(rhs)}
        return None

    def unit_witness(self):
        for j in range(self.dim):
            e = {j: ONE}
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                return {"basis": self.space.label(j)}
        return None

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.mul_basis(i, j) == self.mul_basis(j, i) for i in range(d) for j in range(i))

    def tensor(self, other: "Algebra") -> "Algebra":
        """Ordinary (unbraided) tensor product algebra."""
        db = other.dim

        def prod(p, q):
            i, j = divmod(p, db)
            k, l = divmod(q, db)
            return vtensor(self.mul_basis(i, k), other.mul_basis(j, l), db)

        sp = self.space.tensor(other.space)
        return Algebra.from_products(sp, prod, vtensor(self.unit, other.unit, db))


class Coalgebra:
    """Coassociative counital coalgebra; ``counit`` is a LinMap C -> k."""

    def __init__(self, space: Space, comult: LinMap, counit: LinMap, name: str = ""):
        d = space.dim
        if comult.source.dim != d or comult.target.dim != d * d:
            raise DimensionMismatch(f"coproduct must map {d} -> {d * d}")
        if counit.source.dim != d or counit.target.dim != 1:
            raise DimensionMismatch("counit must map to the ground field")
        self.space = space
        self.comult = comult
        self.counit = counit
        self.name = name

    @staticmethod
    def from_functions(space: Space, delta: Callable[[int], dict], eps: Callable[[int], object],
                       name: str = "") -> "Coalgebra":
        d = space.dim
        comult = LinMap(space, space.tensor(space), [delta(i) for i in range(d)])
        counit = LinMap(space, K, [{0: as_scalar(eps(i))} for i in range(d)])
        return Coalgebra(space, comult, counit, name)

    @property
    def dim(self) -> int:
        return self.space.dim

    def delta_basis(self, i: int) -> dict:
        return self.comult.cols[i]

    def delta(self, v: dict) -> dict:
        return self.comult(v)

    def eps_basis(self, i: int) -> Cyc:
        return self.counit.cols[i].get(0, ZERO)

    def eps(self, v: dict) -> Cyc:
        out = ZERO
        for i, a in v.items():
            e = self.counit.cols[i].get(0)
            if e:
                out = out + a * e
        return out

    def delta2(self, v: dict) -> dict:
        """(Δ⊗id)Δ v as a flat vector over C⊗C⊗C."""
        d = self.dim
        out: dict = {}
        for k, a in self.delta(v).items():
            i, j = divmod(k, d)
            for k2, b in self.delta_basis(i).items():
                axpy(out, a * b, {k2 * d + j: ONE})
        return out

    def coassociativity_witness(self):
        d = self.dim
        for c in range(d):
            lhs = self.delta2({c: ONE})
            rhs: dict = {}
            for k, a in self.delta_basis(c).items():
                i, j = divmod(k, d)
                for k2, b in self.delta_basis(j).items():
                    axpy(rhs, a * b, {i * d * d + k2: ONE})
            if lhs != rhs:
                return {"basis": self.space.label(c)}
        return None

    def counit_witness(self):
        d = self.dim
        for c in range(d):
            left: dict = {}
            right: dict = {}
            for k, a in self.delta_basis(c).items():
                i, j = divmod(k, d)
                axpy(left, a * self.eps_basis(i), {j: ONE})
                axpy(right, a * self.eps_basis(j), {i: ONE})
            e = {c: ONE}
            if left != e or right != e:
                return {"basis": self.space.label(c)}
        return None

    def tensor(self, other: "Coalgebra") -> "Coalgebra":
        """C⊗D with Δ(a⊗b) = a1⊗b1⊗a2⊗b2."""
        da, db = self.dim, other.dim
        sp = self.space.tensor(other.space)

        def delta(p):
            i, j = divmod(p, db)
            out = {}
            for k1, a in self.delta_basis(i).items():
                a1, a2 = divmod(k1, da)
                for k2, b in other.delta_basis(j).items():
                    b1, b2 = divmod(k2, db)
                    idx = (a1 * db + b1) * (da * db) + a2 * db + b2
                    out[idx] = out.get(idx, ZERO) + a * b
            return {k: v for k, v in out.items() if v}

        return Coalgebra.from_functions(sp, delta, lambda p: self.eps_basis(p // db) * other.eps_basis(p % db))


class HopfAlgebra:
    """A Hopf algebra: algebra and coalgebra on one space plus an antipode."""

    def __init__(self, algebra: Algebra, coalgebra: Coalgebra, antipode: LinMap, name: str = ""):
        d = algebra.dim
        if coalgebra.dim != d or antipode.source.dim != d or antipode.target.dim != d:
            raise DimensionMismatch("structure maps of a Hopf algebra must share one space")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.antipode = antipode
        self.name = name

    # shortcuts
    @property
    def space(self) -> Space:
        return self.algebra.space

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def unit(self) -> dict:
        return self.algebra.unit

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def mul_basis(self, i, j):
        return self.algebra.mul_basis(i, j)

    def delta(self, v):
        return self.coalgebra.delta(v)

    def delta_basis(self, i):
        return self.coalgebra.delta_basis(i)

    def eps(self, v):
        return self.coalgebra.eps(v)

    def eps_basis(self, i):
        return self.coalgebra.eps_basis(i)

    def S(self, v):
        return self.antipode(v)

    def __repr__(self) -> str:
        return f"HopfAlgebra({self.name or '?'}, dim={self.dim})"


# --- convolution ---------------------------------------------------------------

class ConvolutionAlgebra:
    """Hom(C, A) with (f*g)(c) = f(c1) g(c2) and unit η∘ε."""

    def __init__(self, coalgebra: Coalgebra, algebra: Algebra):
        self.C = coalgebra
        self.A = algebra

    @property
    def unit(self) -> LinMap:
        return LinMap(self.C.space, self.A.space,
                      [vscale(self.A.unit, self.C.eps_basis(c)) for c in range(self.C.dim)])

    def mul(self, f: LinMap, g: LinMap) -> LinMap:
        d = self.C.dim
        cols = []
        for c in range(d):
            out: dict = {}
            for k, a in self.C.delta_basis(c).items():
                i, j = divmod(k, d)
                axpy(out, a, self.A.mul(f.cols[i], g.cols[j]))
            cols.append(out)
        return LinMap(self.C.space, self.A.space, cols)

    def mul_many(self, *fs: LinMap) -> LinMap:
        out = fs[0]
        for f in fs[1:]:
            out = self.mul(out, f)
        return out

    def left_operator(self, f: LinMap) -> LinMap:
        """g -> f*g on Hom(C,A), with g flattened as index c*dim(A) + a."""
        dc, da = self.C.dim, self.A.dim
        hom = Space(dc * da)
        cols = []
        for c in range(dc):
            for a in range(da):
                img: dict = {}
                for k in range(dc):
                    for idx, w in self.C.delta_basis(k).items():
                        i, j = divmod(idx, dc)
                        if j != c:
                            continue
                        prod = self.A.mul(f.cols[i], {a: ONE})
                        for t, x in prod.items():
                            key = k * da + t
                            v = img.get(key, ZERO) + w * x
                            if v:
                                img[key] = v
                            else:
                                img.pop(key, None)
                cols.append(img)
        return LinMap(hom, hom, cols)

    def flatten(self, f: LinMap) -> dict:
        da = self.A.dim
        return {c * da + a: x for c, col in enumerate(f.cols) for a, x in col.items()}

    def unflatten(self, v: dict) -> LinMap:
        da = self.A.dim
        cols = [{} for _ in range(self.C.dim)]
        for k, x in v.items():
            c, a = divmod(k, da)
            cols[c][a] = x
        return LinMap(self.C.space, self.A.space, cols)

    def inverse(self, f: LinMap):
        """Two-sided convolution inverse of f, or None."""
        x = solve(self.left_operator(f), self.flatten(self.unit))
        if x is None:
            return None
        g = self.unflatten(x)
        u = self.unit
        if self.mul(f, g) != u or self.mul(g, f) != u:
            return None
        return g

    def is_invertible(self, f: LinMap) -> bool:
        return self.inverse(f) is not None


def convolve(f: LinMap, g: LinMap, coalgebra: Coalgebra, algebra: Algebra) -> LinMap:
    return ConvolutionAlgebra(coalgebra, algebra).mul(f, g)


def convolution_inverse(f: LinMap, coalgebra: Coalgebra, algebra: Algebra):
    return ConvolutionAlgebra(coalgebra, algebra).inverse(f)


def antipode_inverse(H: HopfAlgebra) -> LinMap:
    try:
        return H.antipode.inverse()
    except NotInvertible as exc:
        raise NotInvertible("antipode is not invertible; example is outside the standing assumptions",
                            exc.witness) from None


# --- axiom checks ---------------------------------------------------------------

def _check_dims(H: HopfAlgebra) -> None:
    d = H.dim
    if H.algebra.mult.source.dim != d * d or H.coalgebra.comult.target.dim != d * d:
        raise DimensionMismatch("inconsistent structure maps")
    if any(k >= d for k in H.unit):
        raise DimensionMismatch("unit vector out of range")


def bialgebra_witness(H: HopfAlgebra):
    d = H.dim
    A2 = H.algebra.tensor(H.algebra)
    for i in range(d):
        for j in range(d):
            lhs = H.delta(H.mul_basis(i, j))
            rhs = A2.mul(H.delta_basis(i), H.delta_basis(j))
            if lhs != rhs:
                return {"pair": [H.space.label(i), H.space.label(j)], "identity": "Δ(xy)=Δ(x)Δ(y)"}
            if H.eps(H.mul_basis(i, j)) != H.eps_basis(i) * H.eps_basis(j):
                return {"pair": [H.space.label(i), H.space.label(j)], "identity": "ε(xy)=ε(x)ε(y)"}
    if H.delta(H.unit) != vtensor(H.unit, H.unit, d):
        return {"identity": "Δ(1)=1⊗1"}
    if H.eps(H.unit) != 1:
        return {"identity": "ε(1)=1"}
    return None


def antipode_witness(H: HopfAlgebra, S: LinMap | None = None):
    S = S or H.antipode
    d = H.dim
    for c in range(d):
        left: dict = {}
        right: dict = {}
        for k, a in H.delta_basis(c).items():
            i, j = divmod(k, d)
            axpy(left, a, H.mul(S.cols[i], {j: ONE}))
            axpy(right, a, H.mul({i: ONE}, S.cols[j]))
        target = vscale(H.unit, H.eps_basis(c))
        if left != target or right != target:
            return {"basis": H.space.label(c), "S*id": H.space.describe(left),
                    "id*S": H.space.describe(right), "expected": H.space.describe(target)}
    return None


def check_hopf_axioms(H: HopfAlgebra) -> Report:
    _check_dims(H)
    rep = Report(f"hopf axioms {H.name}".strip())
    w = H.algebra.associativity_witness()
    rep.add("associativity", w is None, w)
    w = H.algebra.unit_witness()
    rep.add("unit", w is None, w)
    w = H.coalgebra.coassociativity_witness()
    rep.add("coassociativity", w is None, w)
    w = H.coalgebra.counit_witness()
    rep.add("counit", w is None, w)
    w = bialgebra_witness(H)
    rep.add("bialgebra", w is None, w)
    w = antipode_witness(H)
    rep.add("antipode", w is None, w)
    return rep


def solve_antipode(algebra: Algebra, coalgebra: Coalgebra):
    """The convolution inverse of the identity, or None."""
    return ConvolutionAlgebra(coalgebra, algebra).inverse(LinMap.identity(algebra.space))


# --- dual quasitriangular structures --------------------------------------------

class DualQuasitriangular:
    """A convolution-invertible form R: H⊗H -> k."""

    def __init__(self, host: HopfAlgebra, R: LinMap, R_inv: LinMap | None = None):
        d = host.dim
        if R.source.dim != d * d or R.target.dim != 1:
            raise DimensionMismatch("R must map H⊗H -> k")
        self.host = host
        self.R = R
        if R_inv is None:
            conv = ConvolutionAlgebra(host.coalgebra.tensor(host.coalgebra), _ground_algebra())
            R_inv = conv.inverse(R)
        self.R_inv = R_inv

    @staticmethod
    def from_table(host: HopfAlgebra, table: Callable[[int, int], object]) -> "DualQuasitriangular":
        d = host.dim
        R = LinMap(host.space.tensor(host.space), K,
                   [{0: as_scalar(table(i, j))} for i in range(d) for j in range(d)])
        return DualQuasitriangular(host, R)

    def value(self, i: int, j: int) -> Cyc:
        return self.R.cols[i * self.host.dim + j].get(0, ZERO)

    def pair(self, x: dict, y: dict) -> Cyc:
        out = ZERO
        for i, a in x.items():
            for j, b in y.items():
                r = self.value(i, j)
                if r:
                    out = out + a * b * r
        return out

    def matrix(self) -> list[list[Cyc]]:
        d = self.host.dim
        return [[self.value(i, j) for j in range(d)] for i in range(d)]


def _ground_algebra() -> Algebra:
    return Algebra(K, LinMap(K.tensor(K), K, [{0: ONE}]), {0: ONE}, "k")


def check_dqt(D: DualQuasitriangular) -> Report:
    H = D.host
    d = H.dim
    rep = Report(f"dual quasitriangular {H.name}".strip())
    # invertibility
    ok = D.R_inv is not None
    if ok:
        conv = ConvolutionAlgebra(H.coalgebra.tensor(H.coalgebra), _ground_algebra())
        u = conv.unit
        ok = conv.mul(D.R, D.R_inv) == u and conv.mul(D.R_inv, D.R) == u
    rep.add("invertibility", ok)

    def first_fail(fn):
        for a, b, c in iproduct(range(d), repeat=3):
            lhs, rhs = fn(a, b, c)
            if lhs != rhs:
                return {"triple": [H.space.label(a), H.space.label(b), H.space.label(c)],
                        "lhs": str(lhs), "rhs": str(rhs)}
        return None

    def left_mult(a, b, c):
        # R(ab⊗c) = R(a⊗c1) R(b⊗c2)
        lhs = D.pair(H.mul_basis(a, b), {c: ONE})
        rhs = ZERO
        for k, w in H.delta_basis(c).items():
            c1, c2 = divmod(k, d)
            rhs = rhs + w * D.value(a, c1) * D.value(b, c2)
        return lhs, rhs

    def right_mult(a, b, c):
        # R(a⊗bc) = R(a1⊗c) R(a2⊗b)
        lhs = D.pair({a: ONE}, H.mul_basis(b, c))
        rhs = ZERO
        for k, w in H.delta_basis(a).items():
            a1, a2 = divmod(k, d)
            rhs = rhs + w * D.value(a1, c) * D.value(a2, b)
        return lhs, rhs

    w = first_fail(left_mult)
    rep.add("bicharacter R(ab⊗c)=R(a⊗c1)R(b⊗c2)", w is None, w)
    w = first_fail(right_mult)
    rep.add("bicharacter R(a⊗bc)=R(a1⊗c)R(a2⊗b)", w is None, w)
    w = quasicommutativity_witness(D)
    rep.add("quasi-commutativity", w is None, w)
    return rep


def quasicommutativity_witness(D: DualQuasitriangular):
    """R(a1⊗b1) b2 a2 = a1 b1 R(a2⊗b2) on all basis pairs."""
    H = D.host
    d = H.dim
    for a in range(d):
        for b in range(d):
            lhs: dict = {}
            rhs: dict = {}
            for ka, x in H.delta_basis(a).items():
                a1, a2 = divmod(ka, d)
                for kb, y in H.delta_basis(b).items():
                    b1, b2 = divmod(kb, d)
                    r = D.value(a1, b1)
                    if r:
                        axpy(lhs, x * y * r, H.mul_basis(b2, a2))
                    r = D.value(a2, b2)
                    if r:
                        axpy(rhs, x * y * r, H.mul_basis(a1, b1))
            if lhs != rhs:
                return {"pair": [H.space.label(a), H.space.label(b)],
                        "lhs": H.space.describe(lhs), "rhs": H.space.describe(rhs)}
    return None


# --- duality and isomorphisms -------------------------------------------------------

def dualize(H: HopfAlgebra) -> HopfAlgebra:
    """H* on the dual basis: product from Δ, coproduct from the product, antipode S^T."""
    d = H.dim
    sp = Space([f"{l}*" for l in H.space.labels])
    mult_cols = [{} for _ in range(d * d)]
    for k in range(d):
        for idx, a in H.delta_basis(k).items():
            mult_cols[idx][k] = a
    mult = LinMap(sp.tensor(sp), sp, mult_cols)
    unit = {k: H.eps_basis(k) for k in range(d) if H.eps_basis(k)}
    comult_cols = [{} for _ in range(d)]
    for idx in range(d * d):
        for k, a in H.algebra.mult.cols[idx].items():
            comult_cols[k][idx] = a
    comult = LinMap(sp, sp.tensor(sp), comult_cols)
    counit = LinMap(sp, K, [{0: H.unit[k]} if k in H.unit else {} for k in range(d)])
    alg = Algebra(sp, mult, unit)
    coalg = Coalgebra(sp, comult, counit)
    S = H.antipode.transpose()
    return HopfAlgebra(alg, coalg, LinMap(sp, sp, list(S.cols)), f"({H.name})*")


def is_hopf_isomorphism(phi: LinMap, H1: HopfAlgebra, H2: HopfAlgebra) -> bool:
    d = H1.dim
    if H2.dim != d or phi.rank != d:
        return False
    if phi(H1.unit) != H2.unit:
        return False
    for i in range(d):
        if H2.eps(phi.cols[i]) != H1.eps_basis(i):
            return False
        img = {}
        for k, a in H1.delta_basis(i).items():
            x, y = divmod(k, d)
            axpy(img, a, vtensor(phi.cols[x], phi.cols[y], d))
        if img != H2.delta(phi.cols[i]):
            return False
        if phi(H1.S({i: ONE})) != H2.S(phi.cols[i]):
            return False
        for j in range(d):
            if phi(H1.mul_basis(i, j)) != H2.mul(phi.cols[i], phi.cols[j]):
                return False
    return True


def _generators(A: Algebra) -> tuple[list[int], list[tuple[tuple[int, ...], dict]]]:
    """Greedy algebra generators (basis indices) and words spanning A."""

    gens: list[int] = []
    while True:
        ech = Echelon()
        words: list[tuple[tuple[int, ...], dict]] = []
        frontier = [((), A.unit)]
        ech.add(A.unit)
        words.append(((), A.unit))
        while frontier:
            nxt = []
            for w, v in frontier:
                for g in gens:
                    u = A.mul(v, {g: ONE})
                    if ech.add(u) is None:
                        nxt.append((w + (g,), u))
                        words.append((w + (g,), u))
            frontier = nxt
        if len(ech) == A.dim:
            return gens, words
        missing = next(i for i in range(A.dim) if ech.reduce({i: ONE})[0])
        gens.append(missing)


def find_hopf_isomorphism(H1: HopfAlgebra, H2: HopfAlgebra, scalars: Sequence = (1, -1)):
    """Search for a Hopf isomorphism H1 -> H2.

    Generators of H1 are sent to candidate vectors of H2 whose coordinates lie
    in ``scalars`` ∪ {0}; each complete assignment is extended multiplicatively
    and accepted only if it passes :func:`is_hopf_isomorphism`.  Returns the
    map or None when no candidate in the search space works.
    """
    if H1.dim != H2.dim:
        return None
    d = H1.dim
    gens, words = _generators(H1.algebra)
    coeffs = [ZERO] + [as_scalar(s) for s in scalars]
    candidates = []
    for t in iproduct(coeffs, repeat=d):
        v = {i: c for i, c in enumerate(t) if c}
        if v:
            candidates.append(v)

    def minimal_relation(A: Algebra, x: dict):
        ech = Echelon()
        power = dict(A.unit)
        k = 0
        while True:
            rel = ech.add(power, {k: ONE})
            if rel is not None:
                return rel
            k += 1
            power = A.mul(power, x)

    def satisfies(A: Algebra, x: dict, rel: dict) -> bool:
        acc: dict = {}
        power = dict(A.unit)
        for k in range(max(rel) + 1):
            if k in rel:
                axpy(acc, rel[k], power)
            power = A.mul(power, x)
        return not acc

    pools = []
    for g in gens:
        rel = minimal_relation(H1.algebra, {g: ONE})
        e = H1.eps_basis(g)
        pools.append([v for v in candidates if H2.eps(v) == e and satisfies(H2.algebra, v, rel)])

    # words -> basis decomposition of H1
    ech = Echelon()
    for n, (_, v) in enumerate(words):
        ech.add(v, {n: ONE})
    expansions = []
    for i in range(d):
        res, tag = ech.reduce({i: ONE}, {})
        expansions.append({n: -x for n, x in tag.items()})

    for choice in iproduct(*pools):
        images = dict(zip(gens, choice))
        word_vals = []
        for w, _ in words:
            v = dict(H2.unit)
            for g in w:
                v = H2.mul(v, images[g])
            word_vals.append(v)
        cols = []
        for i in range(d):
            acc: dict = {}
            for n, x in expansions[i].items():
                axpy(acc, x, word_vals[n])
            cols.append(acc)
        phi = LinMap(H1.space, H2.space, cols)
        if is_hopf_isomorphism(phi, H1, H2):
            return phi
    return None
