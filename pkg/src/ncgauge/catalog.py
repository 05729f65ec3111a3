"""Built-in examples.

Hopf algebras are given by explicit structure constants; bundles and braided
examples are assembled from them by the constructions of the other modules.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .braided import bosonise, braided_line
from .bundle import (CocycleData, Trivialisation, build_bundle, cocycle_cross_product, find_trivialisation,
                     trivial_cocycle_data)
from .comodule import Comodule, ComoduleAlgebra, regular_comodule
from .errors import ParseError
from .field import ONE, Cyc, as_scalar, zeta
from .hopf import Algebra, Coalgebra, DualQuasitriangular, HopfAlgebra, solve_antipode
from .linalg import LinMap, Space, vtensor

__all__ = [
    "group_algebra", "function_algebra", "taft", "sweedler", "cyclic_dqt",
    "hopf_from_generators", "fn_z4_over_fn_z2", "matrix3_z2", "ground_algebra",
    "crossprod_mu", "crossprod_swap", "Example", "CatalogEntry", "CATALOG", "catalog", "load",
]


def group_algebra(n: int) -> HopfAlgebra:
    """kℤ_n with basis g^a."""
    sp = Space(["1"] + [f"g^{a}" if a > 1 else "g" for a in range(1, n)])
    alg = Algebra.from_products(sp, lambda i, j: {(i + j) % n: ONE}, {0: ONE})
    coalg = Coalgebra.from_functions(sp, lambda i: {i * n + i: ONE}, lambda i: 1)
    S = LinMap(sp, sp, [{(-a) % n: ONE} for a in range(n)])
    return HopfAlgebra(alg, coalg, S, f"kZ{n}")


def function_algebra(n: int) -> HopfAlgebra:
    """k(ℤ_n) with basis of delta functions."""
    sp = Space([f"d{a}" for a in range(n)])
    alg = Algebra.from_products(sp, lambda i, j: {i: ONE} if i == j else {},
                                {a: ONE for a in range(n)})

    def delta(a):
        return {b * n + (a - b) % n: ONE for b in range(n)}

    coalg = Coalgebra.from_functions(sp, delta, lambda a: 1 if a == 0 else 0)
    S = LinMap(sp, sp, [{(-a) % n: ONE} for a in range(n)])
    return HopfAlgebra(alg, coalg, S, f"k(Z{n})")


def cyclic_dqt(H: HopfAlgebra, n: int, q: Cyc | None = None) -> DualQuasitriangular:
    """R(g^a⊗g^b) = q^{ab} on kℤ_n (q a primitive n-th root by default)."""
    q = zeta(n) if q is None else q
    return DualQuasitriangular.from_table(H, lambda a, b: q ** (a * b))


def hopf_from_generators(algebra: Algebra, gen_images: dict, words, eps_values: dict, name: str) -> HopfAlgebra:
    """Extend a coproduct given on generators multiplicatively.

    ``words[i]`` is a tuple of generator indices whose product is basis vector i.
    """
    A2 = algebra.tensor(algebra)
    d = algebra.dim
    cols = []
    eps = []
    for w in words:
        v = vtensor(algebra.unit, algebra.unit, d)
        e = ONE
        for g in w:
            v = A2.mul(v, gen_images[g])
            e = e * as_scalar(eps_values[g])
        cols.append(v)
        eps.append(e)
    coalg = Coalgebra.from_functions(algebra.space, lambda i: cols[i], lambda i: eps[i])
    S = solve_antipode(algebra, coalg)
    if S is None:
        raise ValueError("bialgebra has no antipode")
    return HopfAlgebra(algebra, coalg, S, name)


def taft(n: int, q: Cyc | None = None, labels: list[str] | None = None) -> HopfAlgebra:
    """Taft algebra: g^n = 1, x^n = 0, xg = q gx, Δg = g⊗g, Δx = x⊗1 + g⊗x.

    Basis g^a x^b at index a + n b.
    """
    q = zeta(n) if q is None else q

    def name(a, b):
        parts = []
        if a:
            parts.append("g" if a == 1 else f"g^{a}")
        if b:
            parts.append("x" if b == 1 else f"x^{b}")
        return "".join(parts) or "1"

    sp = Space(labels or [name(i % n, i // n) for i in range(n * n)])

    def prod(i, j):
        a, b = i % n, i // n
        c, e = j % n, j // n
        if b + e >= n:
            return {}
        return {(a + c) % n + n * (b + e): q ** (b * c)}

    alg = Algebra.from_products(sp, prod, {0: ONE})
    g, x = 1 % n, n
    d = n * n
    images = {g: {g * d + g: ONE}, x: {x * d + 0: ONE, g * d + x: ONE}}
    words = [tuple([g] * (i % n) + [x] * (i // n)) for i in range(d)]
    return hopf_from_generators(alg, images, words, {g: 1, x: 0}, f"taft:{n}")


def sweedler() -> HopfAlgebra:
    H = taft(2, Cyc(-1), ["1", "g", "x", "gx"])
    H.name = "sweedler"
    return H


# --- non-Hopf bundle inputs ------------------------------------------------------------

def fn_z4_over_fn_z2() -> ComoduleAlgebra:
    """k(ℤ4) with the k(ℤ2)-coaction dual to translation by 2 ∈ ℤ4."""
    H = function_algebra(2)
    sp = Space([f"e{a}" for a in range(4)])
    alg = Algebra.from_products(sp, lambda i, j: {i: ONE} if i == j else {}, {a: ONE for a in range(4)})
    # ρ(f)(x, s) = f(x + 2s): δ_a ↦ δ_a⊗δ_0 + δ_{a-2}⊗δ_1
    co = Comodule.from_function(sp, H, lambda a: {a * 2 + 0: ONE, ((a - 2) % 4) * 2 + 1: ONE}, "translation")
    return ComoduleAlgebra(alg, co, "fnZ4-over-fnZ2")


def matrix3_z2() -> ComoduleAlgebra:
    """M_3(k) graded by conjugation with diag(1,1,−1), as a k(ℤ2)-comodule algebra.

    The odd part is spanned by E13, E23, E31, E32; it contains no invertible
    element, so the bundle is Galois but admits no trivialisation.
    """
    H = function_algebra(2)
    labels = [f"E{i + 1}{j + 1}" for i in range(3) for j in range(3)]
    sp = Space(labels)

    def prod(p, q):
        i, j = divmod(p, 3)
        k, l = divmod(q, 3)
        return {i * 3 + l: ONE} if j == k else {}

    alg = Algebra.from_products(sp, prod, {0: ONE, 4: ONE, 8: ONE})

    def parity(p):
        i, j = divmod(p, 3)
        return int((i == 2) != (j == 2))

    # even: v ↦ v⊗(d0+d1); odd: v ↦ v⊗(d0−d1)
    def rho(p):
        s = ONE if parity(p) == 0 else -ONE
        return {p * 2: ONE, p * 2 + 1: s}

    co = Comodule.from_function(sp, H, rho, "grading")
    return ComoduleAlgebra(alg, co, "matrix3-z2")


def ground_algebra() -> Algebra:
    return Algebra.from_products(Space(["1"]), lambda i, j: {0: ONE}, {0: ONE}, "k")


def crossprod_mu(mu) -> CocycleData:
    """M = k, H = kℤ2, trivial action, c(g⊗g) = μ."""
    data = trivial_cocycle_data(ground_algebra(), group_algebra(2))
    cols = list(data.c.cols)
    cols[3] = {0: as_scalar(mu)}
    data.c = LinMap(data.c.source, data.c.target, cols)
    return data


def crossprod_swap(mu) -> CocycleData:
    """M = k(ℤ2), g acting by swapping the two points, c(g⊗g) = μ·1."""
    H = group_algebra(2)
    M = function_algebra(2).algebra
    M.name = "k(Z2)"
    one = {0: ONE, 1: ONE}
    m = as_scalar(mu)
    c = LinMap(H.space.tensor(H.space), M.space, [one, one, one, {0: m, 1: m}])
    alpha = LinMap(H.space.tensor(M.space), M.space, [{0: ONE}, {1: ONE}, {1: ONE}, {0: ONE}])
    return CocycleData(M, H, c, alpha)


# --- named examples ----------------------------------------------------------------------------

@dataclass
class Example:
    """A catalog entry after loading; bundles are built on first use."""

    name: str
    hopf: HopfAlgebra | None = None
    dqt: DualQuasitriangular | None = None
    total: ComoduleAlgebra | None = None
    cocycle: object = None  # CocycleData for cross products
    braided: object = None  # BraidedGroup
    bosonise: bool = False
    regular: bool = False  # total space is H with ρ = Δ
    flags: tuple[str, ...] = ()

    @cached_property
    def _built(self):
        if self.cocycle is not None:
            return cocycle_cross_product(self.cocycle, self.name)
        if self.total is None:
            return None, None
        b = build_bundle(self.total, name=self.name)
        if self.regular:
            return b, Trivialisation(b, LinMap.identity(b.H.space), b.H.antipode)
        return b, None

    @property
    def bundle(self):
        return self._built[0]

    @property
    def trivialisation(self):
        """An explicit trivialisation when the construction provides one."""
        return self._built[1]

    @cached_property
    def trivialisation_available(self) -> bool:
        if self.cocycle is not None or self.regular or self.bosonise:
            return True
        if self.bundle is None:
            return False
        return find_trivialisation(self.bundle).found

    @property
    def base(self) -> Algebra | None:
        """M in its own coordinates, for cross products."""
        return self.cocycle.M if self.cocycle is not None else None

    @cached_property
    def bosonisation(self):
        if not self.bosonise:
            return None
        return bosonise(self.braided.category, self.braided)


@dataclass(frozen=True)
class CatalogEntry:
    pattern: str
    description: str
    example: str
    flags: tuple[str, ...] = field(default=())


CATALOG = [
    CatalogEntry("kZ2", "group algebra of Z2 as a bundle over k", "kZ2", ("trivial",)),
    CatalogEntry("kZn:n", "group algebra of Z_n with R(g^a⊗g^b) = q^(ab)", "kZn:3", ("trivial",)),
    CatalogEntry("sweedler", "Sweedler's 4-dimensional Hopf algebra as a bundle over k", "sweedler", ("trivial",)),
    CatalogEntry("taft:n", "Taft algebra of dimension n², q = exp(2πi/n)", "taft:3", ("trivial",)),
    CatalogEntry("fnZ4-over-fnZ2", "functions on Z4 with the Z2 translation coaction", "fnZ4-over-fnZ2"),
    CatalogEntry("matrix3-z2", "3×3 matrices graded by conjugation with diag(1,1,-1)", "matrix3-z2"),
    CatalogEntry("crossprod-mu:μ", "k⋊kZ2 with cocycle c(g⊗g) = μ", "crossprod-mu:2", ("trivial",)),
    CatalogEntry("crossprod-swap:μ", "k(Z2)⋊kZ2, swap action, cocycle c(g⊗g) = μ", "crossprod-swap:2",
                 ("trivial",)),
    CatalogEntry("braided-line:n", "braided line k[x]/(x^n) in kZ_n comodules", "braided-line:3"),
    CatalogEntry("bosonisation:n", "bosonisation of braided-line:n", "bosonisation:3", ("trivial",)),
]


def catalog(compute_flags: bool = True) -> list[dict]:
    """Built-ins; the triviality flag of the bundles without a given trivialisation is computed."""
    out = []
    for e in CATALOG:
        flags = list(e.flags)
        if compute_flags and not flags:
            ex = load(e.example)
            if ex.bundle is not None:
                res = find_trivialisation(ex.bundle)
                flags.append({"pass": "trivializable", "fail": "nontrivializable"}.get(res.status, "undecided"))
        out.append({"name": e.pattern, "example": e.example, "description": e.description, "flags": flags})
    return out


def _int_param(name: str, raw: str, lo: int, hi: int) -> int:
    try:
        n = int(raw)
    except ValueError:
        raise ParseError(f"{name}: parameter must be an integer", {"location": name}) from None
    if not lo <= n <= hi:
        raise ParseError(f"{name}: parameter must lie in [{lo}, {hi}]", {"location": name})
    return n


def _scalar_param(name: str, raw: str) -> Cyc:
    try:
        f = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{name}: parameter must be a rational number", {"location": name}) from None
    if f == 0:
        raise ParseError(f"{name}: the cocycle value must be nonzero", {"location": name})
    return as_scalar(f)


def _regular(H: HopfAlgebra, name: str) -> ComoduleAlgebra:
    return ComoduleAlgebra(H.algebra, regular_comodule(H), name)


def load(name: str) -> Example:
    """Build a catalog example by name, e.g. "taft:3" or "crossprod-mu:1/2"."""
    head, _, param = name.partition(":")
    if head in ("kZ2", "sweedler", "fnZ4-over-fnZ2", "matrix3-z2") and param:
        raise ParseError(f"{name}: {head} takes no parameter", {"location": name})
    if head == "kZ2":
        H = group_algebra(2)
        return Example(name, hopf=H, dqt=cyclic_dqt(H, 2), total=_regular(H, name), regular=True)
    if head == "kZn":
        n = _int_param(name, param, 2, 8)
        H = group_algebra(n)
        return Example(name, hopf=H, dqt=cyclic_dqt(H, n), total=_regular(H, name), regular=True)
    if head == "sweedler":
        H = sweedler()
        return Example(name, hopf=H, total=_regular(H, name), regular=True)
    if head == "taft":
        H = taft(_int_param(name, param, 2, 5))
        return Example(name, hopf=H, total=_regular(H, name), regular=True)
    if head == "fnZ4-over-fnZ2":
        return Example(name, total=fn_z4_over_fn_z2())
    if head == "matrix3-z2":
        return Example(name, total=matrix3_z2())
    if head == "crossprod-mu":
        return Example(name, cocycle=crossprod_mu(_scalar_param(name, param)))
    if head == "crossprod-swap":
        return Example(name, cocycle=crossprod_swap(_scalar_param(name, param)))
    if head in ("braided-line", "bosonisation"):
        B = braided_line(_int_param(name, param, 2, 5))
        return Example(name, braided=B, bosonise=head == "bosonisation")
    known = ", ".join(e.pattern for e in CATALOG)
    raise ParseError(f"unknown catalog name {name!r} (known: {known})", {"location": name})
