"""Finite-dimensional exact linear algebra.

Vectors are sparse ``dict[int, Cyc]`` keyed by basis index, with zero entries
never stored.  Linear maps keep one such dict per source basis vector (their
columns).  All echelon computations pivot on the leftmost nonzero entry and
process basis vectors in index order, so every basis we hand out is
reproducible.
"""
from __future__ import annotations

import heapq
from itertools import product as _iproduct
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvertible
from .field import ONE, ZERO, Cyc, as_scalar

Vector = dict

__all__ = [
    "Space", "LinMap", "Subspace", "QuotientSpace", "Echelon",
    "axpy", "vadd", "vsub", "vscale", "vtensor", "vequal", "basis_vector",
    "kernel", "image", "solve", "quotient", "tensor_map", "stack",
]


# --- sparse vector helpers -------------------------------------------------

def axpy(acc: dict, s, v: dict) -> dict:
    """acc += s * v, in place."""
    if not s:
        return acc
    one = s == 1
    for k, x in v.items():
        t = x if one else x * s
        old = acc.get(k)
        if old is not None:
            t = old + t
            if t:
                acc[k] = t
            else:
                del acc[k]
        else:
            acc[k] = t
    return acc


def vadd(u: dict, v: dict) -> dict:
    return axpy(dict(u), ONE, v)


def vsub(u: dict, v: dict) -> dict:
    return axpy(dict(u), -ONE, v)


def vscale(v: dict, s) -> dict:
    s = as_scalar(s)
    if not s:
        return {}
    return {k: x * s for k, x in v.items()}


def vtensor(u: dict, v: dict, dim_v: int) -> dict:
    out = {}
    for i, a in u.items():
        base = i * dim_v
        for j, b in v.items():
            out[base + j] = a * b
    return out


def vequal(u: dict, v: dict) -> bool:
    return u == v


def basis_vector(i: int) -> dict:
    return {i: ONE}


def clean(v: dict) -> dict:
    return {k: x for k, x in v.items() if x}


# --- spaces -----------------------------------------------------------------

class Space:
    """A vector space with a named basis; tensor products keep their factors."""

    __slots__ = ("dim", "_labels", "factors")

    def __init__(self, labels: Sequence[str] | int, factors: tuple["Space", ...] = ()):
        if isinstance(labels, int):
            self.dim = labels
            self._labels = None
        else:
            labels = tuple(labels)
            if len(set(labels)) != len(labels):
                raise ValueError("basis labels must be distinct")
            self.dim = len(labels)
            self._labels = labels
        self.factors = factors

    @staticmethod
    def named(n: int, prefix: str = "e") -> "Space":
        return Space([f"{prefix}{i}" for i in range(n)])

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            if self.factors:
                self._labels = tuple("⊗".join(p) for p in _iproduct(*(f.labels for f in self.factors)))
            else:
                self._labels = tuple(f"e{i}" for i in range(self.dim))
        return self._labels

    def label(self, i: int) -> str:
        if self._labels is None and self.factors:
            parts = []
            for f in reversed(self.factors):
                i, r = divmod(i, f.dim)
                parts.append(f.label(r))
            return "⊗".join(reversed(parts))
        return self.labels[i]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def tensor(self, *others: "Space") -> "Space":
        facs = []
        for s in (self,) + others:
            facs.extend(s.factors or (s,))
        dim = 1
        for f in facs:
            dim *= f.dim
        return Space(dim, tuple(facs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Space) and self.dim == other.dim and (
            self is other or self.labels == other.labels)

    def __hash__(self) -> int:
        return hash(self.dim)

    def __repr__(self) -> str:
        return f"Space(dim={self.dim})"

    def describe(self, v: dict) -> str:
        """Human-readable rendering of a vector, used in witnesses."""
        if not v:
            return "0"
        return " + ".join(f"({v[k]})·{self.label(k)}" for k in sorted(v))


K = Space(["1"])  # the ground field as a 1-dimensional space


# --- echelon engine ----------------------------------------------------------

class Echelon:
    """Incremental row echelon form with optional combination tracking.

    Each stored row has pivot coefficient 1 at its smallest index.  When
    ``tag`` vectors are supplied they are carried through every row operation,
    which yields kernel relations and solutions for free.
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict, dict | None]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict, tag: dict | None = None, skip: int | None = None):
        v = dict(v)
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        heap = [k for k in v if k in rows and k != skip]
        heapq.heapify(heap)
        seen = set()
        while heap:
            p = heapq.heappop(heap)
            if p in seen:
                continue
            seen.add(p)
            c = v.get(p)
            if not c:
                continue
            row, rtag = rows[p]
            for k in row:
                if k != p and k in rows and k not in v and k != skip:
                    heapq.heappush(heap, k)
            axpy(v, -c, row)
            if tag is not None and rtag is not None:
                axpy(tag, -c, rtag)
        return v, tag

    def add(self, v: dict, tag: dict | None = None):
        """Insert v.  Returns None if v was independent, else the residual tag."""
        v, tag = self.reduce(v, tag)
        if not v:
            return tag if tag is not None else {}
        p = min(v)
        inv = v[p].inverse()
        v = {k: x * inv for k, x in v.items()}
        if tag is not None:
            tag = {k: x * inv for k, x in tag.items()}
        self.rows[p] = (v, tag)
        return None

    def reduced_rows(self) -> list[tuple[int, dict]]:
        """Fully reduced (RREF) rows, sorted by pivot."""
        sub = Echelon()
        for p in sorted(self.rows, reverse=True):
            # rows with larger pivots are already reduced
            r, _ = sub.reduce(self.rows[p][0])
            sub.rows[p] = (r, None)
        return [(p, sub.rows[p][0]) for p in sorted(sub.rows)]


# --- subspaces ----------------------------------------------------------------

class Subspace:
    """A subspace of ``ambient`` stored by its reduced row echelon basis."""

    __slots__ = ("ambient", "basis", "pivots", "_ech")

    def __init__(self, ambient: Space, rows: list[tuple[int, dict]]):
        self.ambient = ambient
        self.pivots = tuple(p for p, _ in rows)
        self.basis = tuple(r for _, r in rows)
        ech = Echelon()
        ech.rows = {p: (r, None) for p, r in rows}
        self._ech = ech

    @staticmethod
    def span(ambient: Space, vectors: Iterable[dict]) -> "Subspace":
        ech = Echelon()
        for v in vectors:
            if v:
                ech.add(v)
        return Subspace(ambient, ech.reduced_rows())

    @staticmethod
    def zero(ambient: Space) -> "Subspace":
        return Subspace(ambient, [])

    @staticmethod
    def full(ambient: Space) -> "Subspace":
        return Subspace(ambient, [(i, {i: ONE}) for i in range(ambient.dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: dict) -> dict:
        return self._ech.reduce(v)[0]

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def coords(self, v: dict) -> list:
        """Coefficients of v in ``basis`` (v must lie in the subspace)."""
        return [v.get(p, ZERO) for p in self.pivots]

    def combine(self, coeffs: Sequence) -> dict:
        out: dict = {}
        for c, b in zip(coeffs, self.basis):
            axpy(out, as_scalar(c), b)
        return out

    def inclusion(self) -> "LinMap":
        return LinMap(Space.named(self.dim, "b"), self.ambient, [dict(b) for b in self.basis])

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        # a in self, b in other with a - b = 0
        src = Space.named(self.dim + other.dim, "c")
        cols = [dict(b) for b in self.basis] + [vscale(b, -1) for b in other.basis]
        ker = kernel(LinMap(src, self.ambient, cols))
        vecs = []
        for k in ker.basis:
            acc: dict = {}
            for i, c in k.items():
                if i < self.dim:
                    axpy(acc, c, self.basis[i])
            vecs.append(acc)
        return Subspace.span(self.ambient, vecs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient.dim == other.ambient.dim
                and self.pivots == other.pivots and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient.dim, self.pivots))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.ambient.dim})"


# --- linear maps -----------------------------------------------------------------

class LinMap:
    """Exact linear map given by sparse columns (images of source basis vectors)."""

    __slots__ = ("source", "target", "cols", "_solver")

    def __init__(self, source: Space, target: Space, cols: Sequence[dict]):
        if len(cols) != source.dim:
            raise DimensionMismatch(f"expected {source.dim} columns, got {len(cols)}")
        self.source = source
        self.target = target
        self.cols = tuple(clean(c) for c in cols)
        self._solver = None

    @staticmethod
    def identity(space: Space) -> "LinMap":
        return LinMap(space, space, [{i: ONE} for i in range(space.dim)])

    @staticmethod
    def zero(source: Space, target: Space) -> "LinMap":
        return LinMap(source, target, [{} for _ in range(source.dim)])

    @staticmethod
    def from_matrix(source: Space, target: Space, rows: Sequence[Sequence]) -> "LinMap":
        if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
            raise DimensionMismatch("matrix shape does not match spaces")
        cols = [{} for _ in range(source.dim)]
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                x = as_scalar(x)
                if x:
                    cols[j][i] = x
        return LinMap(source, target, cols)

    @staticmethod
    def from_function(source: Space, target: Space, fn) -> "LinMap":
        return LinMap(source, target, [fn(j) for j in range(source.dim)])

    def matrix(self) -> list[list[Cyc]]:
        rows = [[ZERO] * self.source.dim for _ in range(self.target.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        cols = self.cols
        for j, c in v.items():
            axpy(out, c, cols[j])
        return out

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if other.target.dim != self.source.dim:
            raise DimensionMismatch(f"cannot compose {self.source.dim} <- {other.target.dim}")
        return LinMap(other.source, self.target, [self(c) for c in other.cols])

    def __add__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.source, self.target, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._check_same(other)
        return LinMap(self.source, self.target, [vsub(a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> "LinMap":
        return self.scale(-ONE)

    def scale(self, s) -> "LinMap":
        return LinMap(self.source, self.target, [vscale(c, s) for c in self.cols])

    def _check_same(self, other: "LinMap") -> None:
        if self.source.dim != other.source.dim or self.target.dim != other.target.dim:
            raise DimensionMismatch("maps have different shapes")

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinMap) and self.source.dim == other.source.dim
                and self.target.dim == other.target.dim and self.cols == other.cols)

    def __hash__(self):
        return hash((self.source.dim, self.target.dim))

    def __repr__(self) -> str:
        return f"LinMap({self.source.dim} -> {self.target.dim})"

    def transpose(self) -> "LinMap":
        cols = [{} for _ in range(self.target.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                cols[i][j] = x
        return LinMap(self.target, self.source, cols)

    def first_difference(self, other: "LinMap"):
        """Index of the first source basis vector on which two maps differ, or None."""
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def restrict(self, sub: Subspace) -> "LinMap":
        """The map composed with the inclusion of ``sub`` (source coordinates = sub basis)."""
        return LinMap(Space.named(sub.dim, "b"), self.target, [self(b) for b in sub.basis])

    @property
    def rank(self) -> int:
        return image(self).dim

    def solver(self) -> Echelon:
        if self._solver is None:
            ech = Echelon()
            for j, c in enumerate(self.cols):
                ech.add(c, {j: ONE})
            self._solver = ech
        return self._solver

    def inverse(self) -> "LinMap":
        if self.source.dim != self.target.dim:
            raise NotInvertible("non-square map")
        cols = []
        for i in range(self.target.dim):
            x = solve(self, {i: ONE})
            if x is None:
                raise NotInvertible("map is singular", {"missing_target_basis": self.target.label(i)})
            cols.append(x)
        return LinMap(self.target, self.source, cols)


def kernel(f: LinMap) -> Subspace:
    ech = Echelon()
    rels = []
    for j, c in enumerate(f.cols):
        r = ech.add(c, {j: ONE})
        if r is not None:
            rels.append(r)
    return Subspace.span(f.source, rels)


def image(f: LinMap) -> Subspace:
    return Subspace.span(f.target, f.cols)


def solve(f: LinMap, y: dict):
    """Some x with f(x) = y (deterministic), or None if y is not in the image."""
    res, tag = f.solver().reduce(y, {})
    if res:
        return None
    return {k: -x for k, x in tag.items()}


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    dg = g.target.dim
    cols = []
    for a in f.cols:
        for b in g.cols:
            cols.append(vtensor(a, b, dg))
    return LinMap(f.source.tensor(g.source), f.target.tensor(g.target), cols)


def stack(maps: Sequence[LinMap]) -> LinMap:
    """The map v -> (f_1(v), ..., f_k(v)) into the direct sum of the targets."""
    src = maps[0].source
    offsets, total = [], 0
    for m in maps:
        offsets.append(total)
        total += m.target.dim
    cols = []
    for j in range(src.dim):
        c = {}
        for off, m in zip(offsets, maps):
            for i, x in m.cols[j].items():
                c[off + i] = x
        cols.append(c)
    return LinMap(src, Space(total), cols)


class QuotientSpace:
    """V / W with the canonical complement spanned by non-pivot basis vectors."""

    __slots__ = ("ambient", "relations", "space", "projection", "section", "free")

    def __init__(self, ambient: Space, relations: Subspace):
        self.ambient = ambient
        self.relations = relations
        pivset = set(relations.pivots)
        self.free = tuple(i for i in range(ambient.dim) if i not in pivset)
        pos = {i: k for k, i in enumerate(self.free)}
        self.space = Space([f"[{ambient.label(i)}]" for i in self.free]) if ambient.dim <= 4096 else Space(len(self.free))
        row_of = dict(zip(relations.pivots, relations.basis))
        cols = []
        for j in range(ambient.dim):
            if j in pos:
                cols.append({pos[j]: ONE})
            else:
                cols.append({pos[k]: -x for k, x in row_of[j].items() if k != j})
        self.projection = LinMap(ambient, self.space, cols)
        self.section = LinMap(self.space, ambient, [{i: ONE} for i in self.free])

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, v: dict) -> dict:
        return self.projection(v)

    def lift(self, q: dict) -> dict:
        return self.section(q)


def quotient(V: Space, W: Subspace) -> QuotientSpace:
    if W.ambient.dim != V.dim:
        raise DimensionMismatch("relations do not live in V")
    return QuotientSpace(V, W)
