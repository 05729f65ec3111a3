"""JSON encoding of Hopf algebras, algebras and comodules.

Scalars are an integer, a string "p/q", or a list [c0, c1, ...] meaning
Σ c_k ζ^k with ζ the primitive root of the declared cyclotomic field.
Tensors are nested lists indexed by basis position:

  mult[i][j][k]      coefficient of e_k in e_i e_j
  comult[i][j][k]    coefficient of e_j⊗e_k in Δe_i
  antipode[i][j]     coefficient of e_j in S e_i
  coaction[i][j][h]  coefficient of e_j⊗h in ρ(e_i)
  dqt[i][j]          R(e_i⊗e_j)
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from pathlib import Path

from .catalog import load
from .comodule import Comodule, ComoduleAlgebra
from .errors import ParseError
from .field import ZERO, Cyc
from .hopf import Algebra, Coalgebra, DualQuasitriangular, HopfAlgebra
from .linalg import LinMap, Space

__all__ = [
    "scalar_to_json", "scalar_from_json", "hopf_to_json", "hopf_from_json", "algebra_to_json",
    "algebra_from_json", "comodule_to_json", "comodule_from_json", "bundle_to_json", "bundle_from_json",
    "load_json", "conductor_of",
]


# --- scalars ----------------------------------------------------------------------------------

def scalar_to_json(c: Cyc, n: int = 1):
    if c.n == 1:
        f = c.coefficients()[0]
        return f.numerator if f.denominator == 1 else str(f)
    nums, den = c.lift(n)
    return [_rational(Fraction(a, den)) for a in nums]


def _rational(f: Fraction):
    return f.numerator if f.denominator == 1 else str(f)


def scalar_from_json(obj, n: int, where: str) -> Cyc:
    try:
        if isinstance(obj, bool):
            raise ValueError("booleans are not scalars")
        if isinstance(obj, (int, str)):
            return Cyc(Fraction(obj))
        if isinstance(obj, list):
            if n == 1 and len(obj) > 1:
                raise ValueError("irrational scalar in the rational field")
            return Cyc.from_coeffs(max(n, 1), [Fraction(x) for x in obj])
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ParseError(f"bad scalar: {e}", {"location": where}) from None
    raise ParseError(f"bad scalar {obj!r}", {"location": where})


def conductor_of(scalars) -> int:
    n = 1
    for c in scalars:
        n = lcm(n, c.n)
    return n


# --- tensors ----------------------------------------------------------------------------------

def _shape(obj, dims: tuple[int, ...], where: str) -> None:
    if not dims:
        return
    if not isinstance(obj, list) or len(obj) != dims[0]:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise ParseError(f"expected a list of length {dims[0]}, got {got}", {"location": where})
    for i, x in enumerate(obj):
        _shape(x, dims[1:], f"{where}[{i}]")


def _field(obj: dict) -> int:
    f = _get(obj, "field", "$", {"cyclotomic": 1})
    if not isinstance(f, dict) or not isinstance(f.get("cyclotomic"), int) or f["cyclotomic"] < 1:
        raise ParseError("field must be {\"cyclotomic\": n} with n ≥ 1", {"location": "$.field"})
    return f["cyclotomic"]


_MISSING = object()


def _get(obj: dict, key: str, where: str, default=_MISSING):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", {"location": where})
    if key not in obj:
        if default is _MISSING:
            raise ParseError(f"missing field {key!r}", {"location": where})
        return default
    return obj[key]


def _dim(obj: dict, where: str) -> int:
    d = _get(obj, "dim", where)
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ParseError("dim must be a positive integer", {"location": f"{where}.dim"})
    return d


def _space(obj: dict, d: int, where: str) -> Space:
    labels = obj.get("basis")
    if labels is None:
        return Space.named(d)
    _shape(labels, (d,), f"{where}.basis")
    if not all(isinstance(x, str) for x in labels) or len(set(labels)) != d:
        raise ParseError("basis must be distinct strings", {"location": f"{where}.basis"})
    return Space(labels)


def _vector(obj, d: int, n: int, where: str) -> dict:
    _shape(obj, (d,), where)
    out = {}
    for i, x in enumerate(obj):
        c = scalar_from_json(x, n, f"{where}[{i}]")
        if c:
            out[i] = c
    return out


def _map_from_rows(rows, source: Space, target: Space, shape: tuple[int, ...], n: int, where: str) -> LinMap:
    """rows[i] (nested to ``shape``) lists the coefficients of the image of basis i."""
    _shape(rows, (source.dim,) + shape, where)
    cols = []
    for i, row in enumerate(rows):
        col = {}
        for k, (x, loc) in enumerate(_leaves(row, len(shape), f"{where}[{i}]")):
            c = scalar_from_json(x, n, loc)
            if c:
                col[k] = c
        cols.append(col)
    return LinMap(source, target, cols)


def _leaves(obj, depth: int, where: str):
    if depth == 0:
        yield obj, where
        return
    for i, x in enumerate(obj):
        yield from _leaves(x, depth - 1, f"{where}[{i}]")


def _rows(f: LinMap, n: int, inner: tuple[int, ...] = ()) -> list:
    out = []
    for col in f.cols:
        flat = [scalar_to_json(col.get(k, ZERO), n) for k in range(f.target.dim)]
        out.append(_nest(flat, inner))
    return out


def _nest(flat: list, inner: tuple[int, ...]) -> list:
    if len(inner) <= 1:
        return flat
    step = len(flat) // inner[0]
    return [_nest(flat[i * step:(i + 1) * step], inner[1:]) for i in range(inner[0])]


def _scalars_of(*maps: LinMap):
    for f in maps:
        for col in f.cols:
            yield from col.values()


# --- algebras and Hopf algebras ---------------------------------------------------------------

def algebra_to_json(A: Algebra, n: int) -> dict:
    d = A.dim
    return {"dim": d, "basis": list(A.space.labels), "mult": _nest(_rows(A.mult, n), (d, d)),
            "unit": [scalar_to_json(A.unit.get(i, ZERO), n) for i in range(d)]}


def algebra_from_json(obj: dict, n: int, where: str = "$", name: str = "") -> Algebra:
    d = _dim(obj, where)
    sp = _space(obj, d, where)
    mult = _map_from_rows(_get(obj, "mult", where), Space(d), Space(d * d), (d, d), n, f"{where}.mult")
    # rows are indexed by i with entries (j, k); regroup into columns of A⊗A -> A indexed by (i, j)
    cols = [{} for _ in range(d * d)]
    for i, row in enumerate(mult.cols):
        for jk, c in row.items():
            j, k = divmod(jk, d)
            cols[i * d + j][k] = c
    unit = _vector(_get(obj, "unit", where), d, n, f"{where}.unit")
    return Algebra(sp, LinMap(sp.tensor(sp), sp, cols), unit, name)


def hopf_to_json(H: HopfAlgebra, R: DualQuasitriangular | None = None) -> dict:
    maps = [H.algebra.mult, H.coalgebra.comult, H.coalgebra.counit, H.antipode] + ([R.R] if R else [])
    n = conductor_of(list(_scalars_of(*maps)) + [c for c in H.unit.values()])
    d = H.dim
    out = {"kind": "hopf", "name": H.name, "field": {"cyclotomic": n}}
    out.update(algebra_to_json(H.algebra, n))
    out["comult"] = [_nest(r, (d, d)) for r in _rows(H.coalgebra.comult, n)]
    out["counit"] = [scalar_to_json(H.eps_basis(i), n) for i in range(d)]
    out["antipode"] = _rows(H.antipode, n)
    if R is not None:
        out["dqt"] = [[scalar_to_json(R.value(i, j), n) for j in range(d)] for i in range(d)]
    return out


def hopf_from_json(obj: dict, where: str = "$") -> tuple[HopfAlgebra, DualQuasitriangular | None]:
    n = _field(obj)
    name = obj.get("name", "hopf") if isinstance(obj, dict) else "hopf"
    A = algebra_from_json(obj, n, where, name)
    d, sp = A.dim, A.space
    comult = _map_from_rows(_get(obj, "comult", where), sp, sp.tensor(sp), (d, d), n, f"{where}.comult")
    eps = _vector(_get(obj, "counit", where), d, n, f"{where}.counit")
    counit = LinMap(sp, Space(["1"]), [{0: eps[i]} if i in eps else {} for i in range(d)])
    S = _map_from_rows(_get(obj, "antipode", where), sp, sp, (d,), n, f"{where}.antipode")
    H = HopfAlgebra(A, Coalgebra(sp, comult, counit), S, str(name))
    R = None
    if "dqt" in obj:
        _shape(obj["dqt"], (d, d), f"{where}.dqt")
        table = [[scalar_from_json(obj["dqt"][i][j], n, f"{where}.dqt[{i}][{j}]") for j in range(d)]
                 for i in range(d)]
        R = DualQuasitriangular.from_table(H, lambda i, j: table[i][j])
    return H, R


# --- comodules and bundles --------------------------------------------------------------------

def comodule_to_json(V: Comodule, host_ref, one: dict | None = None) -> dict:
    n = conductor_of(_scalars_of(V.coaction))
    H = V.host
    out = {"host": host_ref, "field": {"cyclotomic": n}, "dim": V.dim, "basis": list(V.space.labels),
           "coaction": [_nest(r, (V.dim, H.dim)) for r in _rows(V.coaction, n)]}
    if one is not None:
        out["one"] = [scalar_to_json(one.get(i, ZERO), n) for i in range(V.dim)]
    return out


def _host_from_json(ref, where: str) -> HopfAlgebra:
    if isinstance(ref, str):
        try:
            ex = load(ref)
        except ParseError as e:
            raise ParseError(str(e), {"location": where}) from None
        if ex.hopf is None:
            raise ParseError(f"catalog entry {ref!r} has no Hopf algebra", {"location": where})
        return ex.hopf
    return hopf_from_json(ref, where)[0]


def comodule_from_json(obj: dict, where: str = "$", space: Space | None = None,
                       n: int | None = None) -> tuple[Comodule, dict | None]:
    H = _host_from_json(_get(obj, "host", where), f"{where}.host")
    n = _field(obj) if n is None else n
    d = _dim(obj, where)
    sp = space if space is not None else _space(obj, d, where)
    if sp.dim != d:
        raise ParseError(f"comodule dimension {d} differs from the algebra dimension {sp.dim}",
                         {"location": f"{where}.dim"})
    if "grading" in obj:
        co = _graded(obj["grading"], sp, H, f"{where}.grading")
    else:
        co = Comodule(sp, _map_from_rows(_get(obj, "coaction", where), sp, sp.tensor(H.space), (d, H.dim), n,
                                         f"{where}.coaction"), H, "ρ")
    one = _vector(obj["one"], d, n, f"{where}.one") if "one" in obj else None
    return co, one


def _graded(grading, sp: Space, H: HopfAlgebra, where: str) -> Comodule:
    """ρ(e_i) = e_i⊗g^{a_i} for a host kℤ_n whose basis is the powers of g."""
    _shape(grading, (sp.dim,), where)
    dh = H.dim
    for i, a in enumerate(grading):
        if not isinstance(a, int) or isinstance(a, bool):
            raise ParseError("grading entries must be integers", {"location": f"{where}[{i}]"})
        if H.delta_basis(a % dh) != {(a % dh) * dh + a % dh: Cyc(1)}:
            raise ParseError("grading requires a group algebra host", {"location": f"{where}[{i}]"})
    return Comodule.from_function(sp, H, lambda i: {i * dh + grading[i] % dh: Cyc(1)}, "grading")


def bundle_to_json(P: ComoduleAlgebra, host_ref) -> dict:
    n = conductor_of(list(_scalars_of(P.algebra.mult, P.comodule.coaction)) + list(P.unit.values()))
    return {"kind": "bundle", "name": P.name, "field": {"cyclotomic": n},
            "algebra": algebra_to_json(P.algebra, n),
            "comodule": {k: v for k, v in comodule_to_json(P.comodule, host_ref).items() if k != "basis"}}


def bundle_from_json(obj: dict) -> ComoduleAlgebra:
    n = _field(obj)
    name = str(obj.get("name", "bundle"))
    A = algebra_from_json(_get(obj, "algebra", "$"), n, "$.algebra", name)
    co, _ = comodule_from_json(_get(obj, "comodule", "$"), "$.comodule", A.space, n)
    return ComoduleAlgebra(A, co, name)


def load_json(path: str | Path):
    """Parse a file into ("hopf", (H, R)) or ("bundle", P)."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}", {"location": str(path)}) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", {"location": f"line {e.lineno}, column {e.colno}"}) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", {"location": "$"})
    kind = obj.get("kind") or ("bundle" if "algebra" in obj else "hopf")
    if kind == "hopf":
        return "hopf", hopf_from_json(obj)
    if kind == "bundle":
        return "bundle", bundle_from_json(obj)
    raise ParseError(f"unknown kind {kind!r}", {"location": "$.kind"})
