import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ncgauge.errors import NotInvertible
from ncgauge.field import Cyc, zeta
from ncgauge.linalg import LinMap, Space, Subspace, image, kernel, quotient, solve, tensor_map, vtensor


@st.composite
def matrices(draw, rows=None, cols=None):
    r = draw(st.integers(1, 5)) if rows is None else rows
    c = draw(st.integers(1, 5)) if cols is None else cols
    # low-rank matrices are the interesting case, so build from a product half the time
    if draw(st.booleans()):
        k = draw(st.integers(0, min(r, c)))
        a = [[draw(st.integers(-2, 2)) for _ in range(k)] for _ in range(r)]
        b = [[draw(st.integers(-2, 2)) for _ in range(c)] for _ in range(k)]
        return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
    return [[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)]


def linmap(rows):
    return LinMap.from_matrix(Space(len(rows[0])), Space(len(rows)), rows)


def as_vec(v: dict, n: int) -> sympy.Matrix:
    return sympy.Matrix([sympy.Rational(v.get(i, Cyc(0)).to_fraction()) for i in range(n)])


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_and_kernel_match_sympy(rows):
    f = linmap(rows)
    M = sympy.Matrix(rows)
    assert f.rank == M.rank()
    K = kernel(f)
    assert K.dim == len(M.nullspace())
    for v in K.basis:
        assert not f(v)
        assert M * as_vec(v, len(rows[0])) == sympy.zeros(len(rows), 1)


@given(matrices(), st.lists(st.integers(-3, 3), min_size=5, max_size=5))
@settings(max_examples=150, deadline=None)
def test_solve(rows, xs):
    f = linmap(rows)
    x = {i: Cyc(a) for i, a in enumerate(xs[: f.source.dim]) if a}
    y = f(x)
    sol = solve(f, y)
    assert sol is not None and f(sol) == y
    # a vector outside the image is reported as such
    outside = [e for e in ({i: Cyc(1)} for i in range(f.target.dim)) if not image(f).contains(e)]
    for e in outside:
        assert solve(f, e) is None


@given(matrices(3, 3))
@settings(max_examples=100, deadline=None)
def test_inverse(rows):
    f = linmap(rows)
    if sympy.Matrix(rows).det() == 0:
        with pytest.raises(NotInvertible):
            f.inverse()
    else:
        g = f.inverse()
        assert g @ f == LinMap.identity(f.source)
        assert f @ g == LinMap.identity(f.source)


@given(matrices(), matrices())
@settings(max_examples=60, deadline=None)
def test_tensor_map_is_kronecker(a, b):
    f, g = linmap(a), linmap(b)
    K = sympy.kronecker_product(sympy.Matrix(a), sympy.Matrix(b))
    h = tensor_map(f, g)
    assert [[x.to_fraction() for x in r] for r in h.matrix()] == K.tolist()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_subspace_coords_roundtrip(rows):
    S = Subspace.span(Space(len(rows[0])), [{j: Cyc(x) for j, x in enumerate(r) if x} for r in rows])
    for r in rows:
        v = {j: Cyc(x) for j, x in enumerate(r) if x}
        assert S.contains(v)
        assert S.combine(S.coords(v)) == v


def test_quotient_dimension():
    V = Space(4)
    W = Subspace.span(V, [{0: Cyc(1), 1: Cyc(1)}, {2: Cyc(1)}])
    Q = quotient(V, W)
    assert Q.dim == 2
    assert not any(Q.project({0: Cyc(1), 1: Cyc(1)}))


def test_cyclotomic_entries():
    q = zeta(3)
    f = LinMap.from_matrix(Space(2), Space(2), [[1, q], [q * q, Cyc(1)]])
    # det = 1 - q^3 = 0
    assert f.rank == 1
    (v,) = kernel(f).basis
    assert not f(v)


def test_tensor_layout_is_row_major():
    assert vtensor({1: Cyc(1)}, {2: Cyc(1)}, 3) == {5: Cyc(1)}
    assert Space(["a", "b"]).tensor(Space(["x", "y"])).label(1) == "a⊗y"
