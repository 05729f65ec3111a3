import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ncgauge.bundle import (ConnectionForm, build_bundle, bundle_gauge_transform, check_chi_covariance,
                            check_connection_form, check_galois, check_trivialisation, cocycle_cross_product,
                            connection_from_gauge_field, connection_from_projection, connection_space,
                            extract_cocycle_data, find_trivialisation, global_gauge_from_local, is_strong,
                            projection_from_connection, trivial_cocycle_data)
from ncgauge.bundle.core import galois_map
from ncgauge.catalog import (crossprod_mu, crossprod_swap, function_algebra, ground_algebra, group_algebra, load)
from ncgauge.comodule import ComoduleAlgebra, trivial_comodule
from ncgauge.errors import NotFree, NotGalois
from ncgauge.field import ONE, Cyc
from ncgauge.linalg import LinMap, axpy

BUNDLES = ["kZ2", "kZn:3", "sweedler", "taft:3", "fnZ4-over-fnZ2", "matrix3-z2", "crossprod-mu:3",
           "crossprod-swap:2"]


@pytest.mark.parametrize("name", BUNDLES)
def test_galois_and_covariance(name):
    b = load(name).bundle
    rep = check_galois(b)
    assert rep.ok, rep.failures()
    assert check_chi_covariance(b).ok


def test_translation_map_inverts_galois():
    b = load("taft:3").bundle
    H = b.H
    for h in range(H.dim):
        tau = b.translation({h: ONE})
        assert b.chi(tau) == {i * H.dim + h: ONE for i, c in b.P.unit.items()}


def test_trivial_coaction_is_not_galois():
    H = group_algebra(2)
    A = function_algebra(2).algebra
    P = ComoduleAlgebra(A, trivial_comodule(H, 2), "trivial")
    with pytest.raises((NotGalois, NotFree)):
        build_bundle(P)


# --- connections against an independent sympy computation ---------------------------------------

def rational(c: Cyc):
    f = c.to_fraction()
    return sympy.Rational(f.numerator, f.denominator)


def oracle_connection_directions(P):
    """dim of Ad-invariant horizontal 1-forms P(Ω¹M)P ∩ (P⊗P)^coH.

    For a 2-dimensional commutative cocommutative H the adjoint coaction on
    ker ε is trivial, so directions of the affine space of connections are
    exactly the invariant horizontal forms.
    """
    d, dh = P.dim, P.host.dim
    mul = lambda i, j: {k: rational(v) for k, v in P.mul({i: ONE}, {j: ONE}).items()}
    rho = sympy.zeros(d * dh, d)
    for i in range(d):
        for k, v in P.rho({i: ONE}).items():
            rho[k, i] = rational(v)
    unit_h = [rational(P.host.unit.get(h, Cyc(0))) for h in range(dh)]
    emb = sympy.zeros(d * dh, d)
    for i in range(d):
        for h in range(dh):
            emb[i * dh + h, i] = unit_h[h]
    Mbasis = (rho - emb).nullspace()
    # horizontal forms p (1⊗m − m⊗1) q
    cols = []
    for m in Mbasis:
        mv = {k: m[k] for k in range(d) if m[k] != 0}
        for p in range(d):
            for q in range(d):
                v = sympy.zeros(d * d, 1)
                for a, x in mv.items():
                    for k, y in mul(a, q).items():
                        v[p * d + k] += x * y
                    for k, y in mul(p, a).items():
                        v[k * d + q] -= x * y
                cols.append(v)
    Hor = sympy.Matrix.hstack(*cols)
    # diagonal coaction on P⊗P minus (·)⊗1
    dd = d * d
    R = sympy.zeros(dd * dh, dd)
    for i in range(d):
        for j in range(d):
            for k1, v1 in P.rho({i: ONE}).items():
                a, h1 = divmod(k1, dh)
                for k2, v2 in P.rho({j: ONE}).items():
                    c, h2 = divmod(k2, dh)
                    for h, w in P.host.mul({h1: ONE}, {h2: ONE}).items():
                        R[(a * d + c) * dh + h, i * d + j] += rational(v1) * rational(v2) * rational(w)
            for h in range(dh):
                R[(i * d + j) * dh + h, i * d + j] -= unit_h[h]
    Inv = sympy.Matrix.hstack(*R.nullspace())
    r_h, r_i = Hor.rank(), Inv.rank()
    return r_h + r_i - sympy.Matrix.hstack(Hor, Inv).rank()


# frozen: (directions, strong directions); directions cross-checked against the oracle above
CONNECTION_DIMS = {"kZ2": (0, 0), "sweedler": (0, 0), "taft:3": (0, 0), "fnZ4-over-fnZ2": (4, 2),
                   "crossprod-swap:2": (4, 2), "matrix3-z2": (31, 11)}


@pytest.mark.parametrize("name", ["fnZ4-over-fnZ2", "crossprod-swap:2", "matrix3-z2"])
def test_connection_directions_match_oracle(name):
    b = load(name).bundle
    assert oracle_connection_directions(b.P) == CONNECTION_DIMS[name][0]


@pytest.mark.parametrize("name", list(CONNECTION_DIMS))
def test_connection_space_dimensions(name):
    b = load(name).bundle
    base, dirs = connection_space(b)
    sbase, sdirs = connection_space(b, strong=True)
    assert (len(dirs), len(sdirs)) == CONNECTION_DIMS[name]
    assert check_connection_form(b, base).ok
    w = ConnectionForm(b, sbase)
    assert is_strong(w)[0]


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_generic_connections_roundtrip(seed):
    rng = random.Random(seed)
    b = load("crossprod-swap:2").bundle
    base, dirs = connection_space(b)
    cols = [dict(c) for c in base.cols]
    for dvec in dirs:
        s = Cyc(rng.randint(-3, 3))
        for i, c in enumerate(dvec.cols):
            axpy(cols[i], s, c)
    omega = LinMap(base.source, base.target, cols)
    assert check_connection_form(b, omega).ok
    w = ConnectionForm(b, omega)
    Pi = projection_from_connection(w)
    assert connection_from_projection(Pi).omega == omega
    assert projection_from_connection(connection_from_projection(Pi)).equal_on_forms(Pi)
    verdict, rep = is_strong(w)
    a, c = (chk.passed for chk in rep.checks)
    assert a == c == verdict


def test_connection_from_trivialisation_is_strong():
    ex = load("crossprod-swap:3")
    b, t = ex.bundle, ex.trivialisation
    w = connection_from_gauge_field(b, None, t.Phi, t.Phi_inv, check_strong=False)
    assert is_strong(w)[0]


# --- trivialisations --------------------------------------------------------------------------------

def test_fnz4_is_trivializable():
    res = find_trivialisation(load("fnZ4-over-fnZ2").bundle)
    assert res.found
    assert check_trivialisation(res.trivialisation).ok


def test_matrix3_has_no_trivialisation():
    res = find_trivialisation(load("matrix3-z2").bundle)
    assert not res.found and res.status == "fail"
    assert res.certificate["reason"]


# --- cocycle cross products ---------------------------------------------------------------------------

def test_trivial_cocycle_gives_tensor_product():
    data = trivial_cocycle_data(function_algebra(2).algebra, group_algebra(3))
    b, t = cocycle_cross_product(data)
    assert check_galois(b).ok
    back = extract_cocycle_data(b, data.M)
    assert back.c == data.c and back.alpha == data.alpha


@pytest.mark.parametrize("make", [lambda: crossprod_mu(3), lambda: crossprod_mu(Fraction(-2, 5)),
                                  lambda: crossprod_swap(3)])
def test_extract_reproduces_cocycle(make):
    data = make()
    b, _ = cocycle_cross_product(data)
    back = extract_cocycle_data(b, data.M)
    assert back.c == data.c and back.alpha == data.alpha


nonzero = st.fractions(min_value=-6, max_value=6, max_denominator=5).filter(lambda x: x != 0)


@given(nonzero, nonzero)
@settings(max_examples=25, deadline=None)
def test_gauge_transform_rescales_cocycle(mu, lam):
    # γ(g) = λ: the transformed bundle is again a cross product, with c(g⊗g) = μ/λ²
    data = crossprod_mu(mu)
    b, t = cocycle_cross_product(data)
    k = ground_algebra()
    gamma = LinMap(b.H.space, k.space, [{0: ONE}, {0: Cyc(lam)}])
    GB = bundle_gauge_transform(b, global_gauge_from_local(b, gamma, t))
    got = extract_cocycle_data(GB.bundle, k)
    assert got.c.cols[3].get(0) == Cyc(mu) / Cyc(lam * lam)
    rebuilt, _ = cocycle_cross_product(got)
    assert rebuilt.P.algebra.mult == GB.bundle.P.algebra.mult


def test_galois_map_shape():
    b = load("matrix3-z2").bundle
    chi = galois_map(b.P)
    assert chi.source.dim == b.P.dim ** 2
    assert chi.target.dim == b.P.dim * b.H.dim
    assert chi.rank == b.chi.rank == b.P.dim * b.H.dim
