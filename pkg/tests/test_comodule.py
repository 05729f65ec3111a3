import pytest
import sympy

from ncgauge.bundle import cocycle_cross_product
from ncgauge.catalog import (crossprod_swap, fn_z4_over_fn_z2, function_algebra, group_algebra, matrix3_z2, sweedler,
                             taft)
from ncgauge.comodule import (Comodule, ComoduleAlgebra, check_comodule, check_comodule_algebra, fixed_subalgebra,
                              intertwiner_space, is_intertwiner, regular_comodule, standard_comodules,
                              tensor_comodule, trivial_comodule)
from ncgauge.field import ONE
from ncgauge.linalg import LinMap

RATIONAL_HOPF = {"kZ2": lambda: group_algebra(2), "kZ3": lambda: group_algebra(3),
                 "k(Z2)": lambda: function_algebra(2), "sweedler": sweedler}


@pytest.mark.parametrize("name", ["kZ3", "k(Z2)", "sweedler", "taft:3"])
def test_standard_comodules(name):
    H = taft(3) if name == "taft:3" else RATIONAL_HOPF[name]()
    for key, V in standard_comodules(H).items():
        assert check_comodule(V).ok, key
    VW = tensor_comodule(standard_comodules(H)["H_R"], standard_comodules(H)["H_L"])
    assert check_comodule(VW).ok


def oracle_intertwiner_dim(V, W):
    """Nullspace of f -> ρ_W f - (f⊗id) ρ_V over Q, as a sympy matrix."""
    dv, dw, dh = V.dim, W.dim, V.host.dim
    # unknown f(e_j)_a has index a*dv + j; one equation per (e_j, output e_b ⊗ e_h)
    eqs = {}
    for j in range(dv):
        for a in range(dw):
            var = a * dv + j
            for t, c in W.rho_basis(a).items():
                b, h = divmod(t, dh)
                eqs.setdefault((j, b, h), {}).setdefault(var, 0)
                eqs[(j, b, h)][var] += c.to_fraction()
        for t, c in V.rho_basis(j).items():
            i, h = divmod(t, dh)
            for b in range(dw):
                var = b * dv + i
                eqs.setdefault((j, b, h), {}).setdefault(var, 0)
                eqs[(j, b, h)][var] -= c.to_fraction()
    keys = sorted(eqs)
    M = sympy.zeros(len(keys), dv * dw)
    for r, k in enumerate(keys):
        for var, c in eqs[k].items():
            M[r, var] += sympy.Rational(c.numerator, c.denominator)
    return dv * dw - M.rank()


@pytest.mark.parametrize("name", list(RATIONAL_HOPF))
def test_intertwiner_dimensions_match_oracle(name):
    H = RATIONAL_HOPF[name]()
    comods = dict(standard_comodules(H))
    comods["k"] = trivial_comodule(H)
    for kv, V in comods.items():
        for kw, W in comods.items():
            sp = intertwiner_space(V, W)
            assert sp.dim == oracle_intertwiner_dim(V, W), (kv, kw)
            for f in sp.maps():
                assert is_intertwiner(f, V, W)


def test_regular_comodule_endomorphisms():
    # End(H_R) in the comodule category is H* acting by convolution: dimension dim H
    for H in (group_algebra(3), sweedler(), taft(3)):
        V = regular_comodule(H)
        assert intertwiner_space(V, V).dim == H.dim


# frozen from an independent count: block-diagonal matrices, even functions, M ⊗ k(Z2)
FIXED_DIMS = {"fnZ4": 2, "matrix3": 5, "crossprod-swap": 2}


def test_fixed_subalgebra_dimensions():
    assert fixed_subalgebra(fn_z4_over_fn_z2()).dim == FIXED_DIMS["fnZ4"]
    assert fixed_subalgebra(matrix3_z2()).dim == FIXED_DIMS["matrix3"]
    b, _ = cocycle_cross_product(crossprod_swap(3))
    assert b.M.dim == FIXED_DIMS["crossprod-swap"]
    for H in (group_algebra(2), sweedler(), taft(3)):
        P = ComoduleAlgebra(H.algebra, regular_comodule(H))
        assert fixed_subalgebra(P).dim == 1


def test_fixed_subalgebra_is_closed():
    F = fixed_subalgebra(matrix3_z2())
    P = matrix3_z2()
    for x in F.subspace.basis:
        for y in F.subspace.basis:
            assert F.contains(P.mul(x, y))


@pytest.mark.parametrize("make", [fn_z4_over_fn_z2, matrix3_z2])
def test_bundle_total_spaces_are_comodule_algebras(make):
    assert check_comodule_algebra(make()).ok


def test_broken_coaction_fails():
    H = group_algebra(2)
    # ρ(e_i) = e_{1-i}⊗1 is not counital
    V = Comodule(H.space, LinMap(H.space, H.space.tensor(H.space), [{(1 - i) * 2: ONE} for i in range(2)]), H)
    rep = check_comodule(V)
    assert not rep.ok
    assert rep.failures()[0].witness
