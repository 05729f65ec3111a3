import random

import pytest
from hypothesis import given, settings, strategies as st

from ncgauge.calculus import d0, differential, form_product, is_form, universal_forms
from ncgauge.catalog import function_algebra, matrix3_z2, sweedler, taft
from ncgauge.errors import NotAForm
from ncgauge.field import Cyc
from ncgauge.linalg import axpy

ALGEBRAS = {
    "k(Z2)": lambda: function_algebra(2).algebra,
    "k(Z3)": lambda: function_algebra(3).algebra,
    "sweedler": lambda: sweedler().algebra,
    "taft:3": lambda: taft(3).algebra,
    "M3": lambda: matrix3_z2().algebra,
}


def random_form(A, n, rng, terms=3):
    basis = universal_forms(A, n).space.basis
    out = {}
    for v in rng.sample(basis, min(terms, len(basis))):
        axpy(out, Cyc(rng.randint(-3, 3)), v)
    return out


@pytest.mark.parametrize("name", ["k(Z2)", "k(Z3)", "sweedler", "M3"])
def test_form_dimensions(name):
    # dim Ω^n = d (d-1)^n for the universal calculus
    A = ALGEBRAS[name]()
    d = A.dim
    top = 2 if d <= 4 else 1
    for n in range(top + 1):
        assert universal_forms(A, n).dim == d * (d - 1) ** n


@given(st.sampled_from(["k(Z2)", "k(Z3)", "sweedler", "taft:3"]), st.integers(0, 2), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_d_squared_vanishes(name, n, seed):
    A = ALGEBRAS[name]()
    if A.dim ** (n + 3) > 20000:
        n = 0
    v = random_form(A, n, random.Random(seed))
    dv = differential(A, v, n)
    assert is_form(A, dv, n + 1)
    assert not differential(A, dv, n + 1)


@given(st.sampled_from(["k(Z3)", "sweedler", "taft:3"]), st.integers(0, 1), st.integers(0, 1), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_graded_leibniz(name, n, m, seed):
    A = ALGEBRAS[name]()
    rng = random.Random(seed)
    v, w = random_form(A, n, rng), random_form(A, m, rng)
    lhs = differential(A, form_product(A, v, n, w, m), n + m)
    rhs = form_product(A, differential(A, v, n), n + 1, w, m)
    sign = Cyc(-1) if n % 2 else Cyc(1)
    axpy(rhs, sign, form_product(A, v, n, differential(A, w, m), m + 1))
    assert lhs == rhs


def test_d0_on_basis():
    A = sweedler().algebra
    d = A.dim
    # d e_i = 1⊗e_i - e_i⊗1
    for i in range(d):
        expect = {}
        axpy(expect, Cyc(1), {0 * d + i: Cyc(1)})
        axpy(expect, Cyc(-1), {i * d + 0: Cyc(1)})
        assert d0(A, {i: Cyc(1)}) == expect
    assert not d0(A, A.unit)


def test_non_form_is_rejected():
    A = function_algebra(2).algebra
    with pytest.raises(NotAForm):
        differential(A, {0: Cyc(1)}, 1)
