import random

import pytest
from hypothesis import given, settings, strategies as st

from ncgauge.braided import braided_line
from ncgauge.catalog import function_algebra, ground_algebra, group_algebra, sweedler
from ncgauge.errors import InvariantFailure
from ncgauge.field import ONE, Cyc
from ncgauge.linalg import LinMap
from ncgauge.local import (FormMap, LocalTheory, bianchi_residual, check_local_theory, curvature, gauge_field,
                           local_gauge_transform, nabla, random_gauge_field, random_gauge_transform,
                           random_matter_field)

BASES = {"k": ground_algebra, "k(Z2)": lambda: function_algebra(2).algebra,
         "k(Z3)": lambda: function_algebra(3).algebra}
COALGEBRAS = {"kZ2": lambda: group_algebra(2), "kZ3": lambda: group_algebra(3), "sweedler": sweedler,
              "braided-line:2": lambda: braided_line(2), "braided-line:3": lambda: braided_line(3)}


def theory(base, coalg):
    B = COALGEBRAS[coalg]()
    return LocalTheory(BASES[base](), B.coalgebra, B.unit), B


@given(st.sampled_from(["k", "k(Z2)"]), st.sampled_from(list(COALGEBRAS)), st.integers(0, 2),
       st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_local_identities(base, coalg, degree, seed):
    rng = random.Random(seed)
    T, B = theory(base, coalg)
    A = random_gauge_field(T, rng)
    sigma = random_matter_field(T, B.space, degree, rng)
    gammas = [random_gauge_transform(T, rng) for _ in range(2)]
    rep = check_local_theory(T, A, sigma, B.coalgebra.comult, gammas)
    assert rep.ok, rep.failures()


@given(st.sampled_from(list(COALGEBRAS)), st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_pure_gauge_is_flat(coalg, seed):
    rng = random.Random(seed)
    T, _ = theory("k(Z2)", coalg)
    g = random_gauge_transform(T, rng)
    A = T.convolve(T.inverse(g), T.d(g))
    assert curvature(T, A).is_zero
    # and equals the transform of A = 0
    zero = FormMap(LinMap.zero(A.lin.source, A.lin.target), 1)
    assert local_gauge_transform(T, zero, g).lin == A.lin


def test_over_k_everything_vanishes():
    # Ω¹k = 0: the only gauge field is 0 and its curvature is 0
    T, _ = theory("k", "kZ3")
    A = random_gauge_field(T, random.Random(1))
    assert A.is_zero
    assert curvature(T, A).is_zero


def test_non_flat_example():
    T, B = theory("k(Z2)", "kZ2")
    A = random_gauge_field(T, random.Random(3))
    F = curvature(T, A)
    assert F.degree == 2
    assert not F.is_zero
    assert bianchi_residual(T, A, F).is_zero


def test_gauge_field_conditions():
    T, B = theory("k(Z2)", "kZ2")
    bad = LinMap(B.space, T.forms_space(1), [{0: ONE}, {}])
    with pytest.raises(InvariantFailure):
        gauge_field(T, bad)


def test_nabla_of_zero_matter_is_zero():
    T, B = theory("k(Z3)", "kZ3")
    A = random_gauge_field(T, random.Random(5))
    sigma = FormMap(LinMap.zero(B.space, T.forms_space(0)), 0)
    assert nabla(T, sigma, A, B.coalgebra.comult).is_zero


def test_unit_must_be_group_like():
    B = group_algebra(2)
    with pytest.raises(InvariantFailure):
        LocalTheory(ground_algebra(), B.coalgebra, {0: Cyc(2)})
