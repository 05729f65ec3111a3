import random

import pytest
import sympy

from ncgauge.braided import (bosonisation_as_braided_bundle, bosonisation_as_quantum_bundle, bosonise,
                             braided_ad_candidate, braided_line, braided_trivial_bundle,
                             check_braided_comodule_algebra, check_braided_connection, check_braided_group,
                             cyclic_category, entwining_from_bosonisation, find_taft_isomorphism, qgtensconn,
                             tensconn, zeta_binomial)
from ncgauge.bundle import check_connection_form, check_galois, connection_space, random_gauge_field
from ncgauge.catalog import ground_algebra, sweedler, taft
from ncgauge.comodule import regular_comodule, trivial_comodule
from ncgauge.field import Cyc, zeta
from ncgauge.hopf import check_hopf_axioms, find_hopf_isomorphism, is_hopf_isomorphism

Q = sympy.Symbol("q")


def gaussian_binomial(m, k):
    num = sympy.prod([1 - Q ** (m - i) for i in range(k)])
    den = sympy.prod([1 - Q ** (i + 1) for i in range(k)])
    return sympy.Poly(sympy.cancel(num / den), Q).all_coeffs()[::-1]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_q_binomials_match_gaussian_polynomials(n):
    q = zeta(n)
    for m in range(n + 1):
        for k in range(m + 1):
            coeffs = gaussian_binomial(m, k)
            expect = sum((Cyc(int(c)) * q**i for i, c in enumerate(coeffs)), Cyc(0))
            assert zeta_binomial(m, k, q) == expect


def test_q_binomials_vanish_at_order():
    for n in (2, 3, 4, 5):
        q = zeta(n)
        assert all(not zeta_binomial(n, k, q) for k in range(1, n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_braided_line_is_a_braided_group(n):
    rep = check_braided_group(braided_line(n))
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("n", [2, 3])
def test_braiding_hexagons(n):
    B = braided_line(n)
    cat = B.category
    HR = regular_comodule(cat.H)
    assert cat.check_hexagons(B.comodule, B.comodule, B.comodule).ok
    assert cat.check_hexagons(HR, B.comodule, HR).ok
    assert cat.check_naturality(B.antipode, B.comodule, B.comodule, B.comodule).ok


def test_wrong_root_breaks_braided_group():
    # the braided line needs q of order exactly n in the braiding
    cat = cyclic_category(3, zeta(3))
    B = braided_line(3, zeta(3), cat)
    assert check_braided_group(B).ok
    cat2 = cyclic_category(3, Cyc(1))
    assert not check_braided_group(braided_line(3, zeta(3), cat2)).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bosonisation_is_taft_at_inverse_root(n):
    B = braided_line(n)
    bos = bosonise(B.category, B)
    assert check_hopf_axioms(bos.hopf).ok
    T = taft(n, zeta(n, n - 1))
    phi = find_taft_isomorphism(bos, T, n)
    assert phi is not None and is_hopf_isomorphism(phi, T, bos.hopf)


def test_bosonisation_is_not_taft_at_same_root():
    # taft(3, q) and taft(3, q⁻¹) are not isomorphic; the bosonisation matches only the latter
    B = braided_line(3)
    bos = bosonise(B.category, B)
    assert find_taft_isomorphism(bos, taft(3, zeta(3)), 3) is None


def test_bosonisation_2_is_sweedler():
    B = braided_line(2)
    bos = bosonise(B.category, B)
    assert find_hopf_isomorphism(sweedler(), bos.hopf) is not None


@pytest.mark.parametrize("n", [2, 3])
def test_bosonisation_bundles(n):
    B = braided_line(n)
    bos = bosonise(B.category, B)
    bb, Phi, Phi_inv = bosonisation_as_braided_bundle(bos)
    assert check_galois(bb.bundle).ok
    assert check_braided_comodule_algebra(bb.P, bos.B, bb.P_H).ok
    assert bb.bundle.M.dim == n
    qb, QPhi, QPhi_inv = bosonisation_as_quantum_bundle(bos)
    assert check_galois(qb).ok
    assert qb.M.dim == n


@pytest.mark.parametrize("n", [2, 3])
def test_tensconn_and_qgtensconn_at_zero(n):
    B = braided_line(n)
    bos = bosonise(B.category, B)
    bb, _, _ = bosonisation_as_braided_bundle(bos)
    w0 = tensconn(bb, None)
    ad = braided_ad_candidate(bb, w0)
    assert ad is not None
    assert check_braided_connection(bb, w0, ad).ok
    qb, _, _ = bosonisation_as_quantum_bundle(bos)
    omega = qgtensconn(bos, qb, None)
    assert check_connection_form(qb, omega).ok


def test_qgtensconn_generic():
    B = braided_line(3)
    bos = bosonise(B.category, B)
    qb, _, _ = bosonisation_as_quantum_bundle(bos)
    A = random_gauge_field(qb, random.Random(0))
    assert any(A.cols)
    assert check_connection_form(qb, qgtensconn(bos, qb, A)).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_entwining(n):
    B = braided_line(n)
    bos = bosonise(B.category, B)
    _, rep = entwining_from_bosonisation(bos)
    assert rep.ok, rep.failures()
    names = {c.name for c in rep.checks}
    assert {"Δ̲∘π = (π⊗π)∘Δ", "ker π is a right ideal", "explicit ψ = braided-bundle ψ"} <= names


@pytest.mark.parametrize("n", [2, 3])
def test_braided_trivial_bundle(n):
    B = braided_line(n)
    bb, _, _ = braided_trivial_bundle(ground_algebra(), trivial_comodule(B.category.H), B)
    assert check_galois(bb.bundle).ok
    assert check_braided_comodule_algebra(bb.P, B, bb.P_H).ok
    assert check_braided_connection(bb, tensconn(bb, None)).ok


def test_quantum_bundle_of_bosonisation_has_connections():
    B = braided_line(2)
    bos = bosonise(B.category, B)
    qb, _, _ = bosonisation_as_quantum_bundle(bos)
    assert connection_space(qb) is not None
