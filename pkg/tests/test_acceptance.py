"""Acceptance criteria 1-9: exact identities under wall-clock limits.

Each criterion records one PASS/FAIL line; the lines are printed in the
terminal summary (see conftest.py) and by running this file directly.
"""
import random
import time
from fractions import Fraction

import pytest

from ncgauge.braided import (bosonisation_as_braided_bundle, bosonisation_as_quantum_bundle,
                             entwining_from_bosonisation)
from ncgauge.bundle import (ConnectionForm, PrincipalBundle, Trivialisation, associated_bundle,
                            bundle_gauge_transform, check_galois, check_section_correspondence, cocycle_cross_product,
                            connection_from_gauge_field, connection_from_projection, connection_space,
                            extract_cocycle_data, find_trivialisation, global_gauge_from_local,
                            projection_from_connection, random_gauge_field, sections_space, sigma_space,
                            strong_report)
from ncgauge.catalog import crossprod_mu, function_algebra, ground_algebra, load
from ncgauge.comodule import PointedComodule, standard_comodules, trivial_comodule
from ncgauge.field import ONE, Cyc
from ncgauge.hopf import ConvolutionAlgebra
from ncgauge.linalg import LinMap, axpy
from ncgauge.local import (LocalTheory, check_local_theory, random_gauge_field as random_local_field,
                           random_gauge_transform, random_matter_field)
from ncgauge.suites import Options, run_suite

RESULTS: dict[int, str] = {}

# trivial catalog bundles at representative parameters; bosonisations enter through their quantum bundle
TRIVIAL = ["kZ2", "kZn:3", "sweedler", "taft:2", "taft:3", "crossprod-mu:3", "crossprod-swap:3",
           "bosonisation:2", "bosonisation:3"]


def record(n: int, ok: bool, seconds: float, limit: float, detail: str = "") -> bool:
    passed = ok and seconds < limit
    timing = f"{seconds:.2f}s < {limit:g}s" if seconds < limit else f"{seconds:.2f}s exceeds {limit:g}s"
    RESULTS[n] = f"criterion {n}: {'PASS' if passed else 'FAIL'}  ({timing})" + (f"  {detail}" if detail else "")
    print(RESULTS[n])
    return passed


def trivial_bundle(name: str) -> tuple[PrincipalBundle, Trivialisation]:
    ex = load(name)
    if ex.bosonise:
        qb, Phi, Phi_inv = bosonisation_as_quantum_bundle(ex.bosonisation)
        return qb, Trivialisation(qb, Phi, Phi_inv)
    return ex.bundle, ex.trivialisation


def key(m: LinMap) -> tuple:
    return tuple(tuple(sorted(c.items(), key=lambda t: t[0])) for c in m.cols)


def gauge_fields(b: PrincipalBundle, rng: random.Random, count: int = 2) -> list:
    """A = 0 and up to ``count`` distinct nonzero exact gauge fields (none exist when Ω¹M = 0)."""
    out, seen = [None], set()
    for _ in range(10):
        if len(out) == count + 1:
            break
        A = random_gauge_field(b, rng)
        if any(A.cols) and key(A) not in seen:
            seen.add(key(A))
            out.append(A)
    return out


def random_gamma(b: PrincipalBundle, rng: random.Random) -> LinMap:
    """γ: H -> M with γ(1) = 1, convolution invertible."""
    H, M = b.H, b.M.algebra
    conv = ConvolutionAlgebra(H.coalgebra, M)
    p = min(H.unit)
    while True:
        cols = [{m: Cyc(s) for m in range(M.dim) if (s := rng.randint(-3, 3))} for _ in range(H.dim)]
        rest = dict(M.unit)
        for h, c in H.unit.items():
            if h != p:
                axpy(rest, -c, cols[h])
        cols[p] = {m: a / H.unit[p] for m, a in rest.items()}
        g = LinMap(H.space, M.space, cols)
        if conv.inverse(g) is not None:
            return g


def roundtrips(b: PrincipalBundle, omega: LinMap) -> bool:
    w = ConnectionForm(b, omega)
    Pi = projection_from_connection(w)
    w2 = connection_from_projection(Pi)
    return w2.omega == omega and projection_from_connection(w2).equal_on_forms(Pi)


# --- criteria ---------------------------------------------------------------------------------------

def criterion_1() -> bool:
    t = time.perf_counter()
    bundles = []
    for name in ["kZ2", "sweedler", "fnZ4-over-fnZ2", "crossprod-mu:3"]:
        bundles.append((name, load(name).bundle))
    for n in (2, 3):
        bos = load(f"bosonisation:{n}").bosonisation
        bundles.append((f"bosonisation:{n} over H", bosonisation_as_braided_bundle(bos)[0].bundle))
        bundles.append((f"bosonisation:{n} over B", bosonisation_as_quantum_bundle(bos)[0]))
    bad = []
    for name, b in bundles:
        rep = check_galois(b)
        needed = {"χ∘χ⁻¹ = id", "χ⁻¹∘χ = id", "ker χ̃ = P(Ω¹M)P"}
        if not rep.ok or not needed <= {c.name for c in rep.checks}:
            bad.append(name)
    return record(1, not bad, time.perf_counter() - t, 10,
                  f"{len(bundles)} bundles" + (f"; failed: {bad}" if bad else ""))


def criterion_2() -> bool:
    t = time.perf_counter()
    rng = random.Random(2)
    bad, few = [], []
    for name in TRIVIAL:
        b, triv = trivial_bundle(name)
        omegas = {}
        for A in gauge_fields(b, rng):
            w = connection_from_gauge_field(b, A, triv.Phi, triv.Phi_inv, check_strong=False)
            omegas[key(w.omega)] = w.omega
        if not all(roundtrips(b, om) for om in omegas.values()):
            bad.append(name)
        if len(omegas) < 3:
            few.append(f"{name}={len(omegas)}")
    detail = f"roundtrips exact on {len(TRIVIAL) - len(bad)}/{len(TRIVIAL)} bundles"
    if few:
        detail += f"; fewer than 3 distinct connections (Ω¹M = 0 forces A = 0): {', '.join(few)}"
    return record(2, not bad and not few, time.perf_counter() - t, 10, detail)


def criterion_3() -> bool:
    t = time.perf_counter()
    rng = random.Random(3)
    bad, count = [], 0
    for name in TRIVIAL:
        b, triv = trivial_bundle(name)
        fields = gauge_fields(b, rng, 1)
        for _ in range(2):
            G = global_gauge_from_local(b, random_gamma(b, rng), triv)
            GB = bundle_gauge_transform(b, G)
            for A in fields:
                w = connection_from_gauge_field(b, A, triv.Phi, triv.Phi_inv, check_strong=False)
                if not (GB.check_projection_law(w).ok and GB.check_gauge_field_law(A, triv).ok):
                    bad.append(name)
            count += 1
    return record(3, not bad, time.perf_counter() - t, 10,
                  f"{count} gauge transforms on {len(TRIVIAL)} bundles" + (f"; failed: {sorted(set(bad))}" if bad else ""))


def criterion_4() -> bool:
    t = time.perf_counter()
    mu = Cyc(3)
    data = crossprod_mu(3)
    b, triv = cocycle_cross_product(data)
    k = ground_algebra()
    bad = []
    lams = [Cyc(2), Cyc(-1), Cyc(Fraction(1, 3)), Cyc(5)]
    for lam in lams:
        gamma = LinMap(b.H.space, k.space, [{0: ONE}, {0: lam}])
        GB = bundle_gauge_transform(b, global_gauge_from_local(b, gamma, triv))
        got = extract_cocycle_data(GB.bundle, k)
        rebuilt, _ = cocycle_cross_product(got)
        if rebuilt.P.algebra.mult != GB.bundle.P.algebra.mult or got.c.cols[3].get(0) != mu / (lam * lam):
            bad.append(str(lam))
    return record(4, not bad, time.perf_counter() - t, 5,
                  f"λ ∈ {{{', '.join(map(str, lams))}}}, c^γ(g⊗g) = μ/λ²" + (f"; failed: {bad}" if bad else ""))


def criterion_5() -> bool:
    t = time.perf_counter()
    rng = random.Random(5)
    disagree, not_strong, tested = [], [], 0
    for name in TRIVIAL:
        b, triv = trivial_bundle(name)
        for A in gauge_fields(b, rng):
            w = connection_from_gauge_field(b, A, triv.Phi, triv.Phi_inv, check_strong=False)
            a, c = (chk.passed for chk in strong_report(w).checks)
            tested += 1
            if a != c:
                disagree.append(name)
            if not (a and c):
                not_strong.append(name)
    for name in ["fnZ4-over-fnZ2", "matrix3-z2", "crossprod-swap:3", "bosonisation:2"]:
        b = trivial_bundle(name)[0] if name.startswith("bosonisation") else load(name).bundle
        for strong in (False, True):
            base, dirs = connection_space(b, strong=strong)
            for _ in range(2):
                cols = [dict(col) for col in base.cols]
                for d in dirs:
                    axpy_all(cols, Cyc(rng.randint(-2, 2)), d)
                w = ConnectionForm(b, LinMap(base.source, base.target, cols))
                a, c = (chk.passed for chk in strong_report(w).checks)
                tested += 1
                if a != c or (strong and not a):
                    disagree.append(name)
    fn = find_trivialisation(load("fnZ4-over-fnZ2").bundle)
    mx = find_trivialisation(load("matrix3-z2").bundle)
    ok = not disagree and not not_strong and fn.status == "fail"
    detail = (f"verdicts agree on {tested - len(disagree)}/{tested} connections; "
              f"fnZ4-over-fnZ2 trivialisation search: {'none exists' if fn.status == 'fail' else 'FOUND one'}; "
              f"matrix3-z2: {'none exists (certified)' if mx.status == 'fail' else mx.status}")
    return record(5, ok, time.perf_counter() - t, 10, detail)


def axpy_all(cols: list, s: Cyc, d: LinMap) -> None:
    if s:
        for i, c in enumerate(d.cols):
            axpy(cols[i], s, c)


def criterion_6() -> bool:
    t = time.perf_counter()
    rng = random.Random(6)
    bad, pairs = [], 0
    coalgebras = {"kZ2": load("kZ2").hopf, "braided-line:2": load("braided-line:2").braided,
                  "braided-line:3": load("braided-line:3").braided}
    bases = {"k": ground_algebra(), "k(Z2)": function_algebra(2).algebra}
    for cname, B in coalgebras.items():
        for mname, M in bases.items():
            T = LocalTheory(M, B.coalgebra, B.unit)
            for i in range(5):
                A = random_local_field(T, rng)
                sigma = random_matter_field(T, B.space, i % 3, rng)
                gammas = [random_gauge_transform(T, rng) for _ in range(2)]
                rep = check_local_theory(T, A, sigma, B.coalgebra.comult, gammas)
                names = {c.name.split(" [")[0] for c in rep.checks}
                if not rep.ok or not {"dF + A*F − F*A = 0", "∇²σ = −σ*F", "F^γ = γ⁻¹*F*γ"} <= names:
                    bad.append(f"{cname}/{mname}")
                pairs += 1
    return record(6, not bad, time.perf_counter() - t, 10, f"{pairs} (A, σ) pairs" + (f"; failed: {bad}" if bad else ""))


def criterion_7() -> bool:
    t = time.perf_counter()
    bad, iso = [], ""
    for n in (2, 3, 4):
        rep = run_suite(load(f"taft:{n}"), "bosonisation", Options(seed=7))
        for c in rep.cases:
            if c.name == "bosonisation/entwining":
                continue
            if c.status != "pass":
                bad.append(f"taft:{n} {c.name}")
            if n == 2 and c.name == "bosonisation/isomorphism":
                iso = next((chk["witness"]["map"] for chk in c.checks if chk["name"].startswith("sweedler")), "")
        if n == 2:
            taft2 = run_suite(load("taft:2"), "hopf", Options(seed=7))
            if not taft2.ok:
                bad.append("taft:2 hopf axioms")
    detail = f"sweedler -> taft:2 bosonisation: {iso}" if iso else "no sweedler isomorphism emitted"
    return record(7, not bad and bool(iso), time.perf_counter() - t, 60,
                  detail + (f"; failed: {bad}" if bad else ""))


def criterion_8() -> bool:
    t = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        _, rep = entwining_from_bosonisation(load(f"bosonisation:{n}").bosonisation)
        needed = {"explicit ψ = homogeneous-space ψ", "explicit ψ = braided-bundle ψ", "Δ̲∘π = (π⊗π)∘Δ",
                  "ε∘π = ε", "ker π is a right ideal"}
        if not rep.ok or not needed <= {c.name for c in rep.checks}:
            bad.append(n)
    return record(8, not bad, time.perf_counter() - t, 30, "n = 2, 3, 4" + (f"; failed: {bad}" if bad else ""))


def criterion_9() -> bool:
    t = time.perf_counter()
    rng = random.Random(9)
    bad, count = [], 0
    for name in ["sweedler", "crossprod-swap:3", "taft:2"]:
        b, triv = trivial_bundle(name)
        H = b.H
        comods = dict(standard_comodules(H))
        comods["k"] = trivial_comodule(H)
        for vname, V in comods.items():
            one = {0: ONE} if vname == "k" else H.unit
            A = associated_bundle(b, PointedComodule(V, one))
            s0, sd = sections_space(A)
            S0, Sd = sigma_space(A)
            s, Sigma = combo(s0, sd, rng), combo(S0, Sd, rng)
            rep = check_section_correspondence(A, s, Sigma, triv)
            if not rep.ok or "M⊗V -> E bijective" not in {c.name for c in rep.checks}:
                bad.append(f"{name}/{vname}")
            count += 1
    return record(9, not bad, time.perf_counter() - t, 10,
                  f"{count} associated bundles incl. V = H_Ad" + (f"; failed: {bad}" if bad else ""))


def combo(base: LinMap, dirs: list, rng: random.Random) -> LinMap:
    cols = [dict(c) for c in base.cols]
    for d in dirs:
        axpy_all(cols, Cyc(rng.randint(-2, 2)), d)
    return LinMap(base.source, base.target, cols)


# --- pytest -----------------------------------------------------------------------------------------

UNATTAINABLE = {
    2: "bundles over M = k have Ω¹M = 0, so A = 0 is the only gauge field and the connection is unique",
    5: "fnZ4-over-fnZ2 is trivializable (k(Z4) ≅ k(Z2)⊗k(Z2) as comodule algebras); "
       "matrix3-z2 is the certified non-trivializable bundle",
}

CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}


@pytest.mark.parametrize("n", [pytest.param(n, marks=pytest.mark.xfail(strict=True, reason=UNATTAINABLE[n]))
                               if n in UNATTAINABLE else n for n in CRITERIA])
def test_criterion(n):
    assert CRITERIA[n]()


if __name__ == "__main__":
    for n, fn in CRITERIA.items():
        fn()
