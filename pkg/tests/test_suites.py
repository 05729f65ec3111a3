import pytest

from ncgauge.catalog import load
from ncgauge.errors import AxiomPrecheckError, InvariantFailure
from ncgauge.suites import Case, Options, _execute, _thread_count, cases_for, run_suite, strip_timings

FAST = ["kZ2", "kZn:3", "sweedler", "taft:2", "crossprod-mu:3", "crossprod-swap:3", "fnZ4-over-fnZ2",
        "braided-line:2", "braided-line:3", "bosonisation:2"]


@pytest.mark.parametrize("name", FAST)
def test_all_suites_pass(name):
    rep = run_suite(load(name), "all")
    bad = [(c.name, c.checks, c.error) for c in rep.cases if c.status != "pass"]
    assert rep.ok, bad


def test_nontrivializable_bundle_suites():
    ex = load("matrix3-z2")
    rep = run_suite(ex, "all")
    assert rep.ok
    # gauge and associated suites need a trivialisation, which this bundle lacks
    assert not any(c.name.startswith(("gauge/", "associated/")) for c in rep.cases)
    triv = next(c for c in rep.cases if c.name == "bundle/trivialisation")
    assert triv.checks[0]["witness"]["outcome"] == "none exists (certified)"


def test_cases_sorted_and_thread_independent():
    ex = load("crossprod-swap:2")
    one = run_suite(ex, "gauge", Options(threads=1)).to_dict()
    many = run_suite(load("crossprod-swap:2"), "gauge", Options(threads=4)).to_dict()
    assert strip_timings(one) == strip_timings(many)
    names = [c["name"] for c in one["cases"]]
    assert names == sorted(names)


def test_seed_changes_random_data():
    a = run_suite(load("crossprod-swap:2"), "cocycle", Options(seed=1)).to_dict()
    b = run_suite(load("crossprod-swap:2"), "cocycle", Options(seed=2)).to_dict()
    assert a["ok"] and b["ok"]
    assert strip_timings(a) != strip_timings(b)


def test_thread_env(monkeypatch):
    monkeypatch.setenv("NCGAUGE_THREADS", "3")
    assert _thread_count(Options()) == 3
    assert _thread_count(Options(threads=2)) == 2


def test_inapplicable_suite():
    with pytest.raises(AxiomPrecheckError):
        cases_for(load("braided-line:2"), "gauge", Options())
    with pytest.raises(AxiomPrecheckError):
        cases_for(load("kZ2"), "nonsense", Options())


def test_errors_become_failures_with_witness():
    def boom(rng):
        raise InvariantFailure("broken", {"basis": "x"})
    res = _execute(Case("x/boom", boom), 0)
    assert res.status == "fail"
    assert res.error == {"type": "InvariantFailure", "message": "broken", "witness": {"basis": "x"}}
