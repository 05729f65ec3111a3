import json

import pytest
from hypothesis import given, settings, strategies as st

from ncgauge.catalog import cyclic_dqt, fn_z4_over_fn_z2, group_algebra, load, matrix3_z2, sweedler, taft
from ncgauge.errors import ParseError
from ncgauge.field import Cyc
from ncgauge.serialize import (bundle_from_json, bundle_to_json, hopf_from_json, hopf_to_json, load_json,
                               scalar_from_json, scalar_to_json)


def same_hopf(H, K):
    return (H.algebra.mult == K.algebra.mult and H.unit == K.unit and H.coalgebra.comult == K.coalgebra.comult
            and H.coalgebra.counit == K.coalgebra.counit and H.antipode == K.antipode)


@pytest.mark.parametrize("make", [sweedler, lambda: taft(3), lambda: taft(4), lambda: group_algebra(3)])
def test_hopf_roundtrip(make):
    H = make()
    text = json.dumps(hopf_to_json(H))
    K, R = hopf_from_json(json.loads(text))
    assert R is None
    assert same_hopf(H, K)
    assert list(K.space.labels) == list(H.space.labels)


def test_dqt_roundtrip():
    H = group_algebra(4)
    D = cyclic_dqt(H, 4, None)
    K, R = hopf_from_json(json.loads(json.dumps(hopf_to_json(H, D))))
    assert R.R == D.R


@pytest.mark.parametrize("make", [fn_z4_over_fn_z2, matrix3_z2])
def test_bundle_roundtrip(make):
    P = make()
    Q = bundle_from_json(json.loads(json.dumps(bundle_to_json(P, hopf_to_json(P.host)))))
    assert Q.algebra.mult == P.algebra.mult
    assert Q.comodule.coaction == P.comodule.coaction


def test_bundle_with_catalog_host(tmp_path):
    P = load("crossprod-swap:3").bundle.P
    obj = bundle_to_json(P, hopf_to_json(P.host))
    obj["comodule"]["host"] = "kZ2"
    path = tmp_path / "b.json"
    path.write_text(json.dumps(obj))
    kind, Q = load_json(path)
    assert kind == "bundle"
    assert Q.algebra.mult == P.algebra.mult


scalars = st.one_of(st.integers(-50, 50).map(Cyc),
                    st.tuples(st.sampled_from([3, 4, 5, 8]),
                              st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=8))
                    .map(lambda t: Cyc.from_coeffs(*t)))


@given(scalars)
@settings(max_examples=100, deadline=None)
def test_scalar_roundtrip(c):
    n = 120
    assert scalar_from_json(json.loads(json.dumps(scalar_to_json(c, n))), n, "$") == c


def test_scalar_forms():
    assert scalar_from_json("3/4", 1, "$") == Cyc(3) / Cyc(4)
    assert scalar_from_json([0, 1], 3, "$") ** 3 == Cyc(1)
    with pytest.raises(ParseError):
        scalar_from_json("a", 1, "$.x")
    with pytest.raises(ParseError):
        scalar_from_json(True, 1, "$.x")


def write(tmp_path, obj):
    p = tmp_path / "h.json"
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_invalid_json_location(tmp_path):
    text = json.dumps(hopf_to_json(sweedler()), indent=1)
    broken = text[:40] + "}" + text[40:]
    with pytest.raises(ParseError) as e:
        load_json(write(tmp_path, broken))
    assert e.value.witness["location"].startswith("line ")


def test_bad_entry_location(tmp_path):
    obj = hopf_to_json(sweedler())
    obj["mult"][1][2][3] = "x/y"
    with pytest.raises(ParseError) as e:
        load_json(write(tmp_path, obj))
    assert e.value.witness["location"] == "$.mult[1][2][3]"


def test_bad_shape_location(tmp_path):
    obj = hopf_to_json(sweedler())
    obj["antipode"] = obj["antipode"][:3]
    with pytest.raises(ParseError) as e:
        load_json(write(tmp_path, obj))
    assert e.value.witness["location"].startswith("$.antipode")


def test_missing_field_and_unknown_kind(tmp_path):
    obj = hopf_to_json(sweedler())
    del obj["comult"]
    with pytest.raises(ParseError):
        load_json(write(tmp_path, obj))
    with pytest.raises(ParseError):
        load_json(write(tmp_path, {"kind": "sheaf"}))
    with pytest.raises(ParseError):
        load_json(tmp_path / "missing.json")
