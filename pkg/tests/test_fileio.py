import json

import pytest

from thetakit import simplicial as ss
from thetakit.corpus import standard_corpus, walking_iso_nerve
from thetakit.fileio import (MAP_FORMAT, PresheafFileError, dumps, load_map, load_presheaf,
                             loads_map, loads_presheaf, map_to_dict, presheaf_to_dict,
                             save_map, save_presheaf)
from thetakit.presheaf import (boundary, constant, identity_map, is_isomorphic, product,
                               representable)
from thetakit.theta import bounded, category, cell, tau_theta


@pytest.mark.parametrize("name,X", standard_corpus(2, 2, 0, seed=2, random_count=2))
def test_corpus_round_trip(name, X):
    text = dumps(presheaf_to_dict(X))
    Y = loads_presheaf(text)
    assert dumps(presheaf_to_dict(Y)) == text
    assert is_isomorphic(X, Y)


def test_simplicial_round_trip(tmp_path):
    cat = bounded(2, 2)
    X = product(representable(cell(1, 2), cat, 1), constant(ss.simplex(1, 1), cat))[0]
    path = tmp_path / "x.json"
    save_presheaf(X, path, provenance="test")
    Y = load_presheaf(path)
    assert Y.sizes() == X.sizes()
    assert json.loads(path.read_text())["metadata"]["provenance"] == "test"


def test_custom_object_list():
    cat = category([cell(0, 2), tau_theta(2, 2)])
    d = presheaf_to_dict(representable(tau_theta(2, 2), cat))
    assert d["objects"] == ["[0]", "[2]([0],[0])"]
    assert loads_presheaf(dumps(d)).cat is cat


def test_map_round_trip(tmp_path):
    cat = bounded(2, 2)
    _, inc = boundary(tau_theta(2, 2), cat)
    path = tmp_path / "m.json"
    save_map(inc, path)
    g = load_map(path)
    assert g.is_mono() and g.comps == inc.comps
    assert map_to_dict(inc)["format"] == MAP_FORMAT


def test_keys_are_normalized():
    X = walking_iso_nerve(bounded(2, 1))
    d = presheaf_to_dict(X)
    d["cells"]["[1] ( [0] )"] = d["cells"].pop("[1]([0])")
    assert loads_presheaf(dumps(d)).sizes() == X.sizes()


def _base():
    return presheaf_to_dict(representable(cell(1, 2), category([cell(0, 2), cell(1, 2)]), 1))


@pytest.mark.parametrize("change,path", [
    (lambda d: d.pop("cells"), "$"),
    (lambda d: d.update(simplicial_bound="1"), '$["simplicial_bound"]'),
    (lambda d: d.update(objects=["[0]", "[0]"]), '$["objects"][1]'),
    (lambda d: d.update(objects=["[0]", "[1]([0]"]), '$["objects"][1]'),
    (lambda d: d["cells"]["[0]"][0].append("(d=[0])"), '$["cells"]["[0]"][0]'),
    (lambda d: d["simplicial_actions"]["[0]"]["faces"].append([]),
     '$["simplicial_actions"]["[0]"]["faces"]'),
    (lambda d: d["theta_actions"]["(d=[0]):[0]->[1]([0])"][0].update({"(d=[0,1];f1,1=(d=[0]))": "x"}),
     '$["theta_actions"]["(d=[0]):[0]->[1]([0])"][0]["(d=[0,1];f1,1=(d=[0]))"]'),
])
def test_rejections_carry_paths(change, path):
    d = _base()
    change(d)
    with pytest.raises(PresheafFileError) as exc:
        loads_presheaf(dumps(d))
    assert exc.value.path == path


def test_map_between_mismatched_presheaves_rejected():
    cat = bounded(2, 1)
    X = walking_iso_nerve(cat)
    d = map_to_dict(identity_map(X))
    d["target"]["n"] = 3
    with pytest.raises(PresheafFileError):
        loads_map(dumps(d))
