import pytest

import hmt


def test_corpus_names():
    names = {d["name"] for d in hmt.corpus()}
    assert {"tate", "a1hat", "triangle", "rank2", "orbifold"} <= names


def canonical(v):
    lead = next(x for x in v if x)
    return tuple(x if lead > 0 else -x for x in v)


def test_circuits_of_rank2():
    cs = hmt.circuits(3, [[1, 0, 1], [0, 1, 1]])
    assert {canonical(c["vector"]) for c in cs} == {(1, -1, 0), (1, 0, 1), (0, 1, 1)}
    assert all(len(c["support"]) == 2 for c in cs)


def test_invalid_datum_raises():
    with pytest.raises(hmt.InvalidDatum):
        hmt.circuits(2, [[2, 0]])


def test_genericity():
    assert hmt.is_generic(2, [[1, 1]], ["1/2"])["generic"]
    wall = hmt.is_generic(2, [[1, 1]], ["1"])
    assert not wall["generic"]
    assert "circuit" in wall and "level" in wall


def test_validate_roundtrip():
    doc = next(d for d in hmt.corpus() if d["name"] == "a1hat")
    assert hmt.validate_dataset(doc) == doc
    with pytest.raises(Exception):
        hmt.validate_dataset({"schema": "dataset/0"})


def test_run_quiver_json():
    code, report = hmt.run_json("quiver", "a1hat")
    assert code == 0
    assert report["command"] == "quiver"
    assert report["dataset"] == "a1hat"


def test_run_usage_error():
    code, out, err = hmt.run("nonsense")
    assert code == 2
    assert err
