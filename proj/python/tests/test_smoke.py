import json

import pytest

import khr


def test_trefoil_homfly():
    r = khr.homfly(2, [1, 1, 1])
    assert r["normalized"] == {"alpha^2": "(v^4 + 1)/(v^2)", "alpha^4": "-1"}
    assert set(r["trace"]) == {"a^0", "a^1", "a^2"}


def test_unknot_diagrams_normalize_to_one():
    assert khr.homfly(1, [])["normalized"] == {"alpha^0": "1"}
    assert khr.homfly(2, [1])["normalized"] == {"alpha^0": "1"}
    assert khr.homfly(2, [-1])["normalized"] == {"alpha^0": "1"}


def test_rouquier_longest_element():
    r = khr.rouquier(3, [1, 2, 1])
    assert [d["degree"] for d in r] == [0, 1, 2, 3]
    assert r[0]["objects"] == [{"label": "B121", "shift": 0, "rank": "v^-3 + 2*v^-1 + 2*v + v^3"}]
    assert khr.rouquier(2, [1, -1]) == [{"degree": 0, "objects": [{"label": "R", "shift": 0, "rank": "1"}]}]


def test_hhh_table_and_euler_check():
    r = khr.hhh(2, [1, 1, 1], max_degree=6)
    assert r["truncation"] == 6
    assert r["euler_check"] == {"match": True, "order": 6}
    assert all(set(e) == {"k", "i", "j", "dim"} for e in r["entries"])
    assert json.loads(json.dumps(r)) == r


def test_max_degree_precedence(monkeypatch):
    monkeypatch.delenv("KHR_MAX_DEGREE", raising=False)
    assert khr.resolve_max_degree() == 12
    monkeypatch.setenv("KHR_MAX_DEGREE", "5")
    assert khr.resolve_max_degree() == 5
    assert khr.resolve_max_degree(3) == 3
    assert khr.hhh(1, [])["truncation"] == 5


def test_verify_subset_and_skip():
    r = khr.verify(["weights", "jm", "a1"], skip=["jm"])
    assert r["ok"] is True
    status = {s["suite"]: s["status"] for s in r["suites"]}
    assert status == {"weights": "passed", "jm": "skipped", "a1": "passed"}


def test_bad_input_raises():
    with pytest.raises(ValueError):
        khr.hhh(2, [3])
    with pytest.raises(ValueError):
        khr.verify(["nope"])
