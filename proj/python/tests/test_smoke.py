from fractions import Fraction

import pytest

import kstab


def test_flagship_report():
    r = kstab.report("pn-blowup:1,1/2")
    assert r["DF"] == r["M"] == Fraction(1, 4)
    assert r["H"] == Fraction(1, 2)
    assert r["J"] == Fraction(1, 8)
    assert r["L1"] == Fraction(9, 64)
    assert r.get("ding_L") is None


def test_one_ps():
    for d in (1, 2, 3):
        r = kstab.report(f"p1-onePS:{d}")
        assert r["DF"] == 0 and r["M"] == 0
        assert kstab.dh(f"p1-onePS:{d}")["pieces"][0]["right"] == d


def test_metric_dict_and_pair():
    metric = {
        "polytope": {"dim": 1, "vertices": [["0"], ["2"]]},
        "pieces": [{"a": ["0"], "c": "0"}, {"a": ["1"], "c": "-1/2"}],
    }
    r = kstab.report(metric)
    assert r["ding_D"] == Fraction(1, 16)
    assert r["E"] == -Fraction(1, 16)


def test_weights_and_components():
    assert kstab.weights("pn-blowup:1,1/2", 2) == [(-1, 1), (0, 2)]
    comps = kstab.components("pn-blowup:1,1/2")
    assert sorted(c["mass"] for c in comps) == [Fraction(1, 2), Fraction(1, 2)]


def test_rees():
    assert kstab.rees("x^2,y") == ["val_(1,2)/2"]
    assert kstab.rees("x") == ["ord_x"]
    assert kstab.in_integral_closure([1, 1], "x^2,y^2")
    assert not kstab.in_integral_closure([1, 0], "x^2,y^2")


def test_classify():
    assert kstab.classify("simplex:2", "line:0")["class"] == "klt"
    bad = kstab.classify("simplex:2", "line:3/2")
    assert bad["class"] == "not-lc"
    assert bad["destabilizer_H"] < 0


def test_errors():
    with pytest.raises(kstab.InputError):
        kstab.report("nope:1")
    with pytest.raises(ValueError):
        kstab.rees("x^")


def test_verify_examples():
    results = kstab.verify("measures", seed=1, cases=5)
    assert results and all(passed for _, passed, _ in results)


def test_dh_csv():
    assert kstab.dh_csv("trivial:0").splitlines()[1] == "atom,0,1"


def test_scan():
    s = kstab.scan("segment:2", samples=20)
    assert s["violations"] == []
    assert s["min_D_over_J"] == 0
