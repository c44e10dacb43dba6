import json
import os
import subprocess

import pytest

import ppcx


def marks(report):
    return {e["rep"]: e["h"] for e in report["entries"] if e["defined"]}


def test_sd16_example_marks():
    c = ppcx.construct("sd16_CE")
    assert ppcx.check(c, mode="weak", V="regular")["verdict"]["holds"]
    m = marks(ppcx.hmarks(c, mode="esplit"))
    assert m["P0[1]"] == 2
    assert sorted(m.values()) == [0] * 8 + [1, 2]


def test_tensor_doubles_marks():
    c = ppcx.construct("sd16_CE")
    one = marks(ppcx.hmarks(c, mode="esplit"))
    two = marks(ppcx.hmarks(ppcx.tensor(c, c), mode="esplit", cross_check=False))
    assert two == {k: 2 * v for k, v in one.items()}


def test_dual_and_shift():
    a = ppcx.construct("augmentation", group="C2xC2")
    assert ppcx.summary(ppcx.shift(a, 2))["dims"] == {str(int(k) + 2): v for k, v in ppcx.summary(a)["dims"].items()}
    d = marks(ppcx.hmarks(ppcx.dual(a), mode="weak"))
    w = marks(ppcx.hmarks(a, mode="weak"))
    assert d == {k: -v for k, v in w.items()}


def test_norm_complex_rejected():
    n = ppcx.construct("norm")
    for mode in ["weak", "strong", "esplit", "endosplit", "plain"]:
        v = ppcx.check(n, mode=mode, V="zero")["verdict"]
        assert not v["holds"]
    assert "both degrees" in ppcx.check(n, mode="weak", V="zero")["verdict"]["reason"]


def test_borel_smith_functions():
    ok = ppcx.borel_smith({"group": "C4", "p": 2, "values": [4, 2, 1]})
    assert ok["report"]["holds"]
    bad = ppcx.borel_smith({"group": "C4", "p": 2, "values": [3, 2, 1]})
    assert not bad["report"]["holds"]
    t = ppcx.construct("periodic_truncation", group="Q8", p=2, length=4)
    assert ppcx.borel_smith_of_complex(t, mode="plain")["report"]["holds"]


def test_mackey():
    r = ppcx.mackey_sweep("S3", 3)
    assert r["iso"] == r["total"] > 0
    v = ppcx.mackey_verify("S3", "c3", M="trivial", p=3)
    assert all(c["iso"] for c in v["cases"])


def test_lifts_and_green():
    k = {"group": "S3", "p": 3, "over": "c3", "terms": {"0": "k"}, "differentials": {}}
    ls = ppcx.lifts(k)
    assert len(ls) == 2
    assert {ppcx.summary(x)["group"] for x in ls} == {"S3"}
    back = ppcx.green(ls[0], "sylow", "down")
    assert ppcx.summary(back)["dims"] == {"0": 1}
    with pytest.raises(ppcx.PpcxError):
        ppcx.green(ls[0], "sylow", "sideways")


def test_psubgroups_and_decompose():
    t = ppcx.psubgroups("D8", 2)
    assert t["classes"][-1]["order"] == 8
    dec = ppcx.decompose("S3", "regular", p=3)
    assert sum(s["dim"] for s in dec["decomposition"]["summands"]) == 6


def test_errors():
    with pytest.raises(ppcx.PpcxError, match="UnknownExample"):
        ppcx.construct("nope")
    with pytest.raises(ppcx.PpcxError):
        ppcx.check(ppcx.construct("augmentation"), mode="sideways")


@pytest.mark.skipif("PPCX_CLI" not in os.environ, reason="command-line tool path not given")
def test_cli_output_reads_back():
    out = subprocess.run([os.environ["PPCX_CLI"], "construct", "--name", "omega_complex", "--group", "C2xC2"],
                         check=True, capture_output=True, text=True).stdout
    env = json.loads(out)
    assert env["schema"] == ppcx.SCHEMA
    assert ppcx.check(env, mode="weak", V="regular")["verdict"]["holds"]
    assert not ppcx.check(env, mode="plain")["verdict"]["holds"]
