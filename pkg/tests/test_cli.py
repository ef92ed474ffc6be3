import io
import json
import subprocess
import sys

import pytest

from cabletorus.cli import run
from cabletorus.paths import DecoratedPath
from cabletorus.cables import KnotProfile
from cabletorus.ribbon import SimplificationTrace


def cli(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def test_count_torus_json():
    code, out, _ = cli("count-torus", "--meridian", "inf", "--slope", "-2/5", "--json")
    assert code == 0
    assert json.loads(out) == {"count": 4, "universally_tight": 2}


def test_yasui_text():
    code, out, _ = cli("yasui", "-m", "-5")
    assert code == 0
    assert "(2,-1)" in out and "width >= -1/2" in out and "not uniformly thick" in out


def test_yasui_json():
    code, out, _ = cli("yasui", "-m", "-9", "--json")
    obj = json.loads(out)
    assert KnotProfile.from_json(obj["profile"]).tb_max == -1
    rep = obj["llc_report"]
    assert rep["llc"] and rep["virtually_overtwisted_torus"] and rep["width_lower_bound"] == "-1/3"


def test_farey_path_dot():
    code, out, _ = cli("farey-path", "inf", "-2/5", "--dot")
    assert code == 0 and out.startswith("digraph")
    for a, b in [("v0", "v1"), ("v1", "v2"), ("v2", "v3")]:
        assert f"{a} -> {b}" in out
    for label in ("inf", "-1", "-1/2", "-2/5"):
        assert f'label="{label}"' in out
    assert "cluster_block0" in out and "cluster_block1" in out


def test_farey_path_json_round_trip():
    _, out, _ = cli("farey-path", "-8/3", "-2", "--json")
    obj = json.loads(out)
    assert obj["vertices"] == ["-8/3", "-5/2", "-2"]
    DecoratedPath.from_json(obj)


def test_classify_inputs_agree():
    path = {"vertices": ["inf", "-3", "-2"], "signs": ["+", "-"], "truncated": False}
    a = cli("classify", "--json", stdin=json.dumps(path))
    b = cli("classify", "--vertices", "inf,-3,-2", "--signs", "+,-", "--json")
    assert a == b
    obj = json.loads(a[1])
    assert obj["verdict"] == "Overtwisted" and obj["witness"] is None
    assert DecoratedPath.from_json(obj["input"]) == DecoratedPath.from_json(path)


def test_classify_text(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"vertices": ["-3", "-2", "-1"], "signs": ["-", "+"]}), encoding="utf-8")
    code, out, _ = cli("classify", str(f))
    assert code == 0 and "VirtuallyOvertwisted" in out and "\x1b[" not in out


def test_color(monkeypatch):
    monkeypatch.setenv("CABLETORUS_COLOR", "always")
    _, out, _ = cli("classify", "--vertices", "-2,-1", "--signs", "+")
    assert "\x1b[32mUniversallyTight" in out
    monkeypatch.setenv("CABLETORUS_COLOR", "never")
    _, out, _ = cli("classify", "--vertices", "-2,-1", "--signs", "+")
    assert "\x1b[" not in out


def test_count_t2xi_and_thicken():
    _, out, _ = cli("count-t2xi", "--s1", "-3", "--s2", "-1", "--json")
    assert json.loads(out) == {"count": 3, "universally_tight": 2}
    _, out, _ = cli("thicken", "-8/3", "--json")
    assert json.loads(out)["target"] == "-2"


def test_cable():
    _, out, _ = cli("cable", "--p", "2", "--q", "-1", "--tb", "-1", "--tb-max", "-1", "--json")
    obj = json.loads(out)
    assert obj["tw"] == 1 and obj["large"] is True and obj["llc_report"]["width_lower_bound"] == "-1/2"


def test_ut_test_stdin():
    prof = {"tb_max": -1, "cables": [{"p": 2, "q": -1, "tb": -1}]}
    code, out, _ = cli("ut-test", "--json", stdin=json.dumps(prof))
    assert code == 0 and json.loads(out)["uniform_thickness"]["verdict"] == "REFUTED"


PRES = {"n": 2, "chords": [[0, 1], [2, 3]], "alpha": {"1": "f2", "2": "f1"}, "framings": {"1": 0, "2": 3}}


def test_ribbon_json_round_trip():
    code, out, _ = cli("ribbon-simplify", "--json", stdin=json.dumps(PRES))
    assert code == 0
    obj = json.loads(out)
    t = SimplificationTrace.from_json(obj)
    assert t.cuts == 1 and obj["dual_graph"]["edges"] == [[0, 1]]


def test_render_kinds():
    _, trace, _ = cli("ribbon-simplify", "--json", stdin=json.dumps(PRES))
    _, dot1, _ = cli("render", stdin=trace)
    _, dot2, _ = cli("render", stdin=json.dumps(PRES))
    assert dot1 == dot2 and dot1.startswith("graph dual_graph")
    _, dot3, _ = cli("render", stdin=json.dumps({"vertices": ["-3", "-2", "-1"], "signs": ["+", "-"]}))
    assert 'label="+"' in dot3 and 'label="-"' in dot3


def test_render_svg_fallback(monkeypatch):
    monkeypatch.setattr("cabletorus.cli.to_svg", lambda dot: None)
    code, out, err = cli("render", "--svg", stdin=json.dumps({"vertices": ["-2", "-1"]}))
    assert code == 0 and out.startswith("digraph") and "not found" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("farey-path", "inf", "-2/5"),
        ("farey-path", "inf", "-2/5", "--dot"),
        ("count-torus", "--slope", "-7/3", "--list", "--json"),
        ("yasui", "-m", "-13"),
        ("yasui", "-m", "-13", "--json"),
    ],
)
def test_determinism(argv):
    assert cli(*argv) == cli(*argv)


@pytest.mark.parametrize(
    "argv,stdin",
    [
        (("farey-path", "1/x", "-2"), ""),
        (("thicken", "inf"), ""),
        (("thicken", "-1/3"), ""),
        (("count-t2xi", "--s1", "-2", "--s2", "-2"), ""),
        (("count-torus", "--slope", "-2", "--curves", "4"), ""),
        (("classify", "--vertices", "inf,-2/5", "--signs", "+"), ""),
        (("classify",), "{not json"),
        (("classify",), '{"vertices": ["-2", "-1"]}'),
        (("classify", "/nonexistent/path.json"), ""),
        (("yasui", "-m", "-3"), ""),
        (("cable", "--p", "2", "--q", "4", "--tb", "0"), ""),
        (("ribbon-simplify",), '{"n": 2, "chords": [[0, 2], [1, 3]], "alpha": {"1": "f0", "2": "f0"}}'),
        (("render",), "[1, 2]"),
    ],
)
def test_domain_errors(argv, stdin):
    code, out, err = cli(*argv, stdin=stdin)
    assert code == 1 and out == ""
    assert err.startswith("error: ") and "Traceback" not in err


@pytest.mark.parametrize(
    "argv",
    [(), ("nope",), ("farey-path", "inf"), ("farey-path", "inf", "-2", "--json", "--dot"), ("yasui",)],
)
def test_usage_errors(argv, capsys):
    code, _, _ = cli(*argv)
    assert code == 2


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "cabletorus", "count-torus", "--slope", "-2/5", "--json"],
        capture_output=True,
        text=True,
    )
    assert done.returncode == 0
    assert json.loads(done.stdout) == {"count": 4, "universally_tight": 2}
    done = subprocess.run([sys.executable, "-m", "cabletorus", "thicken", "inf"], capture_output=True, text=True)
    assert done.returncode == 1 and "Traceback" not in done.stderr
