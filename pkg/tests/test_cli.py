import io
import json
import math
import sys

import pytest

from qbell.cli import run
from qbell.states import basis_state, dumps_state, loads_state


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old, sys.stdin = sys.stdin, io.StringIO(stdin)
    try:
        code = run(argv, stdout=out, stderr=err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


def pipe(first, second):
    code, out, _ = call(first)
    assert code == 0
    return call(second, stdin=out)


def test_wen_bound_pipeline():
    code, out, _ = pipe(["model", "wen", "--sites", "4", "--index", "0"], ["bound", "--pivot", "4"])
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "bound"
    assert report["results"]["gamma_bound"] == pytest.approx(5.656854249492, abs=1e-11)
    assert set(report) == {"command", "inputs", "results", "provenance"}


def test_tee_fit_example():
    code, out, _ = call(["tee", "fit", "--points", "4:0.693147180560,6:1.386294361120"])
    res = json.loads(out)["results"]
    assert code == 0
    assert res["s_tee"] == pytest.approx(0.69314718056, abs=1e-11)
    assert res["d"] == pytest.approx(4, abs=1e-10)


def test_zero_state_is_validation_error(tmp_path):
    f = tmp_path / "zero.json"
    f.write_text('{"n": 1, "kind": "pure", "amplitudes": [[0, 0], [0, 0]]}')
    code, out, err = call(["state", "info", str(f)])
    assert code == 3
    assert out == ""
    assert "normalized" in err


def test_usage_errors():
    assert call([])[0] == 2
    assert call(["frobnicate"])[0] == 2
    assert call(["bound", "/nonexistent/state.json"])[0] == 2
    assert call(["tee", "fit", "--points", "4-1"])[0] == 2
    assert call(["concurrence", "--cut", "a,b"], stdin=dumps_state(basis_state("00")))[0] == 2


def test_domain_errors_exit_3():
    assert call(["tee", "from-gamma", "--gamma", "7"])[0] == 3
    assert call(["bound", "--pivot", "9"], stdin=dumps_state(basis_state("00")))[0] == 3
    assert call(["state", "info"], stdin="not json")[0] == 3


def test_reports_round_to_12_digits():
    code, out, _ = call(["tee", "from-gamma", "--gamma", "5", "--delta", "2"])
    res = json.loads(out)["results"]
    for v in res.values():
        assert len(repr(v).replace("-", "").replace(".", "").lstrip("0")) <= 12


def test_state_info():
    code, out, _ = pipe(["model", "ghz2n", "--n", "2", "--lp", "0.6", "--lm", "0.8"], ["state", "info"])
    res = json.loads(out)["results"]
    assert res["n"] == 4 and res["kind"] == "pure"
    assert res["purity"] == pytest.approx(1)


def test_rmatrix_csv():
    code, out, _ = pipe(["model", "wen", "--sites", "4", "--index", "1"], ["rmatrix", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == "index,i1,i2,i3,col_x,col_y,col_z"
    assert len(lines) == 28


def test_concurrence_and_entropy():
    state = dumps_state(loads_state(call(["model", "ghz2n", "--n", "2", "--lp", "0.6", "--lm", "0.8"])[1]))
    code, out, _ = call(["concurrence", "--cut", "1,2", "--delta", "2"], stdin=state)
    assert json.loads(out)["results"]["concurrence"] == pytest.approx(0.96, abs=1e-11)
    code, out, _ = call(["entropy", "--cut", "1,2", "--bits"], stdin=state)
    h = -(0.36 * math.log2(0.36) + 0.64 * math.log2(0.64))
    assert json.loads(out)["results"]["entropy"] == pytest.approx(1 + h, abs=1e-11)


def test_xy_modes():
    base = ["model", "xy", "--J", "1", "--gamma", "0", "--B", "0.5", "--delta", "1"]
    code, out, _ = call(base + ["--tc"])
    tc = json.loads(out)["results"]["T_c"]
    assert tc == pytest.approx(math.sqrt(2) / math.asinh(math.sqrt(2)), rel=1e-9)
    code, out, _ = pipe(base + ["--T", str(0.9 * tc)], ["wootters"])
    assert json.loads(out)["results"]["concurrence"] > 0
    code, out, _ = pipe(base + ["--state", "2-"], ["concurrence", "--cut", "1"])
    assert json.loads(out)["results"]["concurrence"] == pytest.approx(1 / math.sqrt(2), abs=1e-11)
    assert call(base + ["--state", "3+"])[0] == 3
    code, out, _ = call(base)
    assert set(json.loads(out)["results"]["energies"]) == {"1+", "1-", "2+", "2-"}


def test_cylinder_and_wen_family():
    code, out, _ = call(["model", "cylinder", "--nl", "3", "--a00", "0.6", "--a01", "0.8j", "--order", "2"])
    res = json.loads(out)["results"]
    assert res["p1"] == pytest.approx(0.5) and res["N_q"] == 4
    assert res["renyi"] == pytest.approx(3 * math.log(2))
    code, out, _ = call(["model", "wen", "--sites", "6", "--lp", "0.6", "--lm", "0.8", "--which", "2"])
    assert loads_state(out).n_sites == 6
    assert call(["model", "wen", "--sites", "4", "--lp", "0.6", "--lm", "0.8"])[0] == 2


def test_optimize_seed_and_determinism(monkeypatch):
    state = dumps_state(loads_state(call(["model", "wen", "--sites", "4", "--index", "0"])[1]))
    argv = ["optimize", "--restarts", "4", "--form", "full"]
    monkeypatch.setenv("QBELL_SEED", "17")
    a = call(argv, stdin=state)
    b = call(argv, stdin=state)
    assert a[0] == 0 and a[1] == b[1]
    report = json.loads(a[1])
    assert report["inputs"]["seed"] == 17
    assert report["results"]["gamma_star"] <= report["results"]["bound"] + 1e-9
    monkeypatch.setenv("QBELL_SEED", "abc")
    assert call(argv, stdin=state)[0] == 2


def test_csv_report():
    code, out, _ = call(["tee", "from-gamma", "--gamma", "6", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert "results.entropy,0.69314718056" in lines
