import io
import json
import re
import subprocess
import sys

import pytest

from dilogverify import __version__
from dilogverify.cli import run

RESULT_KEYS = ["id", "paper_ref", "lhs", "rhs", "residual", "status", "correction_residual", "methods", "wall_ms"]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def json_report():
    code, out, err = invoke("verify", "--all", "--format", "json")
    assert code == 0 and err == ""
    return out


EXIT_MATRIX = [
    (("eval", "li2", "0.5", "--tol", "1e-12"), 0),
    (("eval", "chi2", "1"), 0),
    (("eval", "li2-integral", "-3"), 0),
    (("eval", "grothendieck-sum", "--tol", "1e-10"), 0),
    (("eval", "inner-tail", "1"), 0),
    (("verify", "--id", "bailey-pi2", "--tol", "1e-12"), 0),
    (("verify", "--id", "lima-eq"), 0),
    (("verify", "--id", "lima-eq", "--strict"), 1),
    (("verify", "--all", "--strict"), 1),
    (("verify", "--id", "fe-abel", "--method", "series"), 0),
    (("verify", "--id", "brychkov-f2", "--tol", "1e-18"), 1),
    (("list",), 0),
    # usage and input errors
    ((), 2),
    (("frobnicate",), 2),
    (("eval", "li2"), 2),
    (("eval", "li2", "abc"), 2),
    (("eval", "li2", "2"), 2),
    (("eval", "chi2", "-1.5"), 2),
    (("eval", "li2", "nan"), 2),
    (("eval", "zeta", "2"), 2),
    (("eval", "inner-tail", "0"), 2),
    (("eval", "inner-tail", "x"), 2),
    (("eval", "grothendieck-sum", "3"), 2),
    (("eval", "grothendieck-sum", "--tol", "1e-25"), 2),
    (("eval", "li2", "0.5", "--tol", "-1"), 2),
    (("verify",), 2),
    (("verify", "--id", "nope"), 2),
    (("verify", "--id", "kg-def", "--all"), 2),
    (("verify", "--all", "--format", "xml"), 2),
    (("verify", "--all", "--out", "/nonexistent-dir/r.json"), 2),
]


@pytest.mark.parametrize("argv,expected", EXIT_MATRIX)
def test_exit_codes(argv, expected):
    code, out, err = invoke(*argv)
    assert code == expected
    if expected == 2:
        assert out == ""
        assert err.strip()


def test_eval_li2_half():
    code, out, _ = invoke("eval", "li2", "0.5", "--tol", "1e-12")
    assert code == 0
    value = float(re.search(r"= (\S+)", out).group(1))
    assert abs(value - 0.5822405265) <= 1e-10
    assert "err_est=" in out


def test_eval_json():
    code, out, _ = invoke("eval", "chi2", "0.41421356237309503", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["function"] == "chi2"
    assert abs(data["value"] - 0.4226454250941609) <= 1e-15


def test_inner_tail_json():
    data = json.loads(invoke("eval", "inner-tail", "1", "--format", "json")[1])
    assert data["value"] < 0 and data["argument"] == 1


def test_text_and_json_agree(json_report):
    _, text, _ = invoke("verify", "--all")
    lines = {line.split()[1]: line for line in text.splitlines() if not line.startswith("counts:")}
    for item in json.loads(json_report)["results"]:
        line = lines[item["id"]]
        for key in ("lhs", "rhs", "residual", "correction_residual"):
            printed = re.search(rf"\b{key}=(\S+)", line).group(1)
            if item[key] is None:
                assert printed == "null"
            else:
                assert float(printed) == item[key]


def test_schema(json_report):
    data = json.loads(json_report)
    assert list(data) == ["tool_version", "tolerance", "results", "counts"]
    assert data["tool_version"] == __version__
    assert list(data["tolerance"]) == ["abs", "rel"]
    assert list(data["counts"]) == ["pass", "flagged", "error"]
    for item in data["results"]:
        assert list(item) == RESULT_KEYS
        assert item["status"] in ("pass", "flagged", "error")
        assert isinstance(item["wall_ms"], (int, float))
        assert item["correction_residual"] is None or isinstance(item["correction_residual"], float)


def test_byte_stable_modulo_wall_time(json_report):
    _, again, _ = invoke("verify", "--all", "--format", "json")
    pattern = re.compile(r'"wall_ms": [0-9.eE+-]+')
    assert pattern.sub('"wall_ms": 0', json_report) == pattern.sub('"wall_ms": 0', again)


def test_counts_consistent(json_report):
    data = json.loads(json_report)
    tally = {s: sum(r["status"] == s for r in data["results"]) for s in ("pass", "flagged", "error")}
    assert tally == data["counts"]


def test_tolerance_recorded():
    data = json.loads(invoke("verify", "--id", "kg-def", "--tol", "1e-14", "--format", "json")[1])
    assert data["tolerance"] == {"abs": 1e-14, "rel": 1e-14}


def test_out_file(tmp_path, json_report):
    target = tmp_path / "report.json"
    code, out, err = invoke("verify", "--all", "--format", "json", "--out", str(target))
    assert code == 0 and out == "" and err == ""
    assert json.loads(target.read_text())["counts"] == json.loads(json_report)["counts"]


def test_list_shows_catalogue():
    _, out, _ = invoke("list")
    lines = out.splitlines()
    assert len(lines) == 28
    assert lines[0].startswith("fe-duplication")
    assert any("suspected_typo" in line and line.startswith("lima-eq") for line in lines)


def test_bench():
    code, out, _ = invoke("bench")
    assert code == 0
    assert out.splitlines()[0].split() == ["id", "wall_ms", "evals", "status"]
    assert out.splitlines()[-1].startswith("total")


def test_version():
    assert invoke("--version")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dilogverify", "eval", "li2", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == "" and "complex" in proc.stderr
