from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from kuwatasurf import cli


def call(*argv, tmp_family=None):
    buf = io.StringIO()
    args = list(argv)
    if tmp_family is not None:
        args += ["--family", str(tmp_family)]
    code = cli.run(args, buf)
    return code, buf.getvalue()


@pytest.fixture
def fam_file(tmp_path):
    p = tmp_path / "fam.json"
    p.write_text(json.dumps({"lambda": "16", "mu": "1", "nu": "6", "xi": "1"}))
    return p


@pytest.fixture
def fam5_file(tmp_path):
    # E scaled by 16: Delta(E)/Delta(F) = 64 * 16^6 = 2^30 = 64^5
    p = tmp_path / "fam5.json"
    p.write_text(json.dumps({"lambda": "256", "mu": "16", "nu": "6", "xi": "1"}))
    return p


def test_rank_table_json_and_text():
    code, out = call("rank-table")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[1] == {"i": 2, "rank": 4, "qBound": 5}
    code, out = call("--format", "text", "rank-table", "--h", "1")
    assert code == 0 and out.startswith("h = 1")


def test_output_is_deterministic(fam_file):
    a = call("nine-lines", tmp_family=fam_file)
    b = call("nine-lines", tmp_family=fam_file)
    assert a == b
    assert json.loads(a[1])["gram"]["rank"] == 5


def test_fibers_verb(fam_file):
    code, out = call("fibers", "3", tmp_family=fam_file)
    rep = json.loads(out)
    types = {f["place"]: f["type"] for f in rep["fibers"]}
    assert code == 0 and types["0/1"] == "I0*" and types["inf"] == "I0*"
    code, out = call("fibers", "psi3", tmp_family=fam_file)
    assert json.loads(out)["shiodaTate"]["rank"] == 4


def test_family_info(fam_file):
    code, out = call("family-info", tmp_family=fam_file)
    rep = json.loads(out)
    assert code == 0
    assert rep["deltaRatio"] == "64/1"
    assert rep["deflationAlpha"]["5"] is None


def test_find_sections_budget_exit_code(fam5_file):
    code, out = call("find-sections", "psi5", "--budget", "60", tmp_family=fam5_file)
    rep = json.loads(out)
    assert code == 3
    assert rep["budgetExceeded"] is True
    assert rep["resultantDegree"] == 120


def test_deflate_quintic(fam5_file, fam_file):
    code, out = call("deflate", "5", tmp_family=fam5_file)
    rep = json.loads(out)
    types = {f["place"]: f["type"] for f in rep["fibers"]["fibers"]}
    assert code == 0 and types["inf"] == "II"
    code, out = call("deflate", "5", tmp_family=fam_file)
    assert code == 2 and "needs extension" in json.loads(out)["error"]


def test_corq_exit_codes():
    code, out = call("corq", "2", "5", "1")
    assert code == 0 and json.loads(out)["valid"] is True
    code, out = call("corq", "2", "3", "1")
    assert code == 2 and json.loads(out)["valid"] is False


def test_pi2prime_points():
    code, out = call("pi2prime-points", "--corq", "2", "5", "1")
    rep = json.loads(out)
    assert code == 0 and len(rep["points"]) == 4


def test_lines27(fam_file):
    code, out = call("lines27", tmp_family=fam_file)
    rep = json.loads(out)
    assert code == 0 and rep["allContained"] and len(rep["lines"]) == 27


def test_gram_top():
    code, out = call("gram", "top")
    assert code == 0 and json.loads(out)["rank"] == 2


def test_precondition_errors(tmp_path):
    code, out = call("nine-lines")
    assert code == 2 and "--family" in json.loads(out)["error"]
    code, out = call("fibers", "top", "--D", "4")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = call("family-info", "--family", str(bad))
    assert code == 2


def test_console_entry_point_runs():
    res = subprocess.run([sys.executable, "-m", "kuwatasurf.cli", "rank-table", "--format", "text"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "i  rank  Q-bound" in res.stdout
