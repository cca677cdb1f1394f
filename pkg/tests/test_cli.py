import io
import json
import shutil
import subprocess
from pathlib import Path

import pytest

from toric_dual import cli
from toric_dual.errors import OracleMismatch

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0
    return json.loads(text)


def vertex_eus(d):
    return [f["eu"] for f in d["faces"] if f["dim"] == 0]


def test_surface_wps():
    assert run_json("surface", "--wps", "1", "2", "3")["degree"] == 7
    d = run_json("surface", "--wps", "1", "1", "4")
    assert (d["degree"], d["defective"]) == (0, True)


def test_surface_file():
    d = run_json("surface", str(GOLDEN / "cli" / "quad.txt"))
    assert -1 in vertex_eus(d)
    assert list(d) == ["input", "faces", "terms", "degree", "defective"]
    assert list(d["faces"][0])[:5] == ["dim", "vertices", "eu", "cone_type", "hj"]
    assert list(d["terms"]) == ["volume", "area", "edges"]


def test_threefold_wps():
    d = run_json("threefold", "--wps", "1", "6", "10", "15")
    assert d["degree"] == 40
    assert sorted(f["eu"] for f in d["faces"] if f["dim"] == 1) == [-3, -1, 0, 1, 1, 1]
    d = run_json("threefold", "--wps", "1", "2", "3", "5")
    assert d["degree"] == 2688 and set(vertex_eus(d)) == {1}
    assert sorted(f["rsv"] for f in d["faces"] if f["dim"] == 0) == [1, 4, 5, 6]


def test_threefold_unit_simplex():
    d = run_json("threefold", str(GOLDEN / "cli" / "unit_simplex.txt"))
    assert (d["degree"], d["defective"]) == (0, True)
    assert d["terms"] == {"volume": 1, "area": 4, "edges": 6}


@pytest.mark.parametrize("argv, golden", [
    (("surface", str(GOLDEN / "cli" / "quad.txt")), "surface_quad.json"),
    (("threefold", "--wps", "1", "6", "10", "15"), "threefold_1_6_10_15.json"),
    (("table", "--max", "6", "--non-isolated"), "table_non_isolated_6.tsv"),
    (("table", "--max", "10", "--isolated"), "../appendix_isolated.tsv"),
])
def test_golden_outputs(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / "cli" / golden).read_text()


def test_table_single_row():
    code, text = run("table", "--max", "1")
    assert text == "k m n E1 E2 E3 R1 R2 R3\n1 1 1 1 1 1 1 1 1\n"


def test_table_layout():
    _, text = run("table", "--max", "10", "--isolated")
    lines = text.splitlines()
    assert len(lines) == 53
    assert "2 3 5 1 1 1 4 5 6" in lines
    assert all("  " not in ln and "\t" not in ln for ln in lines)
    _, text = run("table", "--max", "6", "--non-isolated")
    assert "1 3 3 1 -1 -1 1 3 3" in text.splitlines() and len(text.splitlines()) == 29


def test_deterministic_across_workers(tmp_path):
    a = run("table", "--max", "7", "--workers", "1")[1]
    b = run("table", "--max", "7", "--workers", "3")[1]
    assert a == b
    path = tmp_path / "t.tsv"
    assert run("table", "--max", "7", "--output", str(path))[0] == 0
    assert path.read_text() == a


def test_scan():
    d = run_json("scan", "--max", "5")
    assert [1, 2, 3, 5] in d["eu_one_singular"] and [1, 3, 4, 5] in d["eu_one_singular"]
    assert all(x["cone"] for x in d["defective"])


def test_sweeps(tmp_path):
    code, text = run("sweep", "--mode", "surface-wps", "--max", "5")
    assert code == 0 and "1,2,3 7 0" in text
    code, text = run("sweep", "--mode", "threefold-wps", "--max", "5", "--isolated", "--format", "json")
    rows = json.loads(text)
    assert {"input": [1, 2, 3, 5], "degree": 2688, "defective": False, "eu": [1, 1, 1, 1], "rsv": [1, 4, 5, 6]} in rows
    code, text = run("sweep", "--mode", "polytope-file", str(GOLDEN / "cli" / "unit_simplex.txt"))
    assert code == 0 and text.splitlines()[1].split()[1:3] == ["0", "1"]
    assert run("sweep", "--mode", "polytope-file")[0] == 2


def write(tmp_path, text):
    p = tmp_path / "poly.txt"
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize("text", ["", "2\n0 0\n", "2 3\n0 0\n1 0\n", "2 3\n0 0\n1 0\n0 1 1\n", "2 3\n0 0\n1 x\n0 1\n",
                                  "2 3\n0 0\n1 1\n2 2\n"])
def test_malformed_files(tmp_path, text, capsys):
    assert run("surface", write(tmp_path, text))[0] == 2
    assert "toric-dual:" in capsys.readouterr().err


def test_input_errors(tmp_path):
    assert run("surface", "--wps", "1", "2", "2")[0] == 2
    assert run("surface")[0] == 2
    assert run("surface", str(tmp_path / "missing.txt"))[0] == 2
    assert run("threefold", str(GOLDEN / "cli" / "quad.txt"))[0] == 2
    assert run("table", "--max", "0")[0] == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["table"])
    assert e.value.code == 2


def test_oracle_exit_code(monkeypatch):
    def boom(*a, **k):
        raise OracleMismatch("forced")
    monkeypatch.setattr(cli, "wps_report", boom)
    assert run("surface", "--wps", "1", "2", "3")[0] == 3


def test_comment_lines(tmp_path):
    d = run_json("surface", write(tmp_path, "# a square\n2 4  # dim and count\n0 0\n1 0\n\n0 1\n1 1\n"))
    assert d["degree"] == 2


@pytest.mark.skipif(shutil.which("toric-dual") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["toric-dual", "surface", "--wps", "1", "2", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["degree"] == 7
