import json
import math
import subprocess
import sys

import pytest

from jwboson.cli import main, read_matrix

HOM_SPEC = {
    "layout": {"modes": 2, "particles": 2, "internal": 1},
    "particles": [{"mode": 0}, {"mode": 1}],
    "hamiltonian": {"phi": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]], "t": math.pi / 4},
}


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_hom_table(capsys):
    assert main(["hom"]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = {tuple(int(x) for x in line.split()[:2]): float(line.split()[2]) for line in out[1:]}
    assert rows == {(2, 0): 0.5, (1, 1): 0.0, (0, 2): 0.5}


class TestDip:
    def test_defaults(self, capsys):
        assert main(["dip"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "theta,coincidence"
        rows = [tuple(float(x) for x in line.split(",")) for line in lines[1:]]
        assert len(rows) == 201
        assert rows[100] == (0.0, 0.0)
        assert lines[101].startswith("0,0.000000000000")
        assert rows[0][1] == pytest.approx(0.5, abs=1e-12)

    def test_out_file_and_flags(self, tmp_path):
        path = tmp_path / "dip.csv"
        args = ["dip", "--theta-min", "0", "--theta-max", "1", "--step", "0.25", "--phi", "0.3", "--gamma", "1"]
        assert main(args + ["--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert len(lines) == 6
        theta, c = map(float, lines[-1].split(","))
        assert theta == 1.0
        assert c == pytest.approx(math.sin(0.5) ** 2 / 2, abs=1e-12)

    def test_bad_step_exit_3(self, capsys):
        assert main(["dip", "--step", "0"]) == 3
        assert "step" in capsys.readouterr().err

    def test_deterministic(self, capsys):
        main(["dip", "--step", "0.5"])
        first = capsys.readouterr().out
        main(["dip", "--step", "0.5"])
        assert capsys.readouterr().out == first


class TestPermanent:
    def test_identity_json(self, tmp_path, capsys):
        path = write_json(tmp_path, "eye.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert main(["permanent", path]) == 0
        assert capsys.readouterr().out.strip() == "1+0i"

    def test_whitespace_text(self, tmp_path, capsys):
        path = tmp_path / "m.txt"
        path.write_text("1 2\n3 4\n")
        assert main(["permanent", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "10+0i"

    def test_complex_entries(self):
        m = read_matrix('[[[0, 1], "2-1j"], [1, 0]]')
        assert m[0, 0] == 1j and m[0, 1] == 2 - 1j

    def test_malformed_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("[[1, 0],\n [0, ]")
        assert main(["permanent", str(path)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_non_square_exit_3(self, tmp_path):
        path = write_json(tmp_path, "r.json", [[1, 2, 3], [4, 5, 6]])
        assert main(["permanent", path]) == 3


class TestScatter:
    def test_hom_deviation(self, tmp_path, capsys):
        assert main(["scatter", write_json(tmp_path, "hom.json", HOM_SPEC)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["max_deviation"] < 1e-9
        table = {tuple(o["occupation"]): o for o in payload["outcomes"]}
        assert table[(2, 0)]["probability"] == pytest.approx(0.5, abs=1e-10)
        assert table[(2, 0)]["oracle"] == pytest.approx(0.5, abs=1e-12)

    def test_partially_distinguishable(self, tmp_path, capsys):
        theta = 1.2
        spec = dict(HOM_SPEC)
        spec["layout"] = {"modes": 2, "particles": 2, "internal": 2}
        spec["particles"] = [
            {"mode": 0, "internal": [[1, 0], [0, 0]]},
            {"mode": 1, "internal": [[math.cos(theta / 2), 0], [-math.sin(theta / 2), 0]]},
        ]
        assert main(["scatter", write_json(tmp_path, "dip.json", spec)]) == 0
        payload = json.loads(capsys.readouterr().out)
        table = {tuple(o["occupation"]): o["probability"] for o in payload["outcomes"]}
        assert table[(1, 1)] == pytest.approx(math.sin(theta / 2) ** 2 / 2, abs=1e-10)
        assert payload["max_deviation"] < 1e-9

    def test_qasm_flag(self, tmp_path, capsys):
        qasm = tmp_path / "hom.qasm"
        assert main(["scatter", write_json(tmp_path, "hom.json", HOM_SPEC), "--qasm", str(qasm)]) == 0
        assert qasm.read_text().startswith("OPENQASM 2.0;")

    def test_malformed_json_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{\n  "layout": {"modes": 2,,}\n}')
        assert main(["scatter", str(path)]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "column" in err

    def test_non_hermitian_exit_3(self, tmp_path, capsys):
        spec = dict(HOM_SPEC)
        spec["hamiltonian"] = {"phi": [[0, 1], [2, 0]], "t": 1.0}
        assert main(["scatter", write_json(tmp_path, "nh.json", spec)]) == 3
        assert "phi[0][1]" in capsys.readouterr().err

    def test_missing_field_exit_3(self, tmp_path):
        assert main(["scatter", write_json(tmp_path, "x.json", {"layout": {"modes": 2}})]) == 3

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["scatter", str(tmp_path / "nope.json")]) == 2

    def test_deterministic(self, tmp_path, capsys):
        path = write_json(tmp_path, "hom.json", HOM_SPEC)
        main(["scatter", path])
        first = capsys.readouterr().out
        main(["scatter", path])
        assert capsys.readouterr().out == first


def test_qasm_subcommand(tmp_path, capsys):
    path = write_json(tmp_path, "hom.json", HOM_SPEC)
    assert main(["qasm", path]) == 0
    text = capsys.readouterr().out
    assert text.startswith("OPENQASM 2.0;") and "rz(" in text


def test_unpreparable_qasm_exit_3(tmp_path):
    spec = {
        "layout": {"modes": 3, "particles": 3},
        "particles": [{"mode": 0}, {"mode": 1}, {"mode": 2}],
        "hamiltonian": {"phi": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    }
    assert main(["qasm", write_json(tmp_path, "n3.json", spec)]) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jwboson", "hom"], capture_output=True, text=True, check=True)
    assert "0.500000000000" in proc.stdout
