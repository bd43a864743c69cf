import json
import subprocess
import sys

import pytest

from fclc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ex1(fixtures):
    return str(fixtures / "projection_q5_t1.json")


class TestScalars:
    def test_weight(self, capsys):
        assert run(capsys, "weight", "--q", "5", "--vector", "2,2,2")[:2] == (0, "6\n")

    def test_dist(self, capsys):
        assert run(capsys, "dist", "--q", "5", "--x", "0,0", "--y", "1,2")[:2] == (0, "3\n")


class TestExitCodes:
    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 64
        with pytest.raises(SystemExit) as exc:
            main(["weight", "--q", "5", "--vector", "1", "--nope"])
        assert exc.value.code == 64

    def test_domain(self, capsys):
        assert run(capsys, "weight", "--q", "5", "--vector", "9")[0] == 1

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "verify", "--codebook", str(tmp_path / "none.json"))[0] == 1

    def test_unsupported(self, capsys):
        assert run(capsys, "encode", "--construction", "lee-weight", "--q", "3", "--k", "2", "--t", "1")[0] == 2

    def test_cap(self, capsys):
        assert run(capsys, "matrix-fdm", "--function", "modsum", "--q", "5", "--k", "9", "--t", "1",
                   "--cap", "100")[0] == 3


class TestMatrices:
    def test_drm(self, capsys):
        code, out, _ = run(capsys, "matrix-drm", "--function", "proj:2", "--q", "5", "--k", "2", "--t", "1",
                           "--vectors", "0,0;0,1;0,2;0,3;0,4")
        assert code == 0 and json.loads(out)["entries"][0] == [0, 2, 1, 1, 2]

    def test_fdm_csv(self, capsys):
        code, out, _ = run(capsys, "matrix-fdm", "--function", "modsum", "--q", "6", "--k", "3", "--t", "1",
                           "--format", "csv")
        assert code == 0 and out.splitlines()[0] == "0,2,1,0,1,2"

    def test_nl_search(self, capsys, ex1):
        code, out, _ = run(capsys, "nl-search", "--matrix", ex1)
        data = json.loads(out)
        assert code == 0 and data["N_L"] == 1 and data["plotkin"] == "1" and data["gv"] >= 1
        assert sorted(w[0] for w in data["witness"]) == [0, 1, 2, 3, 4]

    def test_nl_bounds(self, capsys, ex1):
        data = json.loads(run(capsys, "nl-bounds", "--matrix", ex1, "--gv-policy", "all")[1])
        assert data["plotkin_ceiling"] == 1

    def test_fdm_feeds_search(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        run(capsys, "matrix-fdm", "--function", "lee-weight", "--q", "5", "--k", "2", "--t", "1", "--out", str(path))
        data = json.loads(run(capsys, "nl-search", "--matrix", str(path))[1])
        assert data["N_L"] == 1


class TestPipeline:
    @pytest.mark.parametrize("flags", [
        ["--construction", "lee-weight", "--q", "5", "--k", "3", "--t", "1"],
        ["--construction", "modsum", "--q", "5", "--k", "2", "--t", "1"],
        ["--construction", "modsum", "--q", "6", "--k", "2", "--t", "2"],
        ["--construction", "wdist", "--q", "6", "--k", "3", "--t", "2", "--T", "2"],
        ["--construction", "local", "--function", "lee-weight", "--q", "12", "--k", "2", "--t", "1", "--lambda", "5"],
    ])
    def test_roundtrip(self, capsys, tmp_path, flags):
        path = str(tmp_path / "cb.json")
        assert run(capsys, "encode", *flags, "--out", path)[0] == 0
        assert json.loads(run(capsys, "verify", "--codebook", path)[1])["ok"]
        assert json.loads(run(capsys, "check-exhaustive", "--codebook", path)[1])["ok"]

    def test_golden_csv(self, capsys, fixtures):
        out = run(capsys, "encode", "--construction", "modsum", "--q", "6", "--k", "2", "--t", "2", "--format", "csv")[1]
        assert out == (fixtures / "modsum_q6_k2_t2.csv").read_text()

    def test_encode_json_schema(self, capsys):
        data = json.loads(run(capsys, "encode", "--construction", "modsum", "--q", "5", "--k", "2", "--t", "1")[1])
        assert list(data) == ["q", "k", "t", "r", "construction", "parity_map", "records"]
        assert {"u": [2, 3], "f": 0, "c": [2, 3, 0]} in data["records"]

    def test_decode_and_failure_witness(self, capsys, tmp_path):
        path = str(tmp_path / "cb.json")
        run(capsys, "encode", "--construction", "lee-weight", "--q", "5", "--k", "3", "--t", "1", "--out", path)
        assert run(capsys, "decode", "--codebook", path, "--y", "0,0,2,2")[1] == "1\n"
        data = json.loads(run(capsys, "check-exhaustive", "--codebook", path, "--t", "2")[1])
        assert not data["ok"] and len(data["witness"]) == 3

    def test_simulate_reproducible(self, capsys, tmp_path, monkeypatch):
        path = str(tmp_path / "cb.json")
        model = tmp_path / "model.json"
        model.write_text(json.dumps({"q": 5, "p": [0.9, 0.05], "seed": 5}))
        run(capsys, "encode", "--construction", "modsum", "--q", "5", "--k", "2", "--t", "1", "--out", path)
        a = run(capsys, "simulate", "--codebook", path, "--model", str(model), "--trials", "500")[1]
        monkeypatch.setenv("FCLC_THREADS", "4")
        b = run(capsys, "simulate", "--codebook", path, "--model", str(model), "--trials", "500")[1]
        c = run(capsys, "simulate", "--codebook", path, "--p", "0.9,0.05", "--seed", "5", "--trials", "500")[1]
        assert a == b == c and json.loads(a)["trials"] == 500

    def test_simulate_needs_model(self, capsys, tmp_path):
        path = str(tmp_path / "cb.json")
        run(capsys, "encode", "--construction", "modsum", "--q", "5", "--k", "2", "--t", "1", "--out", path)
        assert run(capsys, "simulate", "--codebook", path)[0] == 2


class TestCompare:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "compare", "--function", "lee-weight", "--q", "5", "--k", "2", "--t", "1", "2",
                           "--format", "csv")
        lines = out.splitlines()
        assert code == 0 and len(lines) == 3 and lines[1].startswith("lee-weight,5,2,1,")

    def test_json_single(self, capsys):
        data = json.loads(run(capsys, "compare", "--function", "modsum", "--q", "6", "--k", "2", "--t", "1")[1])
        assert data["lower"] == "2/3" and data["optimal"] is True

    def test_byte_identical(self, capsys):
        argv = ["compare", "--function", "wdist", "--T", "2", "--q", "6", "--k", "3", "--t", "1", "2", "--verify"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fclc", "weight", "--q", "7", "--vector", "3,4,6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7\n"
