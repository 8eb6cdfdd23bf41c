import json
import subprocess
import sys

import pytest


def run_cli(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "jameslab", *args],
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture
def seq_file(tmp_path):
    def make(entries, name="seq.json"):
        path = tmp_path / name
        path.write_text(json.dumps(entries))
        return str(path)
    return make


@pytest.fixture
def subspace_file(tmp_path):
    def make(n, k, basis_flat, name="sub.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"ambient_dim": n, "dim": k, "basis": basis_flat}))
        return str(path)
    return make


class TestNormCommand:
    def test_single_difference(self, seq_file):
        res = run_cli("norm", "--input", seq_file([1, -1]), "--p", "2")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["james_norm"] == 2.0
        assert payload["sup_norm"] == 1.0

    def test_zigzag_p1(self, seq_file):
        res = run_cli("norm", "--input", seq_file([1, 0, 1, 0]), "--p", "1")
        assert json.loads(res.stdout)["james_norm"] == 3.0

    def test_malformed_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        res = run_cli("norm", "--input", str(bad))
        assert res.returncode == 2
        err = json.loads(res.stderr)
        assert err["error"] == "ParseError"

    def test_missing_file(self):
        res = run_cli("norm", "--input", "/nonexistent/seq.json")
        assert res.returncode == 2

    def test_invalid_exponent(self, seq_file):
        res = run_cli("norm", "--input", seq_file([1, 2]), "--p", "0")
        assert res.returncode == 2
        assert json.loads(res.stderr)["error"] == "InvalidExponent"

    def test_csv_format(self, seq_file):
        res = run_cli("norm", "--input", seq_file([1, -1]), "--p", "1",
                      "--format", "csv")
        lines = res.stdout.strip().split("\n")
        assert lines[0] == "n,p,james_norm,sup_norm,quasi_norm"
        assert lines[1].split(",")[2] == "2"


class TestWitnessCommand:
    def test_identity_basis(self, subspace_file):
        res = run_cli("witness", "--input", subspace_file(2, 2, [1, 0, 0, 1]))
        assert res.returncode == 0
        cert = json.loads(res.stdout)
        assert cert["vector"] == [-1.0, 1.0]
        assert cert["indices"] == [1, 2]

    def test_three_dim_span(self, subspace_file):
        # span{(1,1,0),(0,0,1)} stored row-major as an N x k basis
        res = run_cli("witness", "--input",
                      subspace_file(3, 2, [1, 0, 1, 0, 0, 1]))
        cert = json.loads(res.stdout)
        assert cert["indices"] == [1, 3]
        assert cert["vector"] == pytest.approx([-1.0, -1.0, 1.0], abs=1e-12)

    def test_rank_deficient_basis(self, subspace_file):
        res = run_cli("witness", "--input",
                      subspace_file(2, 2, [1, 1, 1, 1]))
        assert res.returncode == 3
        assert json.loads(res.stderr)["error"] == "RankDeficient"

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "sub.json"
        path.write_text(json.dumps({"ambient_dim": 2, "dim": 1,
                                    "basis": [1, 0], "junk": 3}))
        res = run_cli("witness", "--input", str(path))
        assert res.returncode == 2

    def test_output_file(self, subspace_file, tmp_path):
        out = tmp_path / "cert.json"
        res = run_cli("witness", "--input", subspace_file(2, 2, [1, 0, 0, 1]),
                      "--output", str(out))
        assert res.returncode == 0 and res.stdout == ""
        assert json.loads(out.read_text())["indices"] == [1, 2]


class TestBernsteinCommand:
    def test_csv_sweep(self, tmp_path):
        out = tmp_path / "table.csv"
        res = run_cli("bernstein", "--k", "2", "--k-max", "3", "--n", "8",
                      "--trials", "2", "--seed", "5", "--output", str(out))
        assert res.returncode == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "k,p,q,N,trials,lower_estimate,upper_sharp,upper_safe,seed"
        assert len(lines) == 3
        for line in lines[1:]:
            cells = line.split(",")
            assert float(cells[5]) <= float(cells[7]) + 1e-9

    def test_jsonl_format(self):
        res = run_cli("bernstein", "--k", "2", "--n", "6", "--trials", "1",
                      "--format", "json")
        rec = json.loads(res.stdout.strip())
        assert rec["k"] == 2 and rec["N"] == 6

    def test_bad_range(self):
        res = run_cli("bernstein", "--k", "3", "--k-max", "2", "--n", "8")
        assert res.returncode == 2

    def test_reproducible_outputs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (a, b):
            run_cli("bernstein", "--k", "2", "--k-max", "3", "--n", "8",
                    "--trials", "2", "--seed", "9", "--output", str(path))
        assert a.read_bytes() == b.read_bytes()


class TestShiftCommand:
    @pytest.fixture
    def config_file(self, tmp_path):
        path = tmp_path / "shift.json"
        path.write_text(json.dumps({
            "exponents": [1, 2, 3, 4, 5],
            "weights": [0.5, 0.25, 0.125, 0.0625],
            "block_dim": 6,
        }))
        return str(path)

    def test_probe_report(self, config_file):
        res = run_cli("shift", "--config", config_file, "--n", "2",
                      "--trials", "20", "--seed", "3")
        assert res.returncode == 0
        rep = json.loads(res.stdout.strip())
        assert rep["bound"] == 0.125
        assert rep["max_ratio"] <= rep["bound"] + 1e-9

    def test_decay_table(self, config_file, tmp_path):
        out = tmp_path / "decay.csv"
        res = run_cli("shift", "--config", config_file, "--n", "1",
                      "--trials", "1", "--k-max", "2", "--output", str(out))
        assert res.returncode == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "block,p,q,beta,k,value,upper_safe"
        assert len(lines) == 5  # 4 blocks, single k

    def test_unknown_config_key(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"exponents": [1, 2], "weights": [0.5],
                                    "block_dim": 4, "oops": 1}))
        res = run_cli("shift", "--config", str(path))
        assert res.returncode == 2


class TestVerifyCommand:
    def test_list_names(self):
        res = run_cli("verify", "--list")
        assert res.returncode == 0
        names = res.stdout.strip().split("\n")
        assert "james.oracle_agreement" in names
        assert len(names) >= 15

    def test_passes_with_default_seed(self):
        res = run_cli("verify", "--seed", "0")
        assert res.returncode == 0
        assert "FAIL" not in res.stdout

    def test_corrupt_hook_fails_named_check(self):
        res = run_cli("verify", "--seed", "0", "--corrupt", "james.triangle")
        assert res.returncode == 1
        assert "FAIL james.triangle" in res.stdout
