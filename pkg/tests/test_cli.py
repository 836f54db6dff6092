import csv
import json
import subprocess
import sys

import pytest

from psiapprox import cli
from psiapprox.config import ConfigError, TablePsi, apply_overrides, default_config, from_dict


def write(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


BASE = {"schema": 1, "n_list": [4, 8], "grid": {"N": 2048, "M": 512}}


class TestConfig:
    def test_defaults(self):
        cfg = from_dict({"schema": 1})
        assert cfg.n_list == [4, 8, 16, 32] and cfg.space == "C"

    @pytest.mark.parametrize("bad", [
        {"n_list": []}, {"n_list": [4, 4]}, {"n_list": [1]}, {"space": "L2"},
        {"tolerances": {"remez": 0}}, {"tolerances": {"unknown": 1}}, {"psi": {"family": "bessel"}},
        {"omega": {"family": "power", "gamma": 2}}, {"extra": 1}, {"schema": 2},
        {"output": {"csv": True}}, {"output": {"pdf": "a.pdf"}},
    ])
    def test_schema_errors(self, bad):
        with pytest.raises(ConfigError):
            from_dict({**{"schema": 1}, **bad})

    def test_overrides(self):
        cfg = apply_overrides(default_config(), ["remez=1e-8", "N=1024"])
        assert cfg.tolerances["remez"] == 1e-8 and cfg.grid["N"] == 1024
        with pytest.raises(ConfigError):
            apply_overrides(default_config(), ["remez=-1"])
        with pytest.raises(ConfigError):
            apply_overrides(default_config(), ["remez"])

    def test_table_psi(self):
        psi = TablePsi([1, 2, 3, 4], [0.5, 0.25, 0.125, 0.0625])
        assert psi(2.5) == pytest.approx(2**-2.5)
        assert psi(10.0) == pytest.approx(2.0**-10)
        with pytest.raises(ConfigError):
            TablePsi([1, 2], [0.5, 0.6])


class TestVerify:
    def test_pipeline(self, tmp_path):
        cfg = write(tmp_path, BASE)
        out = tmp_path / "out"
        assert cli.main(["verify", "--config", cfg, "--out", str(out), "--plot"]) == 0
        rows = read_csv(out / "verify.csv")
        assert list(rows[0]) == ["n", "space", "E_n", "main_term", "gamma_scale", "normalized_dev",
                                 "remez_iters", "certificate"]
        for row in rows:
            assert float(row["E_n"]) / float(row["main_term"]) == pytest.approx(1.0, abs=1e-3)
            assert row["certificate"] == "alternance"
        svg = (out / "verify.svg").read_text()
        assert "<polyline" in svg and "<path" not in svg

    def test_both_spaces(self, tmp_path):
        cfg = write(tmp_path, {**BASE, "space": "both", "n_list": [4]})
        assert cli.main(["verify", "--config", cfg, "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "verify.csv")
        assert [r["space"] for r in rows] == ["C", "L1"]
        assert rows[1]["certificate"] == "sign pattern"

    def test_zero_modulus(self, tmp_path):
        cfg = write(tmp_path, {**BASE, "omega": {"family": "zero"}})
        assert cli.main(["verify", "--config", cfg, "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "verify.csv")
        assert all(float(r["E_n"]) == 0.0 for r in rows)
        assert all(r["normalized_dev"] == "NA" for r in rows)

    def test_deterministic_and_parallel(self, tmp_path):
        cfg = write(tmp_path, BASE)
        cli.main(["verify", "--config", cfg, "--out", str(tmp_path / "a")])
        cli.main(["verify", "--config", cfg, "--out", str(tmp_path / "b"), "--jobs", "2"])
        assert (tmp_path / "a" / "verify.csv").read_bytes() == (tmp_path / "b" / "verify.csv").read_bytes()

    def test_numeric_failure_recorded(self, tmp_path):
        data = {**BASE, "psi": {"family": "poisson", "alpha": 0.6931471805599453, "r": 1}, "n_list": [2, 4]}
        cfg = write(tmp_path, data)
        assert cli.main(["verify", "--config", cfg, "--out", str(tmp_path)]) == 3
        rows = read_csv(tmp_path / "verify.csv")
        assert rows[0]["certificate"].startswith("error")
        assert rows[1]["certificate"] == "alternance"


class TestExitCodes:
    def test_empty_n_list(self, tmp_path):
        cfg = write(tmp_path, {"schema": 1, "n_list": []})
        assert cli.main(["verify", "--config", cfg, "--out", str(tmp_path)]) == 2

    def test_missing_file(self, tmp_path):
        assert cli.main(["estimate", "--config", str(tmp_path / "nope.json")]) == 2

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{schema: 1")
        assert cli.main(["kernel", "--config", str(path)]) == 2

    def test_bad_override(self, tmp_path):
        assert cli.main(["estimate", "--out", str(tmp_path), "--tol-override", "remez=abc"]) == 2


class TestOtherCommands:
    def test_compare(self, tmp_path):
        cfg = write(tmp_path, {**BASE, "n_list": [8, 16]})
        assert cli.main(["compare-fourier", "--config", cfg, "--out", str(tmp_path), "--plot"]) == 0
        rows = read_csv(tmp_path / "compare_fourier.csv")
        assert float(rows[-1]["class_ratio"]) == pytest.approx(float(rows[-1]["limit"]), rel=0.01)

    def test_compare_degree_limited(self, tmp_path):
        cfg = write(tmp_path, {**BASE, "omega": {"family": "zero"}})
        assert cli.main(["compare-fourier", "--config", cfg, "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "compare_fourier.csv")
        assert all(r["ratio"] == "NA" for r in rows)

    def test_kernel_estimate_extremal(self, tmp_path):
        cfg = write(tmp_path, {**BASE, "psi": {"family": "exponential", "base": 2}, "n_list": [3, 4]})
        for cmd, name in [("kernel", "kernel.csv"), ("estimate", "estimate.csv"), ("extremal", "extremal.csv")]:
            assert cli.main([cmd, "--config", cfg, "--out", str(tmp_path), "--plot"]) == 0
            rows = read_csv(tmp_path / name)
            assert rows
        rows = read_csv(tmp_path / "kernel.csv")
        first = [r for r in rows if r["n"] == "3"][0]
        assert float(first["Psi_beta"]) == pytest.approx(1.0, abs=1e-10)

    def test_module_entry_point(self, tmp_path):
        res = subprocess.run([sys.executable, "-m", "psiapprox", "estimate", "--out", str(tmp_path)],
                             capture_output=True, text=True)
        assert res.returncode == 0
        assert (tmp_path / "estimate.csv").exists()
