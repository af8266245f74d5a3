import json
import subprocess
import sys

import pytest

from fracdim import PointCloud, io
from fracdim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerate:
    def test_cantor(self, capsys, tmp_path):
        out_path = tmp_path / "c7.json"
        code, out, _ = run_cli(capsys, "generate", "cantor", "--level", "7",
                               "--out", str(out_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 128
        assert io.read_cloud(out_path).n == 128

    def test_polarized_depth1(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "generate", "polarized", "--depth", "1",
                               "--out", str(tmp_path / "p.json"))
        assert code == 0
        assert json.loads(out)["points"] == 3

    def test_invalid_level(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "generate", "cantor", "--level", "0",
                               "--out", str(tmp_path / "x.json"))
        assert code == 2
        assert "level" in err

    def test_missing_argument(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "generate", "cantor",
                               "--out", str(tmp_path / "x.json"))
        assert code == 2

    def test_from_spec(self, capsys, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({
            "kind": "union", "offset": 2.0,
            "components": [{"kind": "dyadic-grid", "resolution": 3},
                           {"kind": "polarized", "depth": 1}]}))
        code, out, _ = run_cli(capsys, "generate", "from-spec",
                               "--spec", str(spec_path),
                               "--out", str(tmp_path / "u.json"))
        assert code == 0
        assert json.loads(out)["points"] == 9 + 3


class TestEstimate:
    def test_interval_plus_point(self, capsys, tmp_path):
        cloud_path = tmp_path / "ipp.json"
        run_cli(capsys, "generate", "interval-plus-point", "--resolution", "8",
                "--out", str(cloud_path))
        code, out, _ = run_cli(capsys, "estimate", str(cloud_path),
                               "--r-min", str(2.0 ** -6), "--r-max", "0.5")
        assert code == 0
        payload = json.loads(out)
        assert payload["alpha_hat"] <= 0.05
        assert payload["window"]["ratio"] == 2.0

    def test_csv_table(self, capsys, tmp_path):
        cloud_path = tmp_path / "g.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "5",
                "--out", str(cloud_path))
        csv_path = tmp_path / "table.csv"
        code, out, _ = run_cli(capsys, "estimate", str(cloud_path),
                               "--r-min", "0.125", "--r-max", "0.5",
                               "--csv", str(csv_path))
        assert code == 0
        assert csv_path.exists()

    def test_bad_window(self, capsys, tmp_path):
        cloud_path = tmp_path / "g.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "4",
                "--out", str(cloud_path))
        code, _, err = run_cli(capsys, "estimate", str(cloud_path),
                               "--r-min", "0.5", "--r-max", "0.1")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "estimate", "/nonexistent.json",
                               "--r-min", "0.1", "--r-max", "0.5")
        assert code == 5

    def test_singleton_estimates_zero(self, capsys, tmp_path):
        cloud_path = tmp_path / "one.json"
        io.write_cloud(PointCloud([[0.25]]), cloud_path)
        code, out, _ = run_cli(capsys, "estimate", str(cloud_path),
                               "--r-min", "0.01", "--r-max", "0.5")
        assert code == 0
        payload = json.loads(out)
        assert payload["alpha_hat"] == 0.0 and payload["argmin"] is None

    def test_cantor_aligned_value(self, capsys, tmp_path):
        import math
        cloud_path = tmp_path / "c7.json"
        run_cli(capsys, "generate", "cantor", "--level", "7",
                "--out", str(cloud_path))
        code, out, _ = run_cli(capsys, "estimate", str(cloud_path),
                               "--r-min", str(3.0 ** -5), "--r-max", str(3.0 ** -1),
                               "--ratio", "3", "--min-gap", "3")
        assert code == 0
        got = json.loads(out)["alpha_hat"]
        assert abs(got - math.log(2) / math.log(3)) < 1e-6


class TestCertify:
    def test_grid_success(self, capsys, tmp_path):
        cloud_path = tmp_path / "g10.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "10",
                "--out", str(cloud_path))
        cert_path = tmp_path / "cert.json"
        code, out, _ = run_cli(capsys, "certify", str(cloud_path),
                               "--k", "6", "--l", "16", "--depth", "2",
                               "--strong", "--out", str(cert_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["bound"] == 2 / 3
        assert cert_path.exists()

    def test_absent_exit_3(self, capsys, tmp_path):
        cloud_path = tmp_path / "two.json"
        io.write_cloud(PointCloud([[0.0], [1.0]]), cloud_path)
        code, out, _ = run_cli(capsys, "certify", str(cloud_path),
                               "--k", "2", "--l", "2", "--depth", "2",
                               "--out", str(tmp_path / "c.json"))
        assert code == 3
        assert json.loads(out)["reason"] == "absent"

    def test_budget_exhausted_exit_3(self, capsys, tmp_path):
        cloud_path = tmp_path / "g10.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "10",
                "--out", str(cloud_path))
        code, out, _ = run_cli(capsys, "--budget", "1", "certify", str(cloud_path),
                               "--k", "6", "--l", "16", "--depth", "2",
                               "--out", str(tmp_path / "c.json"))
        assert code == 3
        assert json.loads(out)["reason"] == "budget exhausted"


class TestVerify:
    @pytest.fixture
    def certified(self, capsys, tmp_path):
        cloud_path = tmp_path / "g.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "10",
                "--out", str(cloud_path))
        cert_path = tmp_path / "cert.json"
        run_cli(capsys, "certify", str(cloud_path), "--k", "6", "--l", "16",
                "--depth", "2", "--strong", "--out", str(cert_path))
        return cloud_path, cert_path

    def test_roundtrip_ok(self, capsys, certified):
        cloud_path, cert_path = certified
        code, out, _ = run_cli(capsys, "verify", str(cloud_path), str(cert_path),
                               "--scaling")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] and payload["scaling_check"] is True

    def test_tampered_index_lists_sep_violation(self, capsys, certified, tmp_path):
        cloud_path, cert_path = certified
        cert = json.loads(cert_path.read_text())
        cert["assign"]["1"] = cert["assign"]["0"]
        bad_path = tmp_path / "bad.json"
        bad_path.write_text(json.dumps(cert))
        code, out, _ = run_cli(capsys, "verify", str(cloud_path), str(bad_path))
        assert code == 4
        kinds = {v["kind"] for v in json.loads(out)["violations"]}
        assert "sep" in kinds

    def test_strong_flag_flip_on_polarized(self, capsys, tmp_path):
        from fracdim import polarized_natural_family
        cloud, fam = polarized_natural_family(2)
        cloud_path = tmp_path / "p.json"
        io.write_cloud(cloud, cloud_path)
        strong = fam.to_dict()
        strong["strong"] = True
        cert_path = tmp_path / "strong.json"
        cert_path.write_text(json.dumps(strong))
        code, out, _ = run_cli(capsys, "verify", str(cloud_path), str(cert_path))
        assert code == 4
        violations = json.loads(out)["violations"]
        assert any(v["kind"] == "strong" and v["s"] == "" for v in violations)


class TestEmbed:
    def test_branch4_with_scan(self, capsys, tmp_path):
        tree_path = tmp_path / "t.json"
        tree_path.write_text(json.dumps([[0] * i for i in range(5)]))
        out_path = tmp_path / "emb.json"
        code, out, _ = run_cli(capsys, "embed", str(tree_path),
                               "--out", str(out_path), "--depth-scan")
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 31
        assert payload["max_regular_depth"] == 4
        assert payload["scan_exhausted"] is False

    def test_root_only(self, capsys, tmp_path):
        tree_path = tmp_path / "t.json"
        tree_path.write_text("[[]]")
        code, out, _ = run_cli(capsys, "embed", str(tree_path),
                               "--out", str(tmp_path / "e.json"), "--depth-scan")
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 1 and payload["max_regular_depth"] == 0

    def test_non_prefix_closed(self, capsys, tmp_path):
        tree_path = tmp_path / "t.json"
        tree_path.write_text("[[0],[0,0]]")
        code, _, err = run_cli(capsys, "embed", str(tree_path),
                               "--out", str(tmp_path / "e.json"))
        assert code == 2


class TestInfoAndConfig:
    def test_info_cloud(self, capsys, tmp_path):
        cloud_path = tmp_path / "c.json"
        run_cli(capsys, "generate", "cantor", "--level", "5", "--out", str(cloud_path))
        code, out, _ = run_cli(capsys, "info", str(cloud_path))
        assert code == 0
        payload = json.loads(out)
        assert payload["points"] == 32 and payload["metric"] == "euclidean"

    def test_info_config_defaults(self, capsys):
        code, out, _ = run_cli(capsys, "info")
        assert code == 0
        payload = json.loads(out)
        assert payload["budget"] == 100000

    def test_config_file_and_flag_precedence(self, capsys, tmp_path, monkeypatch):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"budget": 777}))
        monkeypatch.setenv("FRACDIM_CONFIG", str(cfg_path))
        code, out, _ = run_cli(capsys, "info")
        assert json.loads(out)["budget"] == 777
        code, out, _ = run_cli(capsys, "--budget", "55", "info")
        assert json.loads(out)["budget"] == 55

    def test_bad_config_key(self, capsys, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({"budgett": 1}))
        code, _, err = run_cli(capsys, "--config", str(cfg_path), "info")
        assert code == 2


class TestDeterminismAndEntryPoint:
    def test_byte_identical_reruns(self, capsys, tmp_path):
        cloud_path = tmp_path / "g.json"
        run_cli(capsys, "generate", "dyadic-grid", "--resolution", "6",
                "--out", str(cloud_path))
        outs = []
        for _ in range(2):
            code, out, _ = run_cli(capsys, "estimate", str(cloud_path),
                                   "--r-min", "0.03125", "--r-max", "0.5")
            assert code == 0
            outs.append(out)
        assert outs[0] == outs[1]

    def test_module_entry_point(self, tmp_path):
        out_path = tmp_path / "c.json"
        proc = subprocess.run(
            [sys.executable, "-m", "fracdim", "generate", "cantor",
             "--level", "3", "--out", str(out_path)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["points"] == 8

    def test_malformed_json_is_io_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run_cli(capsys, "info", str(bad))
        assert code == 5
