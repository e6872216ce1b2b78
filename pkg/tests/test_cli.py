import csv
import json
from fractions import Fraction

import pytest

from k3wall import cli
from k3wall.exact import EQ, QuadraticSurd, surd_compare


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCertifyCommand:
    def test_fail_exit_and_json(self, capsys):
        code, out, _ = run(capsys, "certify", "--r", "2", "--k", "1",
                           "--g", "8", "--format", "json")
        assert code == 1
        data = json.loads(out)
        assert data["format_version"] == 1
        assert data["overall"] is False
        assert data["scenario"] == {"r": 2, "k": 1, "g": 8, "hsq": 14,
                                    "s": 4, "v_squared": -2}
        by_id = {c["id"]: c for c in data["checks"]}
        assert by_id["C1"]["verdict"] == "FAIL"
        assert by_id["C2"]["verdict"] == "FAIL"
        assert by_id["C12"]["verdict"] == "PASS"

    def test_pass_exit(self, capsys):
        code, _, _ = run(capsys, "certify", "--r", "2", "--k", "1", "--g", "16")
        assert code == 0

    def test_a2_failure(self, capsys):
        code, out, _ = run(capsys, "certify", "--r", "2", "--k", "2", "--g", "8")
        assert code == 1
        assert "A2" in out and "FAIL" in out

    def test_usage_error_on_bad_rank(self, capsys):
        code, _, err = run(capsys, "certify", "--r", "0", "--k", "1", "--g", "8")
        assert code == 2 and "error" in err

    def test_usage_error_on_missing_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["certify", "--r", "2", "--k", "1"])
        assert exc.value.code == 2

    def test_exit_is_function_of_report_only(self, capsys):
        for fmt in ("table", "json"):
            code, _, _ = run(capsys, "certify", "--r", "2", "--k", "1",
                             "--g", "8", "--format", fmt)
            assert code == 1

    def test_json_round_trips_exact_values(self, capsys):
        _, out, _ = run(capsys, "certify", "--r", "2", "--k", "1", "--g", "8",
                        "--format", "json")
        data = json.loads(out)
        reparsed = json.loads(json.dumps(data))
        for check in reparsed["checks"]:
            for comp in check["comparisons"]:
                for side in ("lhs", "rhs"):
                    value = cli.decode_exact(comp[side]["exact"])
                    again = cli.decode_exact(
                        cli.encode_exact(value))
                    assert surd_compare(cli_as_surdish(value),
                                        cli_as_surdish(again)) == EQ

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(capsys, "certify", "--r", "3", "--k", "2", "--g", "40",
                         "--format", "json")
        _, out2, _ = run(capsys, "certify", "--r", "3", "--k", "2", "--g", "40",
                         "--format", "json")
        assert out1 == out2


def cli_as_surdish(value):
    from k3wall.exact import SurdSum
    return SurdSum.of(value)


class TestMinGenusCommand:
    def test_found(self, capsys):
        code, out, _ = run(capsys, "min-genus", "--r", "2", "--k", "1",
                           "--gmax", "30", "--horizon", "4")
        assert code == 0
        assert "g_min = 16" in out and "stable = true" in out

    def test_not_found_exit3(self, capsys):
        code, _, err = run(capsys, "min-genus", "--r", "2", "--k", "1",
                           "--gmax", "10")
        assert code == 3 and "no genus" in err

    def test_zero_horizon_note(self, capsys):
        code, out, _ = run(capsys, "min-genus", "--r", "2", "--k", "1",
                           "--gmax", "20", "--horizon", "0")
        assert code == 0 and "unverified" in out

    def test_json_search_block(self, capsys):
        code, out, _ = run(capsys, "min-genus", "--r", "2", "--k", "1",
                           "--gmax", "20", "--horizon", "2", "--format", "json")
        data = json.loads(out)
        assert data["search"] == {"g_min": 16, "stable": True, "horizon": 2,
                                  "g_max": 20}
        assert data["scenario"]["g"] == 16


class TestDiagramCommand:
    def test_files_and_content(self, tmp_path, capsys):
        stem = tmp_path / "diag"
        code, out, _ = run(capsys, "diagram", "--r", "2", "--k", "1",
                           "--g", "8", "--out", str(stem), "--samples", "7")
        assert code == 0
        data = json.loads((tmp_path / "diag.json").read_text())
        lines = {l["label"]: l for l in data["diagram"]["lines"]}
        star = lines["ell_star"]
        assert star["slope"] == {"type": "rational", "num": 0, "den": 1}
        assert star["intercept"] == {"type": "rational", "num": 7, "den": 18}
        assert len(data["diagram"]["gamma_samples"]) == 7
        b_values = {b["label"]: b for b in data["diagram"]["b_values"]}
        assert b_values["b2_star"]["decimal"] == "0.416667"
        assert b_values["b2_star"]["exact"] == {
            "type": "surd", "p": 5, "t": 0, "D": 0, "q": 12}

    def test_csv_rows(self, tmp_path, capsys):
        stem = tmp_path / "d"
        run(capsys, "diagram", "--r", "2", "--k", "1", "--g", "8",
            "--out", str(stem))
        with open(tmp_path / "d.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["kind", "label", "x", "y"]
        b2 = [r for r in rows if r[1] == "b2_star"]
        assert b2 and b2[0][2] == "0.416667"
        kinds = {r[0] for r in rows[1:]}
        assert kinds == {"line", "point", "vertical", "marker", "gamma"}

    def test_samples_zero_omits_curve(self, tmp_path, capsys):
        stem = tmp_path / "nz"
        run(capsys, "diagram", "--r", "2", "--k", "1", "--g", "8",
            "--out", str(stem), "--samples", "0")
        data = json.loads((tmp_path / "nz.json").read_text())
        assert data["diagram"]["gamma_samples"] == []
        assert len(data["diagram"]["lines"]) == 5

    def test_io_error_exit4(self, capsys):
        code, _, err = run(capsys, "diagram", "--r", "2", "--k", "1",
                           "--g", "8", "--out", "/nonexistent-dir/x")
        assert code == 4 and "cannot write" in err

    def test_b_values_round_trip(self, tmp_path, capsys):
        stem = tmp_path / "rt"
        run(capsys, "diagram", "--r", "3", "--k", "2", "--g", "16",
            "--out", str(stem))
        data = json.loads((tmp_path / "rt.json").read_text())
        from k3wall.plane import parabola_w
        from k3wall.lattice import Surface
        X = Surface(data["scenario"]["hsq"])
        lines = {l["label"]: l for l in data["diagram"]["lines"]}
        for bv in data["diagram"]["b_values"]:
            surd = cli.decode_exact(bv["exact"])
            assert isinstance(surd, QuadraticSurd)
            label = "ell_" + bv["label"].split("_", 1)[1]
            line_obj = lines[label]
            slope = cli.decode_exact(line_obj["slope"])
            intercept = cli.decode_exact(line_obj["intercept"])
            assert slope * surd + intercept == parabola_w(surd, X)


class TestPolygonCommand:
    def test_default_chain(self, capsys):
        code, out, _ = run(capsys, "polygon", "--r", "2", "--k", "1", "--g", "8")
        assert code == 0
        assert "Q_out = 12.000000" in out
        assert "Q_in = 11.489125" in out
        assert "h0 bound = 6.000000 (floor 6)" in out

    def test_custom_chain(self, capsys):
        code, out, _ = run(capsys, "polygon", "--r", "2", "--k", "1", "--g", "8",
                           "--points", "0,0;-1,1;0,2", "--chi", "0")
        assert code == 0
        assert "h0 bound = 5.744563 (floor 5)" in out

    def test_non_convex_exit1(self, capsys):
        code, _, err = run(capsys, "polygon", "--r", "2", "--k", "1", "--g", "8",
                           "--points", "0,0;1,1;-3,2", "--chi", "0")
        assert code == 1 and "non-convex" in err

    def test_json_fields(self, capsys):
        code, out, _ = run(capsys, "polygon", "--r", "2", "--k", "1",
                           "--g", "8", "--format", "json")
        data = json.loads(out)
        pg = data["polygon"]
        assert pg["q_in"]["exact"] == {
            "type": "sum", "terms": [{"num": 2, "den": 1, "radicand": 33}]}
        assert pg["two_eps_out"]["exact"] == {"type": "sum", "terms": []}
        assert pg["h0_floor"] == 6


class TestLatticeCommand:
    def test_vector_query(self, capsys):
        code, out, _ = run(capsys, "lattice", "--g", "8", "--v", "2,1,4",
                           "--u", "1,0,1", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["lattice"]["v_squared"] == -2
        assert data["lattice"]["pairing"] == -6
        assert data["lattice"]["euler"] == 6

    def test_scenario_query(self, capsys):
        code, out, _ = run(capsys, "lattice", "--g", "8", "--r", "2", "--k", "1")
        assert code == 0
        assert "s = 4" in out and "v^2 = -2" in out

    def test_missing_args_exit2(self, capsys):
        code, _, err = run(capsys, "lattice", "--g", "8")
        assert code == 2


class TestConfig:
    def test_config_file_defaults(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "k3wall.conf"
        cfg.write_text("digits = 3\nhorizon = 2  # comment\nprecision_cap = 128\n")
        monkeypatch.setenv("K3WALL_CONFIG", str(cfg))
        _, out, _ = run(capsys, "certify", "--r", "2", "--k", "1", "--g", "8")
        assert "0.417" in out and "0.416667" not in out
        from k3wall.exact import get_default_bit_cap
        assert get_default_bit_cap() == 128

    def test_flag_overrides_config(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "k3wall.conf"
        cfg.write_text("digits=3\n")
        monkeypatch.setenv("K3WALL_CONFIG", str(cfg))
        _, out, _ = run(capsys, "certify", "--r", "2", "--k", "1", "--g", "8",
                        "--digits", "5")
        assert "0.41667" in out

    def test_out_flag_writes_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        run(capsys, "certify", "--r", "2", "--k", "1", "--g", "8",
            "--format", "json", "--out", str(target))
        data = json.loads(target.read_text())
        assert data["format_version"] == 1
