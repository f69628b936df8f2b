"""Spec parsing, CSV emission, figure sets and the validate subcommand."""

import numpy as np
import pytest

from qscatter.cli import (
    CSV_HEADER,
    curve_to_csv,
    main,
    parse_spec,
    render_spec,
)
from qscatter.errors import SpecParseError

FIG2A_SPEC = "family=delta_pair  v_w=1  v_b=5  d=3  grid=0.01:50:500\n"


class TestParseSpec:
    def test_fig2a_line(self):
        spec = parse_spec(FIG2A_SPEC)
        p = spec.profile
        assert (p.family, p.v_w, p.v_b, p.d) == ("delta_pair", 1.0, 5.0, 3.0)
        assert spec.grid == (0.01, 50.0, 500)

    def test_free_spec(self):
        spec = parse_spec("family=free  grid=1:10:10\n")
        assert spec.profile.family == "free"

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\nfamily=free\ngrid=1:10:10  # trailing\n"
        assert parse_spec(text).profile.family == "free"

    def test_unknown_key_is_line_numbered(self):
        with pytest.raises(SpecParseError, match="line 2.*unknown key"):
            parse_spec("family=free\nfoo=1\ngrid=1:10:10\n")

    def test_duplicate_key(self):
        with pytest.raises(SpecParseError, match="duplicate key"):
            parse_spec("family=free\nfamily=free\ngrid=1:10:10\n")

    def test_negative_strength_names_key(self):
        with pytest.raises(SpecParseError, match="v_w"):
            parse_spec("family=delta_pair  v_w=-1  v_b=5  d=3  grid=0.01:50:500\n")

    def test_grid_validation(self):
        with pytest.raises(SpecParseError, match="E_min"):
            parse_spec("family=free  grid=0:10:10\n")
        with pytest.raises(SpecParseError, match="n_points"):
            parse_spec("family=free  grid=1:10:1\n")

    def test_round_trip(self):
        for text in (
            FIG2A_SPEC,
            "family=free grid=1:10:10",
            "family=finite_composite v_w=10 v_b=11.5 d=5 "
            "well_shape=rectangular w_w=5 grid=0.02:10:500",
            "family=continuous_joined v_w=15 v_b=5 "
            "barrier_shape=x_gauss grid=0.03:15:500 h=0.002",
        ):
            spec = parse_spec(text)
            assert parse_spec(render_spec(spec)) == spec


class TestCsv:
    def test_header_and_shape(self):
        spec = parse_spec("family=free  grid=1:10:10\n")
        from qscatter.sweep import run_sweep, uniform_grid

        curve = run_sweep(spec.profile, uniform_grid(*spec.grid), spec.cfg)
        text = curve_to_csv(curve)
        lines = text.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 11
        assert text.endswith("\n") and "\r" not in text
        row = lines[1].split(",")
        assert len(row) == 5
        assert float(row[1]) == pytest.approx(1.0, abs=1e-12)

    def test_seventeen_significant_digits(self):
        spec = parse_spec(FIG2A_SPEC)
        from qscatter.sweep import run_sweep, uniform_grid

        curve = run_sweep(spec.profile, uniform_grid(*spec.grid), spec.cfg)
        text = curve_to_csv(curve)
        value = text.splitlines()[3].split(",")[1]
        assert float(value) == curve.T[2]  # representation round-trips exactly


class TestMain:
    def test_sweep_writes_deterministic_csv(self, tmp_path):
        spec_file = tmp_path / "fig2a.spec"
        spec_file.write_text(FIG2A_SPEC, encoding="utf-8")
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(["sweep", str(spec_file), "--csv", str(out1)]) == 0
        assert main(["sweep", str(spec_file), "--csv", str(out2)]) == 0
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2
        lines = b1.decode("utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 501

    def test_sweep_oscillates_about_reference(self, tmp_path):
        spec_file = tmp_path / "fig2a.spec"
        spec_file.write_text(FIG2A_SPEC, encoding="utf-8")
        out = tmp_path / "fig2a.csv"
        assert main(["sweep", str(spec_file), "--csv", str(out)]) == 0
        data = np.genfromtxt(out, delimiter=",", names=True)
        diff = data["T"] - data["T_b"]
        signs = np.sign(diff[np.abs(diff) > 1e-12])
        assert np.count_nonzero(np.diff(signs) != 0) >= 4

    def test_free_sweep_all_transparent(self, tmp_path):
        spec_file = tmp_path / "free.spec"
        spec_file.write_text("family=free  grid=1:10:10\n", encoding="utf-8")
        out = tmp_path / "free.csv"
        assert main(["sweep", str(spec_file), "--csv", str(out)]) == 0
        data = np.genfromtxt(out, delimiter=",", names=True)
        assert np.all(np.abs(data["T"] - 1.0) < 1e-12)

    def test_figure_fig2c(self, tmp_path):
        assert main(["figure", "fig2c", "--outdir", str(tmp_path)]) == 0
        files = sorted(tmp_path.glob("fig2c_*.csv"))
        assert len(files) == 1
        lines = files[0].read_text(encoding="utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 501

    def test_figure_unknown_name_fails(self, tmp_path, capsys):
        assert main(["figure", "fig99", "--outdir", str(tmp_path)]) == 1
        assert "unknown figure" in capsys.readouterr().err

    def test_parse_error_exits_nonzero(self, tmp_path, capsys):
        bad = tmp_path / "bad.spec"
        bad.write_text("family=free\nbogus=1\ngrid=1:10:10\n", encoding="utf-8")
        assert main(["sweep", str(bad)]) == 1
        assert "unknown key" in capsys.readouterr().err

    def test_validate_quick_passes(self, capsys):
        assert main(["validate", "--quick"]) == 0
        out = capsys.readouterr().out
        assert "[PASS]" in out and "[FAIL]" not in out
