import math

import pytest

from scattergate.cli import (
    ConfigError,
    emit_plot_data,
    main,
    parse_grid,
    parse_quantity,
)


def read_rows(path):
    """CSV rows as dicts, skipping '#' comments."""
    lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestParsing:
    def test_quantities(self):
        assert parse_quantity("50A", "length") == pytest.approx(5e-9)
        assert parse_quantity("1064nm", "length") == pytest.approx(1.064e-6)
        assert parse_quantity("100kHz", "omega") == pytest.approx(2 * math.pi * 1e5)
        assert parse_quantity("1e5", "omega") == 1e5
        assert parse_quantity("2.5krad/s", "omega") == 2500.0
        with pytest.raises(ConfigError):
            parse_quantity("50parsec", "length")
        with pytest.raises(ConfigError):
            parse_quantity("abc", "length")

    def test_grids(self):
        assert parse_grid("0.5:1.5:0.5") == [0.5, 1.0, 1.5]
        assert parse_grid("1,2,3") == [1.0, 2.0, 3.0]
        assert parse_grid("0.7") == [0.7]
        with pytest.raises(ConfigError):
            parse_grid("1:2")
        with pytest.raises(ConfigError):
            parse_grid("2:1:0.5")


class TestPlotData:
    def test_basic(self):
        text = emit_plot_data([(1.0, 2.0)], ["x", "y"])
        assert text.splitlines()[0] == "# x y"
        assert text.splitlines()[1] == "1 2"

    def test_rejects_empty(self):
        with pytest.raises(ValueError, match="at least one row"):
            emit_plot_data([], ["x"])

    def test_rejects_mixed_length(self):
        with pytest.raises(ValueError, match="mixed-length"):
            emit_plot_data([(1.0, 2.0), (1.0,)], ["x", "y"])


class TestGateScenario:
    def test_optimal_gate_stdout_and_csv(self, tmp_path, capsys):
        out = tmp_path / "gate.csv"
        code = main(
            ["gate", "--pA", "0.5", "--pB", "0.5", "--c", "1.0",
             "--stats", "boson", "--out", str(out), "--reproducible"]
        )
        assert code == 0
        captured = capsys.readouterr().out
        assert "output concurrence on |ud>: 1" in captured
        rows = read_rows(out)
        assert len(rows) == 1
        assert float(rows[0]["concurrence"]) == 1.0
        assert float(rows[0]["g_ud_ud_re"]) == pytest.approx(0.5)
        assert float(rows[0]["g_ud_du_im"]) == pytest.approx(-0.5)

    def test_bad_config_exits_2(self):
        assert main(["gate", "--pA", "0", "--pB", "0", "--c", "0"]) == 2
        assert main(["gate", "--pA", "x", "--pB", "0", "--c", "1"]) == 2

    def test_missing_required_exits_2(self):
        assert main(["gate", "--pA", "1"]) == 2


class TestWavepacketScenario:
    def test_zero_width_limit(self, tmp_path):
        out = tmp_path / "wp.csv"
        code = main(
            ["wavepacket", "--delta", "0", "--eta", "1e-8", "--out", str(out),
             "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        assert abs(float(rows[0]["concurrence"]) - 1.0) < 1e-6

    def test_grid_sorted_with_oracle(self, tmp_path):
        out = tmp_path / "wp.csv"
        code = main(
            ["wavepacket", "--delta", "0.3,-0.3", "--eta", "0.2,0.05",
             "--oracle", "--out", str(out), "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        keys = [(float(r["delta"]), float(r["eta"])) for r in rows]
        assert keys == sorted(keys)
        assert all(float(r["abs_diff"]) < 1e-6 for r in rows)

    def test_numerical_failure_exits_3(self, capsys):
        # Far-detuned mean momentum drives the closed form out of [0, 1].
        code = main(["wavepacket", "--delta", "-3", "--eta", "0.1"])
        assert code == 3
        assert "numerical failure" in capsys.readouterr().err

    def test_validation_failure_leaves_no_file(self, tmp_path):
        out = tmp_path / "wp.csv"
        code = main(["wavepacket", "--delta", "0", "--eta", "-0.1", "--out", str(out)])
        assert code == 2
        assert not out.exists()


class TestLatticeScenarios:
    def test_sweep_small_chain(self, tmp_path):
        out = tmp_path / "sweep.csv"
        dat = tmp_path / "sweep.dat"
        code = main(
            ["lattice-sweep", "--N", "7", "--U-grid", "0:2:0.5",
             "--out", str(out), "--dat", str(dat), "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        assert [float(r["u"]) for r in rows] == [0.0, 0.5, 1.0, 1.5, 2.0]
        assert dat.read_text().startswith("# u c_1n")

    def test_jobs_do_not_change_bytes(self, tmp_path):
        args = ["lattice-sweep", "--N", "7", "--U-grid", "0.5:1:0.25", "--reproducible"]
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(args + ["--out", str(out1), "--jobs", "1"]) == 0
        assert main(args + ["--out", str(out2), "--jobs", "2"]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_transfer_scenario(self, tmp_path):
        out = tmp_path / "tr.csv"
        code = main(
            ["lattice-transfer", "--N", "9", "--out", str(out), "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 1
        assert 0.0 < float(rows[0]["f_1n"]) <= 1.0


class TestDesignScenario:
    def test_rb87_defaults(self, tmp_path, capsys):
        out = tmp_path / "design.csv"
        code = main(
            ["design", "--lambda", "830nm,1064nm", "--out", str(out), "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        assert len(rows) == 2
        for row in rows:
            assert 2e5 <= float(row["c_1d_per_m"]) <= 5e6
            assert 1.5 <= float(row["v0_over_er"]) <= 6.0
            assert abs(float(row["u_over_2j"]) - 1.0) < 1e-8

    def test_species_file(self, tmp_path):
        species = tmp_path / "species.txt"
        species.write_text(
            "mass_kg = 1.44316e-25\na3d_m = 5e-9\n"
            "g_uu_Jm = 1.14e-37\ng_ud_Jm = 1.12e-37\ng_dd_Jm = 1.09e-37\n"
        )
        out = tmp_path / "design.csv"
        code = main(
            ["design", "--species", str(species), "--lambda", "1064nm",
             "--out", str(out), "--reproducible"]
        )
        assert code == 0

    def test_missing_species_file_exits_2(self):
        assert main(["design", "--species", "/nonexistent", "--lambda", "1064nm"]) == 2


class TestConfigFileAndDeterminism:
    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("delta = 0\neta = 0.5\nc = 1\n")
        out = tmp_path / "wp.csv"
        code = main(
            ["wavepacket", "--config", str(cfg), "--eta", "0.2",
             "--out", str(out), "--reproducible"]
        )
        assert code == 0
        rows = read_rows(out)
        assert float(rows[0]["eta"]) == 0.2  # flag wins over file

    def test_config_echo_resolved_defaults(self, tmp_path):
        out = tmp_path / "wp.csv"
        main(["wavepacket", "--delta", "0", "--eta", "0.1", "--out", str(out),
              "--reproducible"])
        header = out.read_text()
        assert "# c = " in header       # defaulted parameter echoed
        assert "# oracle = " in header

    def test_reproducible_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            main(["wavepacket", "--delta", "0:0.2:0.1", "--eta", "0.1",
                  "--out", str(out), "--reproducible"])
        assert out1.read_bytes() == out2.read_bytes()

    def test_timestamp_present_without_flag(self, tmp_path):
        out = tmp_path / "a.csv"
        main(["wavepacket", "--delta", "0", "--eta", "0.1", "--out", str(out)])
        assert "# generated " in out.read_text()
