import io
import json
import math

import numpy as np
import pytest

from tailsitter_lab.harness import (
    SCENARIOS,
    ConfigError,
    DataError,
    RunLog,
    ScenarioConfig,
    emit_outputs,
    load_spline,
    run_scenario,
    settling_time,
    write_timeseries_csv,
)


class TestDataDir:
    def test_env_override(self, monkeypatch, tmp_path):
        from tailsitter_lab import data as data_files

        monkeypatch.setenv(data_files.ENV_DATA_DIR, str(tmp_path))
        assert data_files.default_airfoil_path() == tmp_path / data_files.NACA0015_FILENAME
        monkeypatch.delenv(data_files.ENV_DATA_DIR)
        assert data_files.default_airfoil_path().is_file()


class TestConfig:
    def test_unknown_scenario(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(scenario="fly-to-the-moon")

    def test_bad_dt(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(scenario="hover-step", dt=0.0)

    def test_builtin_scenarios(self):
        assert len(SCENARIOS) == 6
        assert set(SCENARIOS) == {
            "hover-step",
            "hover-attitude-step",
            "cruise-speed-step",
            "cruise-attitude-step",
            "transition-const-acc",
            "transition-prescribed-aoa",
        }

    def test_missing_airfoil_file(self):
        with pytest.raises(DataError):
            load_spline("/nonexistent/airfoil.csv")


class TestSettlingTime:
    def test_basic(self):
        t = np.arange(0.0, 5.0, 0.01)
        x = 1.0 * np.exp(-2.0 * t)
        ts = settling_time(t, x, 0.0, 1.0)
        assert ts == pytest.approx(math.log(50.0) / 2.0, abs=0.02)

    def test_never_settles(self):
        t = np.arange(0.0, 5.0, 0.01)
        x = np.ones_like(t)
        assert settling_time(t, x, 0.0, 1.0) is None

    def test_already_settled(self):
        t = np.arange(0.0, 1.0, 0.01)
        assert settling_time(t, np.zeros_like(t), 0.0, 1.0) == 0.0


class TestRunScenario:
    def test_time_axis_uniform(self, naca_spline):
        log = run_scenario(ScenarioConfig(scenario="hover-step", duration=1.0), naca_spline)
        dt = np.diff(log["t"])
        assert np.allclose(dt, 0.01, atol=1e-12)
        assert log.n_steps == 101

    def test_deterministic_reruns(self, naca_spline):
        config = ScenarioConfig(scenario="hover-step", duration=2.0)
        out1, out2 = io.StringIO(), io.StringIO()
        write_timeseries_csv(run_scenario(config, naca_spline), out1)
        write_timeseries_csv(run_scenario(config, naca_spline), out2)
        assert out1.getvalue() == out2.getvalue()

    def test_empty_duration(self, naca_spline):
        log = run_scenario(ScenarioConfig(scenario="hover-step", duration=0.0), naca_spline)
        assert log.n_steps == 1  # the initial sample only
        log_empty = RunLog(columns={k: v[:0] for k, v in log.columns.items()}, summary={})
        buf = io.StringIO()
        write_timeseries_csv(log_empty, buf)
        assert len(buf.getvalue().splitlines()) == 1

    def test_attitude_settling_sign_symmetric(self, naca_spline):
        plus = run_scenario(
            ScenarioConfig(scenario="hover-attitude-step", hover_dtheta_deg=45.0), naca_spline)
        minus = run_scenario(
            ScenarioConfig(scenario="hover-attitude-step", hover_dtheta_deg=-45.0), naca_spline)
        ts_plus = plus.summary["settle_theta"]
        ts_minus = minus.summary["settle_theta"]
        assert ts_plus is not None and ts_minus is not None
        assert ts_plus == pytest.approx(ts_minus, rel=0.25)

    def test_step_halving_consistency(self, naca_spline):
        coarse = run_scenario(ScenarioConfig(scenario="transition-const-acc"), naca_spline)
        fine = run_scenario(ScenarioConfig(scenario="transition-const-acc", substeps=2), naca_spline)
        jump_c = coarse.summary["theta_des_jump"]["max_step_a_v"]
        jump_f = fine.summary["theta_des_jump"]["max_step_a_v"]
        assert jump_c == pytest.approx(jump_f, rel=0.01)
        assert coarse.summary["distance_at_accel_end"] == pytest.approx(
            fine.summary["distance_at_accel_end"], rel=0.01)


class TestEmitOutputs:
    def test_files_and_roundtrip(self, naca_spline, tmp_path):
        config = ScenarioConfig(scenario="hover-step", duration=1.0)
        log = run_scenario(config, naca_spline)
        paths = emit_outputs(log, config, tmp_path)
        names = {p.name for p in paths}
        assert {"timeseries.csv", "summary.json", "states.svg", "thrusts.svg",
                "aoa.svg", "errors.svg"} <= names
        with open(tmp_path / "summary.json") as fh:
            loaded = json.load(fh)
        assert loaded["scenario"] == "hover-step"
        assert loaded["n_steps"] == log.summary["n_steps"]
        assert loaded["max_abs_e_y"] == pytest.approx(log.summary["max_abs_e_y"], rel=1e-8)

    def test_csv_numeric_precision(self, naca_spline, tmp_path):
        config = ScenarioConfig(scenario="hover-step", duration=0.5)
        log = run_scenario(config, naca_spline)
        emit_outputs(log, config, tmp_path)
        header, first = (tmp_path / "timeseries.csv").read_text().splitlines()[:2]
        assert header.startswith("t,y,z,theta")
        for field in first.split(","):
            if field:
                float(field)  # every populated cell parses as a number
