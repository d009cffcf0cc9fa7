import math

import numpy as np
import pytest
from pydantic import ValidationError

from src import commands
from src.beamform import BeamformerKind
from src.commands import Command
from src.config import AppSettings
from src.core.exceptions import DomainError
from src.experiments import (
    CheckResult,
    CouplingMode,
    NonFiniteResult,
    OutputError,
    ScenarioConfig,
    ScenarioParseError,
    ScenarioValidationError,
    SweepResult,
    ValidationReport,
    WorkerPool,
    design_bank,
    dump_scenario,
    emit_csv,
    format_csv,
    frequency_responses,
    load_scenario,
    parse_scenario,
    run_fig1a,
    run_fig1b,
    run_fig2,
    run_fig3,
    run_sweep,
    scenario_hash,
    validate,
)
from src.experiments.response import tight_counterpart
from src.experiments.use_cases import fig2 as fig2_runner
from src.main import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR, EXIT_OUTPUT_ERROR, main
from src.metrics import NumericalDegeneracy
from src.noise import NoiseConfig

CENTER = 10e9


class TestScenario:
    def test_empty_file_names_missing_mode(self, tmp_path):
        path = tmp_path / "empty.toml"
        path.write_text("")
        with pytest.raises(ScenarioValidationError) as exc:
            load_scenario(path)
        assert exc.value.field == "coupling_mode"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioParseError):
            load_scenario(tmp_path / "missing.toml")

    def test_tight_defaults(self):
        cfg = parse_scenario('coupling_mode = "tight-default"\n')
        assert cfg.geometry.spacing == 0.005
        assert cfg.geometry.coupling_factor == pytest.approx(2.2, rel=1e-14)
        assert cfg.geometry.n_elements == 32
        assert cfg.mutual_model == "cms-closed-form"
        assert cfg.beamformers == [BeamformerKind.POP, BeamformerKind.TD_I, BeamformerKind.TD_II, BeamformerKind.TD_OPT]
        assert (cfg.sweep.start, cfg.sweep.stop) == (4e9, 16e9)
        assert cfg.quadrature.rtol == 1e-6
        assert cfg.link.aoa == pytest.approx(math.pi / 3)
        assert cfg.band.width == 2e9

    def test_weak_defaults(self, weak_cfg):
        assert weak_cfg.is_unity
        assert weak_cfg.geometry.spacing == pytest.approx(299_792_458.0 / (2 * CENTER), rel=1e-15)
        assert weak_cfg.mutual_model == "zero"
        assert weak_cfg.beamformers == [BeamformerKind.CONV, BeamformerKind.TTD_WC]

    def test_dotted_keys_override_defaults(self):
        cfg = parse_scenario('coupling_mode = "tight-default"\ngeometry.n_elements = 8\nlink.aoa = 0.5\n')
        assert cfg.geometry.n_elements == 8
        assert cfg.geometry.spacing == 0.005
        assert cfg.link.aoa == 0.5

    def test_out_of_range_angle(self):
        with pytest.raises(ScenarioValidationError) as exc:
            parse_scenario('coupling_mode = "weak-unity"\nlink.aoa = 2.0\n')
        assert exc.value.field == "link.aoa"

    def test_syntax_error_reports_line(self):
        with pytest.raises(ScenarioParseError) as exc:
            parse_scenario('coupling_mode = "weak-unity"\nlink.aoa = \n')
        assert exc.value.line == 2

    def test_unknown_key_is_rejected(self):
        with pytest.raises(ScenarioValidationError):
            parse_scenario('coupling_mode = "weak-unity"\nlink.azimuth = 0.1\n')

    @pytest.mark.parametrize("mode", ["weak-unity", "tight-default"])
    def test_dump_round_trip(self, mode):
        cfg = parse_scenario(f'coupling_mode = "{mode}"\nlink.lna_impedance = "2+1j"\n')
        text = dump_scenario(cfg)
        reloaded = parse_scenario(text)
        assert reloaded == cfg
        assert dump_scenario(reloaded) == text
        assert reloaded.link.lna_impedance == 2 + 1j
        assert 'link.lna_impedance = "' in text

    def test_hash_tracks_content(self, tight_cfg):
        assert scenario_hash(parse_scenario(dump_scenario(tight_cfg))) == scenario_hash(tight_cfg)
        changed = tight_cfg.model_copy(update={"aoa_set": [0.0]})
        assert scenario_hash(changed) != scenario_hash(tight_cfg)
        assert len(scenario_hash(tight_cfg)) == 64


class TestScenarioConfig:
    def test_noise_bandwidth_defaults_to_bin_width(self, tight_cfg):
        assert tight_cfg.effective_noise.bandwidth == pytest.approx(12e9 / 1023)
        assert tight_cfg.with_points(3).effective_noise.bandwidth == pytest.approx(6e9)

    def test_explicit_noise_bandwidth_wins(self):
        cfg = parse_scenario('coupling_mode = "tight-default"\nnoise.noise_bandwidth = 1e7\n')
        assert cfg.effective_noise.bandwidth == 1e7

    def test_bandwidth_sweep_stays_below_twice_center(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate(
                {"coupling_mode": "tight-default", "sweep": {"kind": "bandwidth", "start": 1e8, "stop": 2e10}},
            )

    def test_generic_delays_must_match_array(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate({"coupling_mode": "custom", "beamformers": ["td-generic"]})
        cfg = ScenarioConfig.model_validate(
            {"coupling_mode": "custom", "beamformers": ["td-generic"], "td_delays": [0.0] * 32},
        )
        assert cfg.td_delays == [0.0] * 32

    def test_empty_beamformer_list(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate({"coupling_mode": "custom", "beamformers": []})

    def test_sweep_range(self):
        with pytest.raises(ValidationError):
            ScenarioConfig.model_validate({"coupling_mode": "custom", "sweep": {"start": 5e9, "stop": 4e9}})

    def test_weak_geometry_is_half_wavelength(self, tight_cfg):
        assert tight_cfg.weak_geometry.spacing == pytest.approx(0.5 * 299_792_458.0 / CENTER)
        assert tight_cfg.weak_geometry.n_elements == tight_cfg.geometry.n_elements

    def test_tight_counterpart(self, weak_cfg, tight_cfg):
        assert tight_counterpart(tight_cfg) is tight_cfg
        counterpart = tight_counterpart(weak_cfg)
        assert counterpart.coupling_mode is CouplingMode.TIGHT_DEFAULT
        assert counterpart.geometry.spacing == 0.005
        assert counterpart.link == weak_cfg.link


class TestResponse:
    def test_angles_share_noise(self, small_tight_cfg):
        first, second = frequency_responses(CENTER, small_tight_cfg, [0.0, math.pi / 3])
        assert first.noise is second.noise
        np.testing.assert_array_equal(first.state.coupling, second.state.coupling)
        np.testing.assert_array_equal(first.state.steering, np.ones(8))

    def test_unity_response(self, weak_cfg):
        (response,) = frequency_responses(CENTER, weak_cfg, [0.3])
        assert response.z_set is None
        np.testing.assert_array_equal(response.noise.matrix, np.eye(32))

    def test_design_bank_follows_request(self, small_tight_cfg):
        bank = design_bank(small_tight_cfg, [BeamformerKind.TD_OPT, BeamformerKind.POP])
        assert bank.kinds == (BeamformerKind.TD_OPT, BeamformerKind.POP)


class TestSweepResult:
    def test_rows_must_match_columns(self):
        with pytest.raises(ValidationError):
            SweepResult(columns=["freq_hz", "snr_conv"], rows=[[1.0]])

    def test_rows_must_be_finite(self):
        with pytest.raises(ValidationError):
            SweepResult(columns=["freq_hz"], rows=[[math.nan]])

    def test_db_columns(self):
        result = SweepResult(columns=["freq_hz", "snr_conv", "other"], rows=[[1.0, 100.0, 5.0], [2.0, 0.0, 5.0]])
        db = result.with_db_columns()
        assert db.columns == ["freq_hz", "snr_conv", "other", "snr_conv_db"]
        assert db.rows[0][-1] == pytest.approx(20.0)
        assert math.isfinite(db.rows[1][-1])


class TestCsv:
    def test_header_only(self):
        assert format_csv(SweepResult(columns=["freq_hz", "snr_conv"], rows=[])) == "freq_hz,snr_conv\n"

    def test_significant_digits(self):
        assert format_csv(SweepResult(columns=["x"], rows=[[1 / 3]])) == "x\n0.333333333333\n"

    def test_emit_writes_lf_rows(self, tmp_path):
        result = SweepResult(columns=["freq_hz", "snr_conv"], rows=[[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]])
        path = tmp_path / "nested" / "out.csv"
        emit_csv(result, path)
        data = path.read_bytes()
        assert b"\r" not in data
        assert data.count(b"\n") == 4
        assert data.decode() == format_csv(result)

    def test_unwritable_path(self, tmp_path):
        blocker = tmp_path / "file.txt"
        blocker.write_text("x")
        with pytest.raises(OutputError) as exc:
            emit_csv(SweepResult(columns=["x"], rows=[]), blocker / "out.csv")
        assert exc.value.path.endswith("out.csv")


class TestWorkerPool:
    def test_rejects_zero_threads(self):
        with pytest.raises(ValueError):
            WorkerPool(0)

    @pytest.mark.parametrize("threads", [1, 4])
    def test_map_keeps_order(self, threads):
        with WorkerPool(threads) as pool:
            assert pool.map(lambda x: x * x, range(20)) == [x * x for x in range(20)]

    def test_session_reuses_executor(self):
        with WorkerPool(2) as pool:
            with pool.session() as first, pool.session() as second:
                assert first is second
        assert pool.executor is None


class TestRunners:
    def test_fig1a(self, weak_cfg):
        result = run_fig1a(weak_cfg, points=65)
        assert result.columns == [
            "freq_hz",
            "snr_conv_closed",
            "snr_conv_direct",
            "snr_conv_instantaneous",
            "snr_ttd_wc",
        ]
        assert len(result.rows) == 65
        center = result.rows[32]
        assert center[0] == CENTER
        assert center[1] == pytest.approx(32.0, rel=1e-12)
        closed = result.column("snr_conv_closed")
        np.testing.assert_allclose(result.column("snr_conv_direct"), closed, atol=32e-10)
        np.testing.assert_allclose(result.column("snr_conv_instantaneous"), closed, atol=32e-10)
        np.testing.assert_array_equal(result.column("snr_ttd_wc"), 32.0)
        assert result.metadata["runner"] == "fig1a"
        assert result.metadata["config_hash"] == scenario_hash(weak_cfg)

    def test_fig1b(self, weak_cfg):
        result = run_fig1b(weak_cfg, points=8)
        assert result.columns == ["bandwidth_hz", "avg_snr_theorem", "avg_snr_corollary", "avg_snr_numeric"]
        np.testing.assert_allclose(result.column("avg_snr_numeric"), result.column("avg_snr_theorem"), rtol=1e-8)
        first = result.rows[0]
        assert first[0] == pytest.approx(1e-3 * CENTER)
        assert first[2] == pytest.approx(first[1], rel=1e-2)
        assert np.all(np.diff(result.column("avg_snr_theorem")) <= 0)

    def test_fig2(self, small_tight_cfg):
        result = run_fig2(small_tight_cfg, points=17)
        assert result.columns == ["freq_hz", "snr_pop", "snr_td_i", "snr_td_ii", "snr_td_opt", "snr_matched_filter"]
        bound = result.column("snr_matched_filter")
        for name in result.columns[1:-1]:
            assert np.all(result.column(name) <= bound * (1 + 1e-9))
        baseline = result.column("snr_td_opt")
        for name in ("snr_pop", "snr_td_i", "snr_td_ii"):
            assert np.all(result.column(name) <= baseline * (1 + 1e-9)), name
        center = dict(zip(result.columns, result.rows[8]))
        assert center["freq_hz"] == pytest.approx(CENTER)
        assert center["snr_td_ii"] == pytest.approx(center["snr_td_opt"], rel=1e-9)
        assert center["snr_pop"] == pytest.approx(center["snr_td_opt"], rel=1e-9)

    def test_fig3(self, small_tight_cfg):
        result = run_fig3(small_tight_cfg, points=4)
        assert result.columns == [
            "bandwidth_hz",
            "loss_wc_conv_0deg",
            "loss_wc_conv_60deg",
            "loss_tc_pop_0deg",
            "loss_tc_pop_60deg",
        ]
        assert result.column("bandwidth_hz")[-1] == pytest.approx(1.2 * CENTER)
        assert np.all(np.abs(result.column("loss_wc_conv_0deg")) <= 1e-10)
        assert np.all(np.diff(result.column("loss_wc_conv_60deg")) > 0)
        assert "crossing_loss_tc_pop_60deg" in result.metadata
        assert "crossing_wc_conv_60deg_exact" in result.metadata

    def test_fig2_noise_bandwidth_follows_grid(self, small_tight_cfg):
        result = run_fig2(small_tight_cfg, points=5)
        pinned = small_tight_cfg.model_copy(update={"noise": NoiseConfig(noise_bandwidth=3e9)})
        np.testing.assert_allclose(run_fig2(pinned, points=5).rows, result.rows, rtol=1e-12)
        scenario_step = small_tight_cfg.model_copy(
            update={"noise": NoiseConfig(noise_bandwidth=small_tight_cfg.sweep.step)},
        )
        assert run_fig2(scenario_step, points=5).rows[2][1] > 100 * result.rows[2][1]

    def test_non_finite_rows_are_numerical_errors(self, small_tight_cfg, monkeypatch):
        monkeypatch.setattr(fig2_runner, "instantaneous_row", lambda f, cfg, bank: [math.nan] * 5)
        with pytest.raises(NonFiniteResult) as exc:
            run_fig2(small_tight_cfg, points=3)
        assert exc.value.runner == "fig2"
        assert exc.value.row == 0

    @pytest.mark.slow
    def test_tight_crossing_exceeds_weak_crossing(self, tight_cfg):
        cfg = tight_cfg.model_copy(update={"aoa_set": [math.pi / 3]})
        metadata = run_fig3(cfg, points=12, threads=4).metadata
        tc = float(metadata["crossing_loss_tc_pop_60deg"])
        wc = float(metadata["crossing_wc_conv_60deg_exact"])
        assert wc == pytest.approx(1.3e9, abs=0.1e9)
        assert tc > wc

    def test_frequency_sweep(self, small_tight_cfg):
        result = run_sweep(small_tight_cfg, points=5)
        assert result.columns == ["freq_hz", "snr_pop", "snr_td_i", "snr_td_ii", "snr_td_opt", "snr_matched_filter"]
        np.testing.assert_allclose(result.column("freq_hz"), np.linspace(4e9, 16e9, 5))
        assert result.metadata["points"] == "5"

    def test_bandwidth_sweep(self):
        cfg = ScenarioConfig.model_validate(
            {
                "coupling_mode": "tight-default",
                "geometry": {"n_elements": 4},
                "beamformers": ["pop", "td-opt"],
                "sweep": {"kind": "bandwidth", "start": 1e8, "stop": 4e9, "points": 3, "log_scale": True},
            },
        )
        result = run_sweep(cfg)
        assert result.columns == ["bandwidth_hz", "avg_snr_pop", "avg_snr_td_opt", "avg_snr_matched_filter"]
        np.testing.assert_allclose(result.column("bandwidth_hz"), np.geomspace(1e8, 4e9, 3))
        assert np.all(result.column("avg_snr_pop") <= result.column("avg_snr_matched_filter") * (1 + 1e-6))

    def test_output_independent_of_threads(self, small_tight_cfg):
        serial = format_csv(run_fig2(small_tight_cfg, points=9, threads=1))
        parallel = format_csv(run_fig2(small_tight_cfg, points=9, threads=3))
        assert serial == parallel


class TestValidate:
    def test_weak_suite_passes(self, weak_cfg):
        report = validate(weak_cfg, include_tight=False)
        assert report.passed, [check.name for check in report.failures]
        assert {"theorem_vs_quadrature", "wc_crossing_bandwidth", "conv_peak_equals_n"} <= {
            check.name for check in report.checks
        }

    def test_mutated_sinc_is_caught(self, weak_cfg):
        report = validate(weak_cfg, sinc_fn=np.sinc, include_tight=False)
        assert not report.passed
        assert [check.name for check in report.failures] == ["theorem_vs_quadrature"]

    def test_tight_structure_checks(self, small_tight_cfg):
        report = validate(small_tight_cfg, threads=2)
        results = {check.name: check for check in report.checks}
        for name in (
            "steering_unit_modulus",
            "impedance_complex_symmetric",
            "impedance_toeplitz",
            "impedance_passive",
            "noise_hermitian",
            "noise_psd",
            "zero_coupling_reduces_to_diagonal",
            "constant_modulus_weights",
            "matched_filter_bound",
            "optimal_delay_baseline_dominates",
            "td2_equals_baseline_at_center",
            "pop_equals_baseline_at_center",
            "psi_invariance_td2_center_only",
            "squint_loss_scale_invariance",
            "tc_crossing_exceeds_wc",
            "csv_thread_determinism",
        ):
            assert results[name].passed, name
        assert results["wc_crossing_bandwidth"].reported_only
        assert results["tc_crossing_reported_value"].reported_only
        assert results["td1_beats_td2_at_band_edges"].reported_only
        assert not results["optimal_delay_baseline_dominates"].reported_only

    def test_report_counts_reported_only_checks_as_passing(self):
        report = ValidationReport(
            checks=[
                CheckResult(name="a", passed=True, measured=0.0, tolerance=1.0),
                CheckResult(name="b", passed=False, measured=2.0, tolerance=1.0, reported_only=True),
            ],
        )
        assert report.passed
        assert report.failures == []


def _failing_command(error: Exception) -> Command:
    def handler(cfg, args, threads):
        raise error

    return Command(name="fig1a", help="", default_mode=CouplingMode.WEAK_UNITY, handler=handler)


def test_command_requires_callable_handler():
    with pytest.raises(ValidationError):
        Command(name="fig1a", help="", default_mode=CouplingMode.WEAK_UNITY, handler="run_fig1a")
    command = _failing_command(DomainError("x"))
    assert command.default_scenario().is_unity
    with pytest.raises(ValidationError):
        command.name = "other"


class TestCli:
    @pytest.fixture(autouse=True)
    def _isolated_env(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv("SQUINT_THREADS", raising=False)
        monkeypatch.delenv("SQUINT_LOG_LEVEL", raising=False)

    def test_writes_csv(self, tmp_path):
        out = tmp_path / "fig1a.csv"
        assert main(["fig1a", "--points", "9", "--threads", "2", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 10
        assert lines[0].startswith("freq_hz,snr_conv_closed")

    def test_db_columns_on_stdout(self, capsys):
        assert main(["fig1b", "--points", "3", "--db"]) == 0
        header = capsys.readouterr().out.splitlines()[0]
        assert header.endswith("avg_snr_numeric_db")

    def test_config_file(self, tmp_path):
        config = tmp_path / "scenario.toml"
        config.write_text('coupling_mode = "weak-unity"\ngeometry.n_elements = 4\n')
        out = tmp_path / "out.csv"
        assert main(["fig1a", "--config", str(config), "--points", "3", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[2].split(",")[1] == "4"

    def test_invalid_config_exits_2(self, tmp_path):
        config = tmp_path / "scenario.toml"
        config.write_text('coupling_mode = "weak-unity"\nlink.aoa = 2.0\n')
        assert main(["fig1a", "--config", str(config)]) == EXIT_CONFIG_ERROR
        assert main(["fig1a", "--config", str(tmp_path / "missing.toml")]) == EXIT_CONFIG_ERROR

    def test_invalid_environment_exits_2(self, monkeypatch):
        monkeypatch.setenv("SQUINT_THREADS", "0")
        assert main(["fig1a", "--points", "3"]) == EXIT_CONFIG_ERROR

    @pytest.mark.parametrize("error", [NumericalDegeneracy("degenerate"), DomainError("out of domain")])
    def test_numerical_errors_exit_3(self, monkeypatch, error):
        monkeypatch.setattr(commands, "fig1a_command", _failing_command(error))
        assert main(["fig1a"]) == EXIT_NUMERICAL_ERROR

    def test_non_finite_result_exits_3(self, monkeypatch):
        monkeypatch.setattr(fig2_runner, "instantaneous_row", lambda f, cfg, bank: [math.inf] * 5)
        assert main(["fig2", "--points", "3"]) == EXIT_NUMERICAL_ERROR

    def test_output_error_exits_1(self, monkeypatch):
        monkeypatch.setattr(commands, "fig1a_command", _failing_command(OutputError("disk full", path="x")))
        assert main(["fig1a"]) == EXIT_OUTPUT_ERROR

    def test_validation_failure_exits_4(self, monkeypatch, capsys, tmp_path):
        failing = ValidationReport(checks=[CheckResult(name="x", passed=False, measured=1.0, tolerance=0.0)])
        monkeypatch.setattr("src.commands.validation.validate", lambda cfg, threads: failing)
        out = tmp_path / "report.json"
        assert main(["validate", "--out", str(out)]) == 4
        assert ValidationReport.model_validate_json(out.read_text()) == failing
        assert '"passed": false' in capsys.readouterr().out

    def test_rejects_single_point(self):
        with pytest.raises(SystemExit) as exc:
            main(["fig1a", "--points", "1"])
        assert exc.value.code == 2


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SQUINT_THREADS", "3")
    monkeypatch.setenv("SQUINT_LOG_LEVEL", "DEBUG")
    settings = AppSettings.load()
    assert settings.threads == 3
    assert settings.log_level == "DEBUG"
