import json

import numpy as np
import pytest

from memstress.cli import main
from memstress.experiments import (
    EXPERIMENTS,
    Check,
    ConfigError,
    ExperimentConfig,
    ExperimentSpec,
    Outcome,
    _parse_n_range,
    load_config_file,
    run,
)
from memstress.reporting import write_csv
from memstress.spectral import NumericalError


def test_parse_n_range():
    assert _parse_n_range("16..256") == [16, 32, 64, 128, 256]
    assert _parse_n_range("3,4") == [3, 4]
    assert _parse_n_range("5") == [5]
    with pytest.raises(ConfigError):
        _parse_n_range("a..b")


def test_load_config_file(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text(
        "# comment\n"
        "experiment = ising-splitting\n"
        "N_range = 3,4\n"
        "delta = 0.1\n"
        "seed = 7\n"
        "svg = true\n"
    )
    values = load_config_file(cfg)
    assert values == {
        "experiment": "ising-splitting",
        "N_range": [3, 4],
        "delta": 0.1,
        "seed": 7,
        "svg": True,
    }


def test_load_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("no_equals_here\n")
    with pytest.raises(ConfigError):
        load_config_file(bad)
    bad.write_text("bogus_key = 3\n")
    with pytest.raises(ConfigError, match="bogus_key"):
        load_config_file(bad)
    bad.write_text("delta = banana\n")
    with pytest.raises(ConfigError, match="delta"):
        load_config_file(bad)


def test_config_validation_names_field():
    with pytest.raises(ConfigError, match="experiment"):
        ExperimentConfig(experiment="nope").validated()
    with pytest.raises(ConfigError, match="delta"):
        ExperimentConfig(experiment="duality-verify", delta=-1.0).validated()
    with pytest.raises(ConfigError, match="threshold"):
        ExperimentConfig(experiment="duality-verify", threshold=2.0).validated()
    with pytest.raises(ConfigError, match="t_factor"):
        ExperimentConfig(experiment="duality-verify", t_factor=1.0).validated()
    with pytest.raises(ConfigError, match="precision"):
        ExperimentConfig(experiment="duality-verify", precision="quad").validated()
    with pytest.raises(ConfigError, match="seed"):
        ExperimentConfig(experiment="duality-verify", seed=-1).validated()
    with pytest.raises(ConfigError, match="N_range"):
        ExperimentConfig(experiment="duality-verify", N_range=[1]).validated()


def test_precision_parsing():
    assert ExperimentConfig(experiment="duality-verify").digits() == 60
    cfg = ExperimentConfig(experiment="duality-verify", precision="extended:80")
    assert cfg.digits() == 80
    assert ExperimentConfig(experiment="x", precision="extended:4").digits() is None


def test_write_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_csv(path, ["a", "b"], [])
    assert path.read_bytes() == b"a,b\r\n"


def test_csv_17_digit_roundtrip(tmp_path):
    path = tmp_path / "x.csv"
    value = 0.1234567890123456789
    write_csv(path, ["v"], [(value,)])
    text = path.read_text().splitlines()[1]
    assert float(text) == value


def _stub_spec(func):
    return ExperimentSpec(func, (3,), "stub")


def test_run_exit_codes_with_stub(tmp_path, monkeypatch):
    def failing(cfg):
        return Outcome(tables={"": (["x"], [(1.0,)])}, summary={}, checks=[
            Check("always_fails", 0.0, "> 1", False)
        ])

    def broken(cfg):
        raise NumericalError("deliberate")

    monkeypatch.setitem(EXPERIMENTS, "stub-fail", _stub_spec(failing))
    monkeypatch.setitem(EXPERIMENTS, "stub-broken", _stub_spec(broken))
    code = run(ExperimentConfig(experiment="stub-fail", output_dir=str(tmp_path)))
    assert code == 2
    with pytest.raises(NumericalError):
        run(ExperimentConfig(experiment="stub-broken", output_dir=str(tmp_path)))


def test_cli_list_and_exit_codes(tmp_path, capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in EXPERIMENTS:
        assert name in out
    # config error paths return 1
    assert main(["run", "--experiment", "does-not-exist", "--out", str(tmp_path)]) == 1
    assert main(["run", "--out", str(tmp_path)]) == 1


def test_cli_runs_ising_splitting_deterministically(tmp_path):
    cfg = tmp_path / "exp.cfg"
    out1 = tmp_path / "r1"
    out2 = tmp_path / "r2"
    cfg.write_text("experiment = ising-splitting\nN_range = 3\ndelta = 0.1\n")
    assert main(["run", "--config", str(cfg), "--out", str(out1), "--seed", "5"]) == 0
    assert main(["run", "--config", str(cfg), "--out", str(out2), "--seed", "5"]) == 0
    main_csv = (out1 / "ising_splitting.csv").read_bytes()
    assert main_csv == (out2 / "ising_splitting.csv").read_bytes()
    contrast = (out1 / "ising_splitting_contrast.csv").read_bytes()
    assert contrast == (out2 / "ising_splitting_contrast.csv").read_bytes()
    summary = json.loads((out1 / "ising_splitting_summary.json").read_text())
    assert summary["experiment"] == "ising-splitting"
    assert summary["config"]["seed"] == 5
    assert summary["all_passed"] is True
    assert "wall_clock_seconds" in summary
    header = main_csv.decode().splitlines()[0]
    assert header == "N,delta,splitting"


def test_cli_svg_emission(tmp_path):
    out = tmp_path / "plots"
    code = main([
        "run", "--experiment", "ising-plateau", "--out", str(out), "--svg",
    ])
    assert code == 0
    svgs = list(out.glob("*.svg"))
    assert svgs, "expected at least one SVG artifact"
    body = svgs[0].read_text()
    assert body.startswith("<svg") and "polyline" in body


def test_trace_schema_toric_transfer(tmp_path):
    out = tmp_path / "tt"
    code = run(ExperimentConfig(experiment="toric-transfer", N_range=[4, 6], output_dir=str(out)))
    assert code == 0
    trace = (out / "toric_transfer_trace.csv").read_text().splitlines()
    assert trace[0] == "t,fidelity"
    data = np.loadtxt((out / "toric_transfer_trace.csv"), delimiter=",", skiprows=1)
    assert data.shape[1] == 2
