"""Tests for config parsing, the run manifest, determinism, and listing."""

import json

import pytest

from qmlab import cli
from qmlab.errors import ConfigError


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_parse_config_defaults_and_overrides(tmp_path):
    cfg = cli.parse_config(
        write_config(
            tmp_path,
            """
            # larmor with a custom field frequency
            [run]
            experiment = larmor
            seed = 7

            [params]
            omega0 = 2.5
            """,
        )
    )
    assert cfg["experiment"] == "larmor"
    assert cfg["seed"] == 7
    assert cfg["params"]["omega0"] == 2.5
    assert cfg["params"]["gamma_ratio"] == 1.0  # default preserved


def test_parse_config_rejects_unknown_key(tmp_path):
    path = write_config(
        tmp_path,
        """
        [run]
        experiment = larmor
        [params]
        omega_nought = 2.5
        """,
    )
    with pytest.raises(ConfigError, match="omega_nought"):
        cli.parse_config(path)


def test_parse_config_rejects_unknown_section_and_experiment(tmp_path):
    with pytest.raises(ConfigError, match="unknown section"):
        cli.parse_config(write_config(tmp_path, "[setup]\nexperiment = larmor\n"))
    with pytest.raises(ConfigError, match="unknown experiment"):
        cli.parse_config(write_config(tmp_path, "[run]\nexperiment = slits\n"))
    with pytest.raises(ConfigError, match="experiment"):
        cli.parse_config(write_config(tmp_path, "[run]\nseed = 3\n"))


def test_parse_config_rejects_bad_values(tmp_path):
    with pytest.raises(ConfigError, match="non-numeric"):
        cli.parse_config(
            write_config(
                tmp_path, "[run]\nexperiment = larmor\n[params]\nomega0 = fast\n"
            )
        )
    with pytest.raises(ConfigError, match="positive"):
        cli.parse_config(
            write_config(
                tmp_path, "[run]\nexperiment = larmor\n[params]\nomega0 = -2\n"
            )
        )


def test_double_slit_narrow_slit_is_config_error(tmp_path):
    # slit_width below 4*dy must be rejected before any propagation
    path = write_config(
        tmp_path,
        "[run]\nexperiment = double-slit\n[params]\nslit_width = 0.5\n",
    )
    cfg = cli.parse_config(path)
    with pytest.raises(ConfigError, match="slit_width"):
        cli.EXPERIMENTS["double-slit"].runner(cfg["params"], 0, tmp_path)


def test_run_writes_manifest_and_artifacts(tmp_path):
    path = write_config(
        tmp_path, "[run]\nexperiment = larmor\nseed = 3\n[params]\nsamples = 200\n"
    )
    out = tmp_path / "out"
    manifest = cli.run(path, out=out)
    assert manifest["passed"]
    assert manifest["experiment"] == "larmor"
    assert "larmor.csv" in manifest["artifacts"]
    on_disk = json.loads((out / "manifest.json").read_text())
    assert on_disk["seed"] == 3
    assert {a["name"] for a in on_disk["assertions"]} == {
        a["name"] for a in manifest["assertions"]
    }
    header = (out / "larmor.csv").read_text().splitlines()[0]
    assert header == "t,mu_x,mu_y,mu_z"


def test_run_seed_override_and_determinism(tmp_path):
    path = write_config(
        tmp_path,
        "[run]\nexperiment = epr\n[params]\nn_samples = 20000\n"
        "born_pairs = 3\nborn_samples = 20000\n",
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    m1 = cli.run(path, seed=42, out=out1)
    m2 = cli.run(path, seed=42, out=out2)
    assert m1["seed"] == m2["seed"] == 42
    for name in m1["artifacts"]:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
        assert m1["artifacts"][name] == m2["artifacts"][name]
    out3 = tmp_path / "c"
    m3 = cli.run(path, seed=43, out=out3)
    assert any(
        (out1 / name).read_bytes() != (out3 / name).read_bytes()
        for name in m1["artifacts"]
    )


def test_list_experiments_full_and_filtered():
    assert len(cli.list_experiments()) == 10
    spin_rows = cli.list_experiments("spin")
    assert len(spin_rows) == 3
    assert {name for name, _ in spin_rows} == {"larmor", "spin-spectrum", "two-spin"}
    assert cli.list_experiments("warp drive") == []


def test_main_list_exit_code(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 10
    assert cli.main(["list", "nothing-matches-this"]) == 0


def test_main_run_exit_codes(tmp_path, capsys):
    path = write_config(
        tmp_path, "[run]\nexperiment = two-spin\nout = " + str(tmp_path / "ts") + "\n"
    )
    assert cli.main(["run", str(path)]) == 0
    bad = write_config(tmp_path, "[run]\nexperiment = nope\n", name="bad.cfg")
    assert cli.main(["run", str(bad)]) == 2


def test_main_failing_assertion_exit_code(tmp_path, monkeypatch, capsys):
    # inject an experiment whose assertion always fails
    from qmlab.experiments import Experiment

    def always_fails(params, seed, outdir):
        (outdir / "trace.csv").write_text("a\n1\n", encoding="utf-8")
        return [{"name": "impossible", "value": 1.0, "threshold": "== 0", "passed": False}]

    broken = Experiment("broken", "always fails", always_fails, {})
    monkeypatch.setitem(cli.EXPERIMENTS, "broken", broken)
    path = write_config(
        tmp_path, "[run]\nexperiment = broken\nout = " + str(tmp_path / "b") + "\n"
    )
    assert cli.main(["run", str(path)]) == 1
    err = capsys.readouterr().err
    assert "impossible" in err  # first failing assertion is named
