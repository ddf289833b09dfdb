"""CLI surface: run / compare / metrics subcommands."""

import json

import pytest

from nasdqn.cli import main


@pytest.fixture
def config_file(tmp_path, small_config):
    cfg = small_config.replace(episodes=110, seeds=(1,))
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg.to_dict()))
    return path


def test_run_command(tmp_path, config_file, capsys):
    out = tmp_path / "run_out"
    code = main(
        [
            "run",
            "--agent", "fixed_small",
            "--seed", "1",
            "--config", str(config_file),
            "--out", str(out),
            "--quiet",
        ]
    )
    assert code == 0
    assert (out / "episodes.csv").exists()
    assert (out / "architecture_history.csv").exists()
    assert (out / "summary.json").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["agent"] == "fixed_small"
    assert summary["episodes"] == 110


def test_run_episode_override(tmp_path, config_file):
    out = tmp_path / "short"
    code = main(
        [
            "run", "--agent", "fixed_small", "--seed", "2",
            "--episodes", "12",
            "--config", str(config_file), "--out", str(out), "--quiet",
        ]
    )
    assert code == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["episodes"] == 12
    assert summary["metrics"] is None  # too short to score


def test_metrics_command(tmp_path, config_file, capsys):
    out = tmp_path / "for_metrics"
    main(["run", "--agent", "fixed_small", "--seed", "1",
          "--config", str(config_file), "--out", str(out), "--quiet"])
    capsys.readouterr()
    code = main(["metrics", "--in", str(out)])
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert set(printed) == {
        "final_mean", "final_std", "episodes_to_convergence",
        "peak_return", "wall_clock_seconds",
    }


def test_compare_command(tmp_path, small_config, capsys, monkeypatch):
    monkeypatch.setenv("NASDQN_MAX_WORKERS", "2")
    cfg = small_config.replace(episodes=10, seeds=(1,))
    config_path = tmp_path / "cmp.json"
    config_path.write_text(json.dumps(cfg.to_dict()))
    out = tmp_path / "cmp_out"
    code = main(["compare", "--config", str(config_path), "--out", str(out)])
    assert code == 0
    comparison = json.loads((out / "comparison.json").read_text())
    assert set(comparison["agents"]) == {
        "fixed_small", "fixed_medium", "fixed_large", "random_nas", "nas_dqn",
    }
    for agent in comparison["agents"]:
        run_dir = out / "runs" / f"{agent}_seed1"
        assert (run_dir / "episodes.csv").exists()
    assert (out / "plot_data.csv").exists()


def test_invalid_run_exits_nonzero(tmp_path, small_config):
    cfg = small_config.replace(
        agent="fixed_small",
        hyper=small_config.hyper.__class__(learning_rate=1e200, warmup=16, batch_size=16),
    )
    config_path = tmp_path / "bad.json"
    config_path.write_text(json.dumps(cfg.to_dict()))
    code = main(
        ["run", "--seed", "1", "--config", str(config_path),
         "--out", str(tmp_path / "bad_out"), "--quiet"]
    )
    assert code == 1
