"""Run artifacts: per-episode CSV, architecture history, JSON summaries.

Per-episode CSVs are byte-identical across reruns of the same
(config, seed) pair on one build/platform: floats are written with
Python's shortest round-trip repr and rows are emitted in a fixed order.
Wall-clock times live only in the JSON summaries.
"""

import csv
import json
from pathlib import Path

from . import __version__
from .harness import RunRecord
from .metrics import FINAL_WINDOW, MetricsReport, aggregate_metrics, compute_metrics, rolling_mean

SCHEMA_VERSION = 1

EPISODES_CSV = "episodes.csv"
ARCHITECTURE_CSV = "architecture_history.csv"
CONTROLLER_TRACE_CSV = "controller_trace.csv"
SUMMARY_JSON = "summary.json"
COMPARISON_JSON = "comparison.json"
PLOT_DATA_CSV = "plot_data.csv"


def _config_columns(config) -> list:
    return [config.layers, config.units, config.activation]


def write_episode_csv(record: RunRecord, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seed", "agent", "episode", "return", "epsilon", "layers", "units", "activation"])
        for i, (ret, eps) in enumerate(zip(record.returns, record.epsilons)):
            episode = i + 1
            arch = record.architecture_at(episode)
            writer.writerow(
                [record.seed, record.agent, episode, repr(ret), repr(eps), *_config_columns(arch)]
            )


def write_architecture_csv(record: RunRecord, path) -> None:
    """Active architecture spans: one row per (first_episode, config)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seed", "agent", "first_episode", "layers", "units", "activation"])
        for first_episode, config in record.architecture_spans:
            writer.writerow([record.seed, record.agent, first_episode, *_config_columns(config)])


def write_controller_trace_csv(record: RunRecord, path) -> None:
    """Controller update log: one row per outer-loop step."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "seed", "agent", "update_step", "episode", "controller_epsilon",
                "scored_layers", "scored_units", "scored_activation", "score",
                "score_recorded", "branch",
                "sampled_layers", "sampled_units", "sampled_activation",
                "changed", "buffer_before", "buffer_after",
            ]
        )
        for ev in record.controller_events:
            writer.writerow(
                [
                    record.seed, record.agent, ev.step, ev.episode, repr(ev.epsilon),
                    *_config_columns(ev.scored_config), repr(ev.score),
                    ev.score_recorded, ev.branch,
                    *_config_columns(ev.sampled_config),
                    ev.changed, ev.buffer_before, ev.buffer_after,
                ]
            )


def record_metrics(record: RunRecord) -> MetricsReport | None:
    """Metrics for a finished record, or None when too short to score."""
    if len(record.returns) < FINAL_WINDOW:
        return None
    return compute_metrics(record.returns, record.wall_clock_seconds)


def summary_dict(record: RunRecord, metrics: MetricsReport | None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "agent": record.agent,
        "seed": record.seed,
        "episodes": len(record.returns),
        "total_env_steps": record.total_env_steps,
        "valid": record.valid,
        "error": record.error,
        "wall_clock_seconds": record.wall_clock_seconds,
        "metrics": metrics.to_dict() if metrics else None,
        "architecture_spans": [
            [first, list(config.as_tuple())] for first, config in record.architecture_spans
        ],
        "effective_config": record.effective_config,
    }


def write_run_outputs(record: RunRecord, out_dir) -> MetricsReport | None:
    """Write the full artifact set for one trial; returns its metrics."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_episode_csv(record, out / EPISODES_CSV)
    write_architecture_csv(record, out / ARCHITECTURE_CSV)
    write_controller_trace_csv(record, out / CONTROLLER_TRACE_CSV)
    metrics = record_metrics(record)
    (out / SUMMARY_JSON).write_text(json.dumps(summary_dict(record, metrics), indent=2) + "\n")
    return metrics


def read_returns_csv(path):
    """Load (returns, epsilons) back from a per-episode CSV."""
    returns, epsilons = [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            returns.append(float(row["return"]))
            epsilons.append(float(row["epsilon"]))
    return returns, epsilons


def read_run_dir(run_dir):
    """Recompute metrics for a written run directory."""
    run_dir = Path(run_dir)
    returns, _ = read_returns_csv(run_dir / EPISODES_CSV)
    wall = 0.0
    summary_path = run_dir / SUMMARY_JSON
    if summary_path.exists():
        wall = json.loads(summary_path.read_text()).get("wall_clock_seconds", 0.0)
    return compute_metrics(returns, wall)


def write_plot_data(results: dict, path) -> None:
    """Long-format plot data: one row per (agent, seed, episode)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["agent", "seed", "episode", "return", "rolling_mean"])
        for agent in results:
            for record in results[agent]:
                means = rolling_mean(record.returns)
                for i, ret in enumerate(record.returns):
                    smoothed = "" if i + 1 < 50 else repr(float(means[i]))
                    writer.writerow([agent, record.seed, i + 1, repr(ret), smoothed])


def directional_comparison(per_agent_aggregates: dict) -> dict:
    """Rank agents on each metric (reported, never asserted).

    Higher is better for final_mean and peak_return; lower is better for
    final_std (stability) and episodes_to_convergence (non-converged
    agents rank last).
    """
    rankings = {}
    for metric, reverse in (
        ("final_mean", True),
        ("peak_return", True),
        ("final_std", False),
        ("episodes_to_convergence", False),
    ):
        entries = []
        for agent, agg in per_agent_aggregates.items():
            value = agg[metric]["mean"]
            if metric == "episodes_to_convergence":
                # seeds that never converge push an agent to the bottom
                n_total = agg[metric]["n_seeds"]
                n_conv = agg[metric]["n_converged"]
                sort_key = (n_total - n_conv, value if value is not None else float("inf"))
            else:
                sort_key = value
            entries.append((sort_key, agent, value))
        entries.sort(key=lambda e: e[0], reverse=reverse)
        rankings[metric] = [{"agent": agent, "mean": value} for _, agent, value in entries]
    return rankings


def write_comparison(results: dict, out_dir) -> dict:
    """Aggregate a five-agent study and write comparison.json + plot data.

    Returns the comparison dict. Per-run artifact directories are the
    caller's concern (see the CLI).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    agents_block = {}
    aggregates = {}
    for agent, records in results.items():
        per_seed = []
        reports = []
        for record in records:
            metrics = record_metrics(record)
            if metrics is not None:
                reports.append(metrics)
            per_seed.append(
                {
                    "seed": record.seed,
                    "valid": record.valid,
                    "error": record.error,
                    "metrics": metrics.to_dict() if metrics else None,
                }
            )
        aggregate = aggregate_metrics(reports) if reports else None
        agents_block[agent] = {"per_seed": per_seed, "aggregate": aggregate}
        if aggregate is not None:
            aggregates[agent] = aggregate
    comparison = {
        "schema_version": SCHEMA_VERSION,
        "package_version": __version__,
        "agents": agents_block,
        "directional_comparison": directional_comparison(aggregates) if aggregates else None,
    }
    (out / COMPARISON_JSON).write_text(json.dumps(comparison, indent=2) + "\n")
    write_plot_data(results, out / PLOT_DATA_CSV)
    return comparison
