"""Command-line interface: run one trial, compare all agents, score a run."""

import argparse
import json
import sys
from pathlib import Path

from .config import AGENT_KINDS, ExperimentConfig, load_config
from .harness import compare, default_max_workers, run_trial
from .reports import read_run_dir, write_comparison, write_run_outputs

PROGRESS_EVERY = 100  # episodes


def _load_base_config(path) -> ExperimentConfig:
    return load_config(path) if path else ExperimentConfig()


def _progress_printer(total: int):
    def progress(episode: int, episode_return: float) -> None:
        if episode % PROGRESS_EVERY == 0 or episode == total:
            print(f"episode {episode}/{total}  return {episode_return:.1f}", file=sys.stderr)

    return progress


def cmd_run(args) -> int:
    cfg = _load_base_config(args.config)
    overrides = {}
    if args.agent:
        overrides["agent"] = args.agent
    if args.episodes:
        overrides["episodes"] = args.episodes
    if overrides:
        cfg = cfg.replace(**overrides)
    seed = args.seed if args.seed is not None else cfg.seeds[0]

    progress = None if args.quiet else _progress_printer(cfg.episodes)
    record = run_trial(cfg, seed, progress=progress)
    metrics = write_run_outputs(record, args.out)
    print(f"wrote {args.out} (agent={cfg.agent} seed={seed} episodes={len(record.returns)})")
    if metrics is not None:
        print(json.dumps(metrics.to_dict(), indent=2))
    if not record.valid:
        print(f"trial invalid: {record.error}", file=sys.stderr)
        return 1
    return 0


def cmd_compare(args) -> int:
    cfg = _load_base_config(args.config)
    n_tasks = len(AGENT_KINDS) * len(cfg.seeds)
    workers = default_max_workers(n_tasks)
    print(
        f"running {n_tasks} trials ({len(AGENT_KINDS)} agents x {len(cfg.seeds)} seeds, "
        f"{workers} workers)",
        file=sys.stderr,
    )
    results = compare(cfg, max_workers=workers)

    out = Path(args.out)
    invalid = 0
    for agent, records in results.items():
        for record in records:
            write_run_outputs(record, out / "runs" / f"{agent}_seed{record.seed}")
            if not record.valid:
                invalid += 1
                print(f"invalid trial: {agent} seed {record.seed}: {record.error}", file=sys.stderr)
    comparison = write_comparison(results, out)

    for metric, ranking in (comparison["directional_comparison"] or {}).items():
        ordered = ", ".join(
            f"{row['agent']}={row['mean']:.1f}" if row["mean"] is not None else f"{row['agent']}=n/a"
            for row in ranking
        )
        print(f"{metric}: {ordered}")
    print(f"wrote {out / 'comparison.json'}")
    return 1 if invalid else 0


def cmd_metrics(args) -> int:
    try:
        metrics = read_run_dir(args.run_dir)
    except (OSError, ValueError) as exc:
        print(f"cannot score {args.run_dir}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(metrics.to_dict(), indent=2))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nasdqn",
        description="Architecture-searching DQN on pendulum swing-up: run trials, "
        "compare the five agents, and score finished runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one trial and write its artifacts")
    run_p.add_argument("--agent", choices=AGENT_KINDS, help="agent kind (default from config)")
    run_p.add_argument("--seed", type=int, help="master seed (default: first config seed)")
    run_p.add_argument("--episodes", type=int, help="override episode count")
    run_p.add_argument("--config", type=Path, help="JSON config file")
    run_p.add_argument("--out", type=Path, required=True, help="output directory")
    run_p.add_argument("--quiet", action="store_true", help="suppress progress lines")
    run_p.set_defaults(func=cmd_run)

    cmp_p = sub.add_parser("compare", help="run all five agents over the configured seeds")
    cmp_p.add_argument("--config", type=Path, help="JSON config file")
    cmp_p.add_argument("--out", type=Path, required=True, help="output directory")
    cmp_p.set_defaults(func=cmd_compare)

    met_p = sub.add_parser("metrics", help="recompute metrics for a written run directory")
    met_p.add_argument("--in", dest="run_dir", type=Path, required=True, help="run directory")
    met_p.set_defaults(func=cmd_metrics)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
