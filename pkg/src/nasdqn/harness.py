"""Trial execution: the two-level training loop and the five-agent study.

A trial owns all of its state. One master RNG per (config, seed) pair is
split into five child streams (environment resets, policy exploration,
minibatch sampling, weight init, controller sampling), so replaying a
trial reproduces it exactly and an architecture switch cannot shift the
environment's sequence.

The outer loop fires every `update_interval` episodes for the searching
agents: score the finished interval, record it with the controller
(random mode skips the recording), sample the next architecture, and
only on a genuine change rebuild the networks with weight transfer and
prune the replay buffer to a quarter.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .agent import DqnAgent
from .config import AGENT_KINDS, FIXED_CONFIGS, ExperimentConfig
from .controller import NasController
from .network import ArchitectureConfig, NonFiniteError
from .pendulum import PendulumEnv
from .replay import ReplayMemory, Transition
from .rng import Rng

STREAM_ENV = "env-reset"
STREAM_POLICY = "policy"
STREAM_MINIBATCH = "minibatch"
STREAM_INIT = "weight-init"
STREAM_CONTROLLER = "controller"

MAX_WORKERS_ENV_VAR = "NASDQN_MAX_WORKERS"


@dataclass(frozen=True)
class ControllerEvent:
    """One architecture-update step of the outer loop."""

    step: int  # 1-based update index k
    episode: int  # episode after which the update fired
    epsilon: float  # controller exploration rate used for this draw
    scored_config: ArchitectureConfig
    score: float  # mean return of the finished interval
    score_recorded: bool  # False in random mode
    branch: str
    sampled_config: ArchitectureConfig
    changed: bool
    buffer_before: int
    buffer_after: int


@dataclass
class RunRecord:
    """Everything a single trial produced."""

    seed: int
    agent: str
    returns: list[float]
    epsilons: list[float]  # policy epsilon in effect during each episode
    architecture_spans: list[tuple[int, ArchitectureConfig]]  # (first episode, config)
    controller_events: list[ControllerEvent] = field(default_factory=list)
    total_env_steps: int = 0
    wall_clock_seconds: float = 0.0
    effective_config: dict = field(default_factory=dict)
    valid: bool = True
    error: str | None = None

    def architecture_at(self, episode: int) -> ArchitectureConfig:
        """Config active during a 1-based episode."""
        current = self.architecture_spans[0][1]
        for start, config in self.architecture_spans:
            if start > episode:
                break
            current = config
        return current


def _initial_architecture(cfg: ExperimentConfig, controller, ctrl_rng):
    if controller is not None:
        return controller.sample_architecture(ctrl_rng)
    return FIXED_CONFIGS[cfg.agent]


def _make_controller(cfg: ExperimentConfig):
    if not cfg.uses_controller():
        return None
    c = cfg.controller
    return NasController(
        mode=cfg.controller_mode(),
        capacity=c.capacity,
        epsilon_start=c.epsilon_start,
        epsilon_decay=c.epsilon_decay,
        epsilon_min=c.epsilon_min,
        temperature=c.temperature,
        stability_eps=c.stability_eps,
    )


def run_trial(cfg: ExperimentConfig, seed: int, progress=None) -> RunRecord:
    """Execute one complete trial; deterministic given (cfg, seed).

    `progress`, when given, is called as progress(episode, episode_return)
    after every episode. A non-finite loss or state aborts the trial and
    returns the partial record flagged invalid.
    """
    t0 = time.perf_counter()
    master = Rng(seed)
    env_rng = master.child(STREAM_ENV)
    policy_rng = master.child(STREAM_POLICY)
    batch_rng = master.child(STREAM_MINIBATCH)
    init_rng = master.child(STREAM_INIT)
    ctrl_rng = master.child(STREAM_CONTROLLER)

    env = PendulumEnv(cfg.physics)
    mem = ReplayMemory(cfg.buffer_capacity)
    controller = _make_controller(cfg)
    current = _initial_architecture(cfg, controller, ctrl_rng)
    agent = DqnAgent(current, cfg.hyper, init_rng)

    record = RunRecord(
        seed=seed,
        agent=cfg.agent,
        returns=[],
        epsilons=[],
        architecture_spans=[(1, current)],
        effective_config=cfg.to_dict(),
    )
    interval_returns: list[float] = []
    try:
        for episode in range(1, cfg.episodes + 1):
            obs = env.reset(env_rng)
            record.epsilons.append(agent.epsilon)
            episode_return = 0.0
            done = False
            while not done:
                action = agent.select_action(obs, policy_rng)
                next_obs, reward, done = env.step(action)
                mem.push(Transition(obs, action, reward, next_obs, done))
                obs = next_obs
                episode_return += reward
                agent.train_step(mem, batch_rng)
            record.returns.append(episode_return)
            agent.decay_epsilon()
            if progress is not None:
                progress(episode, episode_return)

            if controller is None:
                continue
            interval_returns.append(episode_return)
            if len(interval_returns) < cfg.update_interval:
                continue
            score = float(np.mean(interval_returns))
            controller.update_score(current, score)
            epsilon_k = controller.epsilon
            sampled = controller.sample_architecture(ctrl_rng)
            changed = sampled != current
            buffer_before = len(mem)
            if changed:
                agent.rebuild_with_architecture(sampled, init_rng, mem)
                if episode < cfg.episodes:
                    record.architecture_spans.append((episode + 1, sampled))
            record.controller_events.append(
                ControllerEvent(
                    step=len(record.controller_events) + 1,
                    episode=episode,
                    epsilon=epsilon_k,
                    scored_config=current,
                    score=score,
                    score_recorded=controller.mode == "learned",
                    branch=controller.last_branch,
                    sampled_config=sampled,
                    changed=changed,
                    buffer_before=buffer_before,
                    buffer_after=len(mem),
                )
            )
            current = sampled
            controller.decay_exploration()
            interval_returns = []
    except NonFiniteError as exc:
        record.valid = False
        record.error = str(exc)
    record.total_env_steps = agent.steps
    record.wall_clock_seconds = time.perf_counter() - t0
    return record


def _run_task(task) -> RunRecord:
    cfg, seed = task
    return run_trial(cfg, seed)


def default_max_workers(n_tasks: int) -> int:
    """Parallelism cap: the env var wins, else one worker per CPU."""
    env = os.environ.get(MAX_WORKERS_ENV_VAR)
    if env is not None:
        return max(1, int(env))
    return max(1, min(n_tasks, os.cpu_count() or 1))


def compare(
    cfg: ExperimentConfig,
    agents: tuple[str, ...] = AGENT_KINDS,
    max_workers: int | None = None,
    progress=None,
) -> dict[str, list[RunRecord]]:
    """Run every agent kind over every configured seed.

    Trials share nothing, so they may run in parallel processes; results
    are merged in deterministic (agent, seed) order afterwards.
    `progress`, when given, is called as progress(agent, seed, record)
    as each trial completes.
    """
    tasks = [(cfg.replace(agent=kind), seed) for kind in agents for seed in cfg.seeds]
    workers = max_workers if max_workers is not None else default_max_workers(len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = []
        for task in tasks:
            records.append(_run_task(task))
            if progress is not None:
                progress(task[0].agent, task[1], records[-1])
    results: dict[str, list[RunRecord]] = {kind: [] for kind in agents}
    for (task_cfg, _), record in zip(tasks, records):
        results[task_cfg.agent].append(record)
    if workers > 1 and progress is not None:
        for (task_cfg, seed), record in zip(tasks, records):
            progress(task_cfg.agent, seed, record)
    return results
