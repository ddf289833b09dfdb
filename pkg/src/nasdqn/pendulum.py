"""Finite-horizon inverted-pendulum swing-up MDP.

Angle theta is measured from upright, so theta = 0 is the unstable
equilibrium the agent must reach and hold. Dynamics are integrated with
semi-implicit Euler (velocity first, then position with the new
velocity), the angle is wrapped to (-pi, pi] after every step, and the
angular velocity is saturated at +/- omega_max for numerical stability.

Reward is cos(theta) - control_penalty * torque^2, evaluated at the
pre-step angle, so one step from upright with zero torque pays exactly 1.
"""

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

N_ACTIONS = 3


@dataclass(frozen=True)
class PhysicsParams:
    """Physical constants and episode horizon. Defaults are the standard task."""

    mass: float = 1.0
    length: float = 1.0
    gravity: float = 9.8
    dt: float = 0.02
    omega_max: float = 8.0
    tau_max: float = 2.0
    control_penalty: float = 0.001
    horizon: int = 200
    # reset distribution: theta ~ U(-reset_theta_max, reset_theta_max],
    # omega ~ U(-reset_omega_max, reset_omega_max). reset_theta_max = pi is
    # the full-circle convention, but at this torque budget (tau_max is
    # ~1/5 of the peak gravity torque) regaining top energy from hanging
    # takes ~250 steps, more than the whole horizon, which caps mean return
    # far below the 150 convergence threshold. The default band keeps every
    # start dynamically recoverable within the episode; upright starts
    # still fall and must be swung back up.
    reset_theta_max: float = 1.0
    reset_omega_max: float = 1.0

    def __post_init__(self):
        for name in ("mass", "length", "gravity", "dt", "omega_max", "tau_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.control_penalty < 0:
            raise ValueError("control_penalty must be >= 0")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if not 0 < self.reset_theta_max <= math.pi:
            raise ValueError("reset_theta_max must be in (0, pi]")
        if self.reset_omega_max < 0:
            raise ValueError("reset_omega_max must be >= 0")

    @property
    def reward_min(self) -> float:
        """Lowest per-step reward: hanging down under maximum torque."""
        return -1.0 - self.control_penalty * self.tau_max**2


@dataclass
class PendulumState:
    """Raw physical state; theta in (-pi, pi], |omega| <= omega_max."""

    theta: float
    omega: float
    step_count: int = 0


def wrap_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    theta = theta - TWO_PI * math.floor((theta + math.pi) / TWO_PI)
    # floor lands exact multiples of pi on -pi; the interval is half-open at -pi
    if theta <= -math.pi:
        theta = math.pi
    return theta


def observe(state: PendulumState) -> np.ndarray:
    """3-dimensional observation [cos(theta), sin(theta), omega]."""
    return np.array(
        [math.cos(state.theta), math.sin(state.theta), state.omega], dtype=np.float64
    )


def action_to_torque(action: int, params: PhysicsParams) -> float:
    """Map discrete action {0, 1, 2} to torque {-tau_max, 0, +tau_max}."""
    if action not in (0, 1, 2):
        raise ValueError(f"action must be in {{0, 1, 2}}, got {action}")
    return (action - 1) * params.tau_max


def step(state: PendulumState, action: int, params: PhysicsParams):
    """Advance one time step.

    Returns (next_state, observation, reward, done). Velocity updates
    before position (semi-implicit order is mandatory); reward uses the
    pre-step angle.
    """
    if state.step_count >= params.horizon:
        raise RuntimeError(
            f"episode already finished at step {state.step_count} "
            f"(horizon {params.horizon})"
        )
    tau = action_to_torque(action, params)
    accel = (params.gravity / params.length) * math.sin(state.theta) + tau / (
        params.mass * params.length**2
    )
    omega = state.omega + accel * params.dt
    omega = max(-params.omega_max, min(params.omega_max, omega))
    theta = wrap_angle(state.theta + omega * params.dt)

    reward = math.cos(state.theta) - params.control_penalty * tau**2
    next_state = PendulumState(theta, omega, state.step_count + 1)
    done = next_state.step_count >= params.horizon
    return next_state, observe(next_state), reward, done


def reset(rng, params: PhysicsParams):
    """Fresh episode: theta ~ U(-t0, t0], omega ~ U(-w0, w0)."""
    t0 = params.reset_theta_max
    # uniform() covers [lo, hi); negating lands theta in (-t0, t0]
    theta = -rng.uniform(-t0, t0)
    w0 = params.reset_omega_max
    omega = rng.uniform(-w0, w0) if w0 > 0 else 0.0
    state = PendulumState(theta, omega, 0)
    return state, observe(state)


class PendulumEnv:
    """Stateful wrapper over the pure reset/step functions; one per trial."""

    def __init__(self, params: PhysicsParams | None = None):
        self.params = params or PhysicsParams()
        self.state: PendulumState | None = None

    def reset(self, rng) -> np.ndarray:
        self.state, obs = reset(rng, self.params)
        return obs

    def step(self, action: int):
        if self.state is None:
            raise RuntimeError("reset() must be called before step()")
        self.state, obs, reward, done = step(self.state, action, self.params)
        return obs, reward, done
