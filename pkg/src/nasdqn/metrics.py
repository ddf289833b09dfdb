"""Run metrics: final performance, sample efficiency, peak, stability.

Convergence is the first episode whose 50-episode rolling mean return
reaches 150. Final mean/std are computed over the raw returns of the
last 100 episodes (population std, no smoothing).
"""

from dataclasses import asdict, dataclass

import numpy as np

ROLLING_WINDOW = 50
CONVERGENCE_THRESHOLD = 150.0
FINAL_WINDOW = 100


@dataclass(frozen=True)
class MetricsReport:
    final_mean: float
    final_std: float
    episodes_to_convergence: int | None  # None = never converged
    peak_return: float
    wall_clock_seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


def rolling_mean(returns, window: int = ROLLING_WINDOW) -> np.ndarray:
    """Trailing window means; entry i covers episodes i-window+2..i+1 (1-based).

    Only defined from episode `window` on, so the first window-1 entries
    are NaN.
    """
    r = np.asarray(returns, dtype=np.float64)
    out = np.full(r.shape, np.nan)
    if len(r) >= window:
        csum = np.concatenate(([0.0], np.cumsum(r)))
        out[window - 1:] = (csum[window:] - csum[:-window]) / window
    return out


def convergence_episode(
    returns,
    threshold: float = CONVERGENCE_THRESHOLD,
    window: int = ROLLING_WINDOW,
) -> int | None:
    """First 1-based episode whose trailing rolling mean reaches threshold."""
    means = rolling_mean(returns, window)
    hits = np.nonzero(means >= threshold)[0]
    return int(hits[0]) + 1 if hits.size else None


def compute_metrics(returns, wall_clock_seconds: float = 0.0) -> MetricsReport:
    """Metrics for one completed trial (requires >= 100 episodes)."""
    r = np.asarray(returns, dtype=np.float64)
    if len(r) < FINAL_WINDOW:
        raise ValueError(f"need at least {FINAL_WINDOW} episodes, got {len(r)}")
    tail = r[-FINAL_WINDOW:]
    return MetricsReport(
        final_mean=float(tail.mean()),
        final_std=float(tail.std()),
        episodes_to_convergence=convergence_episode(r),
        peak_return=float(r.max()),
        wall_clock_seconds=float(wall_clock_seconds),
    )


METRIC_NAMES = ("final_mean", "final_std", "episodes_to_convergence", "peak_return", "wall_clock_seconds")


def aggregate_metrics(reports: list[MetricsReport]) -> dict:
    """Mean/std of each metric across seeds.

    Convergence aggregates over the seeds that converged, with the count
    reported alongside; if no seed converged the mean/std are None.
    """
    out: dict = {}
    for name in METRIC_NAMES:
        values = [getattr(rep, name) for rep in reports]
        if name == "episodes_to_convergence":
            converged = [v for v in values if v is not None]
            out[name] = {
                "mean": float(np.mean(converged)) if converged else None,
                "std": float(np.std(converged)) if converged else None,
                "n_converged": len(converged),
                "n_seeds": len(values),
            }
        else:
            arr = np.asarray(values, dtype=np.float64)
            out[name] = {"mean": float(arr.mean()), "std": float(arr.std())}
    return out
