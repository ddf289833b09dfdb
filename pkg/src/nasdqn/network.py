"""Configurable feedforward Q-network with explicit backpropagation.

A network is a stack of L hidden layers of uniform width plus a linear
output layer. Weight matrices are stored as (fan_in, fan_out), so the
forward pass is h @ W + b. Everything is float64: the finite-difference
gradient checks in the test suite need the headroom.

Training follows plain SGD on the Huber loss (delta = 1): the
output-layer error is the clipped TD error, gradients are averaged over
the minibatch, then clipped element-wise before the descent step. No
momentum, no Adam.
"""

import json
from dataclasses import dataclass

import numpy as np

ACTIVATIONS = ("relu", "tanh", "leaky_relu")
LEAKY_SLOPE = 0.01

HIDDEN_LAYER_CHOICES = (2, 3, 4)
HIDDEN_UNIT_CHOICES = (32, 64, 128)

CHECKPOINT_VERSION = 1


class NonFiniteError(RuntimeError):
    """A forward pass or loss produced NaN/inf; the run must abort."""


@dataclass(frozen=True)
class ArchitectureConfig:
    """A network shape (hidden layers, uniform width, activation)."""

    layers: int
    units: int
    activation: str

    def __post_init__(self):
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        if self.units < 1:
            raise ValueError(f"units must be >= 1, got {self.units}")
        if self.activation not in ACTIVATIONS:
            raise ValueError(
                f"activation must be one of {ACTIVATIONS}, got {self.activation!r}"
            )

    def layer_sizes(self, input_dim: int = 3, output_dim: int = 3) -> list[int]:
        return [input_dim] + [self.units] * self.layers + [output_dim]

    def as_tuple(self) -> tuple:
        return (self.layers, self.units, self.activation)


# The 27-point search space, ordered layers-major, then units, then activation.
SEARCH_SPACE: tuple[ArchitectureConfig, ...] = tuple(
    ArchitectureConfig(layers, units, act)
    for layers in HIDDEN_LAYER_CHOICES
    for units in HIDDEN_UNIT_CHOICES
    for act in ACTIVATIONS
)


def in_search_space(config: ArchitectureConfig) -> bool:
    return config in SEARCH_SPACE


@dataclass
class NetworkParams:
    """Per-layer weight matrices and bias vectors plus the hidden activation.

    weights[i] has shape (n_i, n_{i+1}); the last entry is the linear
    output layer. Consecutive shapes must chain.
    """

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    activation: str

    def copy(self) -> "NetworkParams":
        return NetworkParams(
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.activation,
        )

    def num_parameters(self) -> int:
        return sum(w.size for w in self.weights) + sum(b.size for b in self.biases)


@dataclass
class GradientSet:
    """Gradients shaped exactly like the NetworkParams they came from."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]


@dataclass
class ForwardCache:
    """Activations and pre-activations retained for backpropagation."""

    inputs: list[np.ndarray]  # h(0)..h(L), each (batch, width)
    preacts: list[np.ndarray]  # z(1)..z(L) of the hidden layers
    single: bool = False  # forward saw a 1-D observation


def activation(name: str, z: np.ndarray) -> np.ndarray:
    if name == "relu":
        return np.maximum(z, 0.0)
    if name == "tanh":
        return np.tanh(z)
    if name == "leaky_relu":
        return np.where(z > 0.0, z, LEAKY_SLOPE * z)
    raise ValueError(f"unknown activation {name!r}")


def activation_derivative(name: str, z: np.ndarray) -> np.ndarray:
    # kink convention: relu'(0) = 0, leaky_relu'(0) = LEAKY_SLOPE
    if name == "relu":
        return (z > 0.0).astype(np.float64)
    if name == "tanh":
        t = np.tanh(z)
        return 1.0 - t * t
    if name == "leaky_relu":
        return np.where(z > 0.0, 1.0, LEAKY_SLOPE)
    raise ValueError(f"unknown activation {name!r}")


def init_network(
    config: ArchitectureConfig, rng, input_dim: int = 3, output_dim: int = 3
) -> NetworkParams:
    """Fresh parameters: zero biases, zero-mean normal weights.

    Weight variance is 2/fan_in for the ReLU family (He) and
    2/(fan_in + fan_out) for tanh (Xavier/Glorot). Entries are drawn
    row-major so the stream layout is reproducible.
    """
    sizes = config.layer_sizes(input_dim, output_dim)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        if config.activation == "tanh":
            std = (2.0 / (fan_in + fan_out)) ** 0.5
        else:
            std = (2.0 / fan_in) ** 0.5
        w = np.array(
            [[rng.normal(0.0, std) for _ in range(fan_out)] for _ in range(fan_in)],
            dtype=np.float64,
        )
        weights.append(w)
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return NetworkParams(weights, biases, config.activation)


def forward(params: NetworkParams, x) -> tuple[np.ndarray, ForwardCache]:
    """Q-values for one observation (1-D) or a batch (2-D).

    Returns (q, cache); q matches the input's batch shape. Raises
    NonFiniteError if the output is not finite.
    """
    arr = np.asarray(x, dtype=np.float64)
    single = arr.ndim == 1
    h = arr[np.newaxis, :] if single else arr
    inputs = [h]
    preacts = []
    with np.errstate(over="ignore", invalid="ignore"):  # the isfinite check is the diagnostic
        for w, b in zip(params.weights[:-1], params.biases[:-1]):
            z = h @ w + b
            preacts.append(z)
            h = activation(params.activation, z)
            inputs.append(h)
        q = h @ params.weights[-1] + params.biases[-1]
    if not np.all(np.isfinite(q)):
        raise NonFiniteError("forward pass produced a non-finite Q-value")
    cache = ForwardCache(inputs, preacts, single)
    return (q[0] if single else q), cache


def huber_loss(residual, delta: float = 1.0):
    """0.5 r^2 inside |r| <= delta, linear with slope delta outside."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    r = np.asarray(residual, dtype=np.float64)
    out = np.where(np.abs(r) <= delta, 0.5 * r * r, delta * (np.abs(r) - 0.5 * delta))
    return float(out) if out.ndim == 0 else out


def backward(params: NetworkParams, cache: ForwardCache, actions, td_errors) -> GradientSet:
    """Gradients of the mean Huber loss over the cached forward batch.

    The output-layer error is zero except at each sample's chosen action,
    where it is -clip(td_error, -1, 1) (the Huber derivative for
    delta = 1). Per-sample gradients are averaged over the batch.
    """
    acts = np.atleast_1d(np.asarray(actions, dtype=np.int64))
    tds = np.atleast_1d(np.asarray(td_errors, dtype=np.float64))
    batch = cache.inputs[0].shape[0]
    if acts.shape != (batch,) or tds.shape != (batch,):
        raise ValueError(
            f"expected {batch} actions/td_errors, got {acts.shape}/{tds.shape}"
        )
    n_out = params.weights[-1].shape[1]
    eps = np.zeros((batch, n_out), dtype=np.float64)
    eps[np.arange(batch), acts] = -np.clip(tds, -1.0, 1.0)

    n_layers = len(params.weights)
    dws: list[np.ndarray] = [None] * n_layers
    dbs: list[np.ndarray] = [None] * n_layers
    for i in range(n_layers - 1, -1, -1):
        dws[i] = cache.inputs[i].T @ eps / batch
        dbs[i] = eps.sum(axis=0) / batch
        if i > 0:
            eps = (eps @ params.weights[i].T) * activation_derivative(
                params.activation, cache.preacts[i - 1]
            )
    return GradientSet(dws, dbs)


def apply_update(
    params: NetworkParams,
    grads: GradientSet,
    learning_rate: float,
    clip_threshold: float = 1.0,
) -> NetworkParams:
    """In-place SGD step: p <- p - lr * clip(g, -C, C), element-wise."""
    if learning_rate < 0:
        raise ValueError(f"learning_rate must be >= 0, got {learning_rate}")
    for w, dw in zip(params.weights, grads.weights):
        if w.shape != dw.shape:
            raise ValueError(f"gradient shape {dw.shape} != weight shape {w.shape}")
        w -= learning_rate * np.clip(dw, -clip_threshold, clip_threshold)
    for b, db in zip(params.biases, grads.biases):
        if b.shape != db.shape:
            raise ValueError(f"gradient shape {db.shape} != bias shape {b.shape}")
        b -= learning_rate * np.clip(db, -clip_threshold, clip_threshold)
    return params


def transfer_weights(
    old: NetworkParams, new_config: ArchitectureConfig, rng
) -> NetworkParams:
    """Grow/shrink into a new architecture, keeping overlapping blocks.

    The new network is freshly initialized, then for each hidden layer up
    to the shallower depth the overlapping weight block and bias prefix
    are copied from the old layer. The old output layer is always copied
    (overlapping block) onto the new output layer, whatever the depth
    difference. Weights of the deeper net's extra layers, and the
    non-overlapping strips of widened layers, keep their fresh values.
    """
    input_dim = old.weights[0].shape[0]
    output_dim = old.weights[-1].shape[1]
    new = init_network(new_config, rng, input_dim, output_dim)

    old_hidden = len(old.weights) - 1
    new_hidden = len(new.weights) - 1
    for i in range(min(old_hidden, new_hidden)):
        _copy_block(old.weights[i], new.weights[i])
        _copy_prefix(old.biases[i], new.biases[i])
    _copy_block(old.weights[-1], new.weights[-1])
    _copy_prefix(old.biases[-1], new.biases[-1])
    return new


def _copy_block(src: np.ndarray, dst: np.ndarray) -> None:
    r = min(src.shape[0], dst.shape[0])
    c = min(src.shape[1], dst.shape[1])
    dst[:r, :c] = src[:r, :c]


def _copy_prefix(src: np.ndarray, dst: np.ndarray) -> None:
    n = min(src.shape[0], dst.shape[0])
    dst[:n] = src[:n]


def save_checkpoint(params: NetworkParams, path) -> None:
    """Write a versioned checkpoint: JSON header + row-major float64 matrices.

    Layout (npz archive): `header` holds a JSON string with the format
    version, activation name and layer sizes; `w0..wN` / `b0..bN` hold the
    matrices in layer order.
    """
    header = json.dumps(
        {
            "version": CHECKPOINT_VERSION,
            "activation": params.activation,
            "layer_sizes": [params.weights[0].shape[0]]
            + [w.shape[1] for w in params.weights],
        }
    )
    arrays = {"header": np.array(header)}
    for i, (w, b) in enumerate(zip(params.weights, params.biases)):
        arrays[f"w{i}"] = np.ascontiguousarray(w)
        arrays[f"b{i}"] = np.ascontiguousarray(b)
    np.savez(path, **arrays)


def load_checkpoint(path) -> NetworkParams:
    with np.load(path) as data:
        header = json.loads(str(data["header"]))
        if header["version"] != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {header['version']}")
        n_layers = len(header["layer_sizes"]) - 1
        weights = [data[f"w{i}"].astype(np.float64) for i in range(n_layers)]
        biases = [data[f"b{i}"].astype(np.float64) for i in range(n_layers)]
    return NetworkParams(weights, biases, header["activation"])
