"""Analytic backprop vs central finite differences of the actual loss."""

import numpy as np
import pytest

from nasdqn.network import ArchitectureConfig, backward, forward
from nasdqn.rng import Rng

from gradcheck_util import check_architecture, sample_checkable_point


@pytest.mark.parametrize("act", ["relu", "tanh", "leaky_relu"])
def test_small_architecture_full_gradient_check(act):
    # every coordinate of a (2, 32) net, several points per activation
    rng = Rng(101)
    worst = check_architecture(ArchitectureConfig(2, 32, act), rng, n_points=3)
    assert worst <= 1.0


def test_deep_wide_architecture_sampled_check():
    rng = Rng(102)
    worst = check_architecture(ArchitectureConfig(4, 128, "tanh"), rng, n_points=2)
    assert worst <= 1.0


def test_gradients_follow_clip_saturation():
    # beyond the clip bound the analytic gradient freezes at the bound,
    # so a saturated and an exactly-at-bound td produce identical grads
    rng = Rng(103)
    params, x, action, _ = sample_checkable_point(ArchitectureConfig(2, 32, "tanh"), rng)
    _, cache = forward(params, x)
    at_bound = backward(params, cache, action, 1.0)
    saturated = backward(params, cache, action, 3.0)
    for g1, g2 in zip(at_bound.weights, saturated.weights):
        assert np.array_equal(g1, g2)


def test_hand_net_gradient_check():
    # 2 hidden layers x 4 units, outside the search space on purpose
    rng = Rng(104)
    worst = check_architecture(ArchitectureConfig(2, 4, "relu"), rng, n_points=5)
    assert worst <= 1.0


def test_fd_detects_wrong_gradients():
    # sanity on the oracle itself: corrupting one gradient entry must trip it
    rng = Rng(105)
    params, x, action, td = sample_checkable_point(ArchitectureConfig(2, 4, "relu"), rng)
    q, cache = forward(params, x)
    grads = backward(params, cache, action, td)
    grads.weights[0][0, 0] += 0.5
    worst = 0.0
    from gradcheck_util import _coordinates, _fd_coordinate, ATOL, RTOL

    target = float(q[action]) + td
    for idx in _coordinates(params.weights[0], None, None):
        fd = _fd_coordinate(params, x, action, target, params.weights[0], idx)
        a = float(grads.weights[0][idx])
        worst = max(worst, abs(a - fd) / (ATOL + RTOL * max(abs(a), abs(fd))))
    assert worst > 1.0
