"""Deterministic generator: range contracts, determinism, moment checks."""

import math

import pytest

from nasdqn.rng import Rng


def test_uniform_unit_range():
    rng = Rng(1)
    for _ in range(10_000):
        v = rng.uniform(0.0, 1.0)
        assert 0.0 <= v < 1.0


def test_uniform_tiny_interval():
    rng = Rng(2)
    for _ in range(1_000):
        v = rng.uniform(2.0, 2.0000001)
        assert 2.0 <= v < 2.0000001


def test_uniform_requires_lo_below_hi():
    rng = Rng(3)
    with pytest.raises(ValueError):
        rng.uniform(1.0, 1.0)


def test_same_seed_same_sequence():
    a, b = Rng(12345), Rng(12345)
    assert [a.uniform(0, 1) for _ in range(100)] == [b.uniform(0, 1) for _ in range(100)]
    assert [a.normal(0, 1) for _ in range(100)] == [b.normal(0, 1) for _ in range(100)]
    assert [a.integer(27) for _ in range(100)] == [b.integer(27) for _ in range(100)]


def test_different_seeds_differ():
    a, b = Rng(1), Rng(2)
    assert [a.next_u64() for _ in range(8)] != [b.next_u64() for _ in range(8)]


def test_child_streams_deterministic_and_independent():
    a = Rng(7).child("policy")
    b = Rng(7).child("policy")
    c = Rng(7).child("minibatch")
    seq_a = [a.next_u64() for _ in range(16)]
    assert seq_a == [b.next_u64() for _ in range(16)]
    assert seq_a != [c.next_u64() for _ in range(16)]


def test_normal_zero_stddev_returns_mean_exactly():
    rng = Rng(4)
    assert rng.normal(3.5, 0.0) == 3.5


def test_normal_rejects_negative_stddev():
    with pytest.raises(ValueError):
        Rng(5).normal(0.0, -1.0)


def test_normal_moments():
    # law-of-large-numbers oracle: 1e5 draws from N(0,1)
    rng = Rng(99)
    n = 100_000
    draws = [rng.normal(0.0, 1.0) for _ in range(n)]
    mean = sum(draws) / n
    var = sum((d - mean) ** 2 for d in draws) / n
    assert abs(mean) < 0.02
    assert abs(var - 1.0) < 0.05


def test_choice_single_element():
    assert Rng(6).choice([1.0]) == 0


def test_choice_deterministic_mass():
    rng = Rng(7)
    for _ in range(100):
        assert rng.choice([0.0, 1.0, 0.0]) == 1


def test_choice_never_returns_zero_weight():
    rng = Rng(8)
    weights = [0.0, 0.3, 0.0, 0.7, 0.0]
    for _ in range(20_000):
        assert rng.choice(weights) in (1, 3)


def test_choice_frequencies():
    # frequency oracle: fair coin over 1e5 draws
    rng = Rng(9)
    n = 100_000
    zeros = sum(1 for _ in range(n) if rng.choice([0.5, 0.5]) == 0)
    assert abs(zeros / n - 0.5) < 0.01


def test_choice_contract_violations():
    rng = Rng(10)
    with pytest.raises(ValueError):
        rng.choice([])
    with pytest.raises(ValueError):
        rng.choice([0.0, 0.0])
    with pytest.raises(ValueError):
        rng.choice([1.0, -0.5])


def test_integer_bounds_and_uniformity():
    rng = Rng(11)
    counts = [0] * 3
    n = 30_000
    for _ in range(n):
        counts[rng.integer(3)] += 1
    for c in counts:
        assert abs(c / n - 1 / 3) < 0.01


def test_state_roundtrip():
    rng = Rng(13)
    rng.uniform(0, 1)
    saved = rng.getstate()
    ahead = [rng.next_u64() for _ in range(5)]
    rng2 = Rng(0)
    rng2.setstate(saved)
    assert [rng2.next_u64() for _ in range(5)] == ahead


def test_uniform_respects_negative_range():
    rng = Rng(14)
    for _ in range(1_000):
        v = rng.uniform(-math.pi, math.pi)
        assert -math.pi <= v < math.pi
