import numpy as np
import pytest

from dcckp.dynamics import (
    build_schedule,
    default_clamp_bounds,
    default_initial_capacity,
    schedule_csv_rows,
)
from dcckp.model import generate_instance


def test_constant_before_warmup():
    sched = build_schedule(5000, 100, 500, 10_000, 20_000, 1, 1_000_000, seed=1)
    assert sched.capacity_at(0) == 5000
    assert sched.capacity_at(9_999) == 5000
    assert sched.change_iters[0] == 10_000


def test_change_takes_effect_at_its_index():
    sched = build_schedule(5000, 100, 500, 1000, 5000, 1, 1_000_000, seed=2)
    first = int(sched.change_iters[0])
    assert first == 1000
    assert sched.capacity_at(first - 1) == 5000
    assert sched.capacity_at(first) == int(sched.change_caps[0])


def test_unit_magnitude_steps():
    sched = build_schedule(100, 10, 1, 0, 2000, 1, 10 ** 6, seed=3)
    caps = sched.capacities()
    assert np.abs(np.diff(caps)).max() <= 1


def test_deterministic():
    a = build_schedule(5000, 100, 500, 1000, 9000, 1, 10 ** 6, seed=17)
    b = build_schedule(5000, 100, 500, 1000, 9000, 1, 10 ** 6, seed=17)
    assert np.array_equal(a.change_caps, b.change_caps)
    assert np.array_equal(a.change_iters, b.change_iters)


def test_capacity_at_matches_linear_replay():
    rng = np.random.default_rng(0)
    for trial in range(20):
        warmup = int(rng.integers(0, 50))
        total = int(rng.integers(warmup + 1, 400))
        tau = int(rng.integers(1, 30))
        sched = build_schedule(500, tau, 50, warmup, total, 1, 2000,
                               seed=trial)
        # naive replay oracle
        cap = sched.c0
        replay = []
        changes = dict(zip(sched.change_iters.tolist(), sched.change_caps.tolist()))
        for i in range(total):
            if i in changes:
                cap = changes[i]
            replay.append(cap)
        for i in range(total):
            assert sched.capacity_at(i) == replay[i]
        assert np.array_equal(sched.capacities(), np.array(replay))


def test_change_count_formula():
    rng = np.random.default_rng(1)
    for trial in range(200):
        warmup = int(rng.integers(0, 100))
        total = int(rng.integers(warmup + 1, 1000))
        tau = int(rng.integers(1, 60))
        sched = build_schedule(100, tau, 5, warmup, total, 1, 10 ** 6, seed=trial)
        expected = (total - warmup - 1) // tau + 1
        assert sched.change_count == expected


def test_clamp_bounds_hold():
    for seed in range(1000):
        sched = build_schedule(10, 1, 30, 0, 50, 5, 40, seed=seed)
        caps = sched.change_caps
        assert caps.min() >= 5 and caps.max() <= 40
    # hugging a narrow clamp range must record clamp events
    sched = build_schedule(10, 1, 30, 0, 200, 5, 40, seed=0)
    assert sched.clamp_count > 0


def test_pinned_clamp_gives_static_capacity():
    sched = build_schedule(777, 10, 500, 100, 3000, 777, 777, seed=4)
    assert np.all(sched.capacities() == 777)


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_schedule(100, 0, 5, 0, 10, 1, 1000)
    with pytest.raises(ValueError):
        build_schedule(100, 1, 0, 0, 10, 1, 1000)
    with pytest.raises(ValueError):
        build_schedule(100, 1, 5, 0, 0, 1, 1000)
    with pytest.raises(ValueError):
        build_schedule(2000, 1, 5, 0, 10, 1, 1000)  # c0 above clamp


def test_capacity_at_rejects_out_of_range():
    sched = build_schedule(100, 10, 5, 0, 50, 1, 1000, seed=1)
    with pytest.raises(IndexError):
        sched.capacity_at(50)
    with pytest.raises(IndexError):
        sched.capacity_at(-1)


def test_defaults_from_instance():
    inst = generate_instance("uncorrelated", 50, 25, seed=9)
    total_w = inst.total_expected_weight()
    assert default_initial_capacity(inst) == round(0.5 * total_w)
    assert default_initial_capacity(inst, 0.25) == round(0.25 * total_w)
    assert default_clamp_bounds(inst) == (1, total_w)


def test_csv_rows_cover_every_iteration():
    sched = build_schedule(100, 10, 5, 5, 40, 1, 1000, seed=2)
    rows = list(schedule_csv_rows(sched))
    assert len(rows) == 40
    assert rows[0] == (0, 100)
    assert all(rows[i][1] == sched.capacity_at(i) for i in range(40))
