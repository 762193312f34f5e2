import random

import pytest
from hypothesis import given, settings, strategies as st

from pltr.flow import is_feasible
from pltr.model import BoundProfile, Instance, check_stair, check_valid
from pltr.realize import IntervalAssignment, expand_interval, realize, schedule_from_result
from pltr.solver import run

from conftest import instances


def test_expand_examples():
    assert expand_interval(IntervalAssignment(0, 2, 2, 2, (("a", 2), ("b", 2)))) == [["a", "b"], ["a", "b"]]
    assert expand_interval(IntervalAssignment(0, 3, 0, 1, (("a", 2),))) == [["a"], ["a"], []]
    assert expand_interval(IntervalAssignment(0, 2, 1, 2, (("b", 1), ("a", 2)))) == [["a", "b"], ["a"]]


def test_expand_rejects_bad_assignments():
    with pytest.raises(AssertionError):
        expand_interval(IntervalAssignment(0, 3, 1, 1, (("a", 2),)))  # 2 < lower*length
    with pytest.raises(AssertionError):
        expand_interval(IntervalAssignment(0, 2, 0, 3, (("a", 3),)))  # more units than slots


@given(st.integers(1, 8), st.lists(st.integers(0, 8), max_size=6))
def test_expand_wraparound_properties(length, raw):
    vols = tuple((f"j{i}", min(x, length)) for i, x in enumerate(raw))
    X = sum(x for _, x in vols)
    cols = expand_interval(IntervalAssignment(0, length, X // length, -(-X // length), vols))
    counts = [len(c) for c in cols]
    assert max(counts) - min(counts) <= 1
    assert sum(counts) == X
    for c in cols:
        assert len(set(c)) == len(c)
    for job, x in vols:
        assert sum(job in c for c in cols) == x


def test_realize_fixtures(fixture_a, fixture_b):
    s = realize(fixture_a, run(fixture_a).final_bounds)
    assert sorted(s.placements()) == [(3, 1, "j1"), (4, 1, "j1")]
    s = realize(fixture_b, run(fixture_b).final_bounds)
    assert sorted(s.placements()) == [(0, 1, "j1"), (0, 2, "j2"), (1, 1, "j1"), (1, 2, "j2")]
    assert len(realize(Instance.create([], 1, 0), BoundProfile.constant(-1, 1))) == 0


def test_realize_rejects_infeasible(fixture_inf):
    with pytest.raises(AssertionError):
        realize(fixture_inf, BoundProfile.constant(1, 1))


def test_schedule_from_result(fixture_a, fixture_b):
    assert schedule_from_result(run(fixture_a))[1].total == 4
    assert schedule_from_result(run(fixture_b))[1].total == 6
    assert schedule_from_result(run(Instance.create([], 2, 3)))[1].total == 0


@settings(max_examples=80, deadline=None)
@given(instances(n_max=4, d_max=10, m_max=3))
def test_realized_schedule_is_valid_stair(inst):
    if not is_feasible(inst):
        return
    r = run(inst)
    s = realize(inst, r.final_bounds)
    assert check_valid(s, inst, r.final_bounds).ok
    assert check_stair(s)


def test_realize_with_slack_bounds_keeps_columns_balanced():
    rng = random.Random(2)
    from conftest import random_instance
    for _ in range(100):
        inst = random_instance(rng)
        bounds = BoundProfile.constant(inst.d, inst.m)
        if not is_feasible(inst, bounds):
            continue
        s = realize(inst, bounds)
        assert check_valid(s, inst, bounds).ok and check_stair(s)
