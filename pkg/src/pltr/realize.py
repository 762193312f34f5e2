"""Turn final bounds into a concrete stair-shaped schedule."""

from __future__ import annotations

from dataclasses import dataclass

from .flow import build_network, max_flow
from .model import BoundProfile, CostBreakdown, Instance, Schedule, compute_cost


@dataclass(frozen=True)
class IntervalAssignment:
    start: int
    length: int
    lower: int
    upper: int
    volumes: tuple[tuple[str, int], ...]  # (job id, units inside the interval)

    @property
    def total(self) -> int:
        return sum(x for _, x in self.volumes)


def expand_interval(a: IntervalAssignment) -> list[list[str]]:
    """Wrap-around fill of one interval; returns the job list per slot.

    Units are laid row by row over ``length`` columns, jobs in id order. A job
    with at most ``length`` units never lands twice in one column, and column
    counts differ by at most one. Position in a column is the processor rank.
    """
    L = a.length
    X = a.total
    if not a.lower * L <= X <= a.upper * L:
        raise AssertionError(f"interval at {a.start}: volume {X} outside [{a.lower * L}, {a.upper * L}]")
    columns: list[list[str]] = [[] for _ in range(L)]
    pos = 0
    for job, x in sorted(a.volumes):
        if not 0 <= x <= L:
            raise AssertionError(f"interval at {a.start}: job {job!r} has {x} units for {L} slots")
        for p in range(pos, pos + x):
            col = columns[p % L]
            assert job not in col
            col.append(job)
        pos += x
    return columns


def interval_assignments(instance: Instance, bounds: BoundProfile) -> list[IntervalAssignment]:
    net = build_network(instance, bounds, compressed=True)
    res = max_flow(net)
    if res.value != instance.total_volume:
        raise AssertionError(f"bounds infeasible: flow {res.value} < {instance.total_volume}")
    per_interval: dict[int, list[tuple[str, int]]] = {}
    for e in range(net.n_edges):
        u, v, f = int(net.tails[e]), int(net.heads[e]), int(res.flows[e])
        if f and 1 <= u <= net.n_jobs and v < net.relief:
            i = v - net.time_node(0)
            per_interval.setdefault(i, []).append((net.job_ids[u - 1], f))
    return [
        IntervalAssignment(iv.start, iv.length, iv.lower, iv.upper, tuple(per_interval.get(i, ())))
        for i, iv in enumerate(net.intervals)
    ]


def realize(instance: Instance, bounds: BoundProfile) -> Schedule:
    placements = []
    for a in interval_assignments(instance, bounds):
        for offset, jobs in enumerate(expand_interval(a)):
            for rank, job in enumerate(jobs, start=1):
                placements.append((a.start + offset, rank, job))
    return Schedule.from_placements(placements, bounds.d + 1)


def schedule_from_result(result, verify_bound: bool = True) -> tuple[Schedule, CostBreakdown]:
    """Realize a PLTR result and price it.

    With ``verify_bound`` the cost is checked against twice the optimum plus
    the total volume whenever the brute-force oracle can handle the instance.
    """
    instance = result.instance
    schedule = realize(instance, result.final_bounds)
    cost = compute_cost(schedule, instance.q)
    if verify_bound:
        from .oracle import OracleCapError, brute_force_opt

        try:
            opt = brute_force_opt(instance)
        except OracleCapError:
            pass
        else:
            if cost.total > 2 * opt.cost + instance.total_volume:
                raise AssertionError(f"cost {cost.total} exceeds 2*{opt.cost} + {instance.total_volume}")
    return schedule, cost
