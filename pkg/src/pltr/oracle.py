"""Ground-truth engines used to validate PLTR on small instances.

Optimal schedules may be assumed stair-shaped (busy processors are always the
lowest-numbered ones), so an optimum is determined by its per-slot busy
counts. :func:`brute_force_opt` enumerates those count profiles, prices each
one, and returns the cheapest profile the flow network can realize.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flow import InfeasibleError, certify, flow_value
from .model import BoundProfile, Instance, Schedule, compute_cost
from .realize import realize

PROFILE_CAP = 2_000_000


class OracleCapError(ValueError):
    pass


@dataclass(frozen=True)
class OptResult:
    cost: int
    profile: tuple[int, ...]
    schedule: Schedule
    candidates: int  # profiles with the right total volume


def _profiles(avail: list[int], total: int, q: int):
    """Yield ``(cost, profile)`` for every count profile summing to ``total``.

    Cost is accumulated incrementally: processor ``k`` busy at ``t`` after
    last being busy at ``s`` pays ``1 + min(t - s - 1, q)``; its first busy
    slot pays ``1 + q``.
    """
    T = len(avail)
    suffix = [0] * (T + 1)
    for t in range(T - 1, -1, -1):
        suffix[t] = suffix[t + 1] + avail[t]
    last = [-1] * (max(avail, default=0) + 1)
    profile = [0] * T

    def rec(t, remaining, cost):
        if remaining == 0:
            yield cost, tuple(profile)
            return
        if t == T or suffix[t] < remaining:
            return
        top = min(avail[t], remaining)
        # c = 0 first: lexicographic order of profiles
        yield from rec(t + 1, remaining, cost)
        saved = []
        add = 0
        for c in range(1, top + 1):
            s = last[c]
            add += 1 + (q if s < 0 else min(t - s - 1, q))
            saved.append(s)
            last[c] = t
            profile[t] = c
            yield from rec(t + 1, remaining - c, cost + add)
        for c in range(top, 0, -1):
            last[c] = saved[c - 1]
        profile[t] = 0

    yield from rec(0, total, 0)


def brute_force_opt(instance: Instance, cap: int = PROFILE_CAP) -> OptResult:
    mp = instance.m_eff
    if instance.n == 0:
        return OptResult(0, (), Schedule.empty(), 1)
    if (mp + 1) ** (instance.d + 1) > cap:
        raise OracleCapError(
            f"instance too large for oracle: {mp + 1}^{instance.d + 1} profiles > {cap}")
    cert = certify(instance)
    if cert is not None:
        raise InfeasibleError(cert)
    T = instance.d + 1
    avail = [min(mp, sum(j.available(t) for j in instance.jobs)) for t in range(T)]
    P = instance.total_volume
    candidates = sorted(_profiles(avail, P, instance.q))
    for cost, prof in candidates:
        bounds = BoundProfile.from_slots(prof, prof, mp)
        if flow_value(instance, bounds) == P:
            schedule = realize(instance, bounds)
            assert compute_cost(schedule, instance.q).total == cost
            return OptResult(cost, prof, schedule, len(candidates))
    raise AssertionError("feasible instance without a feasible stair profile")


def edf_feasible(instance: Instance) -> bool:
    """Single-processor feasibility by earliest-deadline-first simulation."""
    if instance.m_eff > 1:
        raise ValueError("EDF check is single-processor only")
    left = {j.id: j.volume for j in instance.jobs}
    for t in range(instance.d + 1):
        ready = [j for j in instance.jobs if left[j.id] and j.release <= t]
        if any(j.deadline < t for j in ready):
            return False
        if ready:
            j = min(ready, key=lambda j: (j.deadline, j.id))
            left[j.id] -= 1
    return not any(left.values())


@dataclass(frozen=True)
class ApproximationReport:
    pltr_cost: int
    opt_cost: int
    total_volume: int
    bound_ok: bool
    ratio: Fraction

    @property
    def bound(self) -> int:
        return 2 * self.opt_cost + self.total_volume

    def to_dict(self) -> dict:
        return {
            "pltr_cost": self.pltr_cost,
            "opt_cost": self.opt_cost,
            "P": self.total_volume,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "ratio": str(self.ratio),
        }


def approximation_report(instance: Instance, cap: int = PROFILE_CAP) -> ApproximationReport:
    from . import solver
    from .realize import schedule_from_result

    opt = brute_force_opt(instance, cap)
    _, cost = schedule_from_result(solver.run(instance), verify_bound=False)
    P = instance.total_volume
    ratio = Fraction(cost.total, opt.cost) if opt.cost else Fraction(1)
    return ApproximationReport(cost.total, opt.cost, P, cost.total <= 2 * opt.cost + P, ratio)
