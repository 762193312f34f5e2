"""Parallel Left-to-Right: greedy idle/busy extension per processor.

Processors are handled from the highest-numbered down. For each one the
solver alternately keeps it idle for as long as the instance stays feasible,
then keeps it (and every lower-numbered processor) busy for as long as
possible. Both steps tighten a :class:`BoundProfile`; every feasibility query
is a max-flow on the compressed network.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

from .flow import InfeasibleError, certify, flow_value
from .model import BoundProfile, Instance

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Engagement:
    k: int
    t: int
    snapshot: int | None  # index into PltrResult.snapshots when diagnostics are on


@dataclass
class PltrResult:
    instance: Instance
    final_bounds: BoundProfile
    engagements: list[Engagement] = field(default_factory=list)
    snapshots: list[BoundProfile] = field(default_factory=list)
    feasibility_calls: int = 0

    @property
    def busy_interval_count(self) -> int:
        """Maximal runs of ``lower >= k`` summed over processors ``k``."""
        count = 0
        lowers, _ = self.final_bounds.slot_lists()
        for k in range(1, self.instance.m_eff + 1):
            prev = False
            for lo in lowers:
                busy = lo >= k
                count += busy and not prev
                prev = busy
        return count

    def call_budget(self) -> int:
        return feasibility_call_budget(self.instance)

    def summary(self) -> dict:
        return {
            "engagements": [{"k": e.k, "t": e.t + self.instance.offset} for e in self.engagements],
            "feasibility_calls": self.feasibility_calls,
            "busy_interval_count": self.busy_interval_count,
            "bounds": self.final_bounds.to_dict(),
        }


def feasibility_call_budget(instance: Instance) -> int:
    d = max(instance.d, 0)
    return 2 * (instance.n + instance.m_eff) * (math.ceil(math.log2(d + 2)) + 2)


class Probes:
    """Counts feasibility queries made by the binary searches."""

    def __init__(self):
        self.calls = 0

    def feasible(self, instance: Instance, bounds: BoundProfile) -> bool:
        self.calls += 1
        return flow_value(instance, bounds) == instance.total_volume


def _maximal(t: int, last: int, probe: Callable[[int], bool]) -> int:
    """Largest ``t'`` in ``[t, last]`` with ``probe(t')`` true; ``probe(t)`` is assumed."""
    lo, hi = t, last
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if probe(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _check_entry(instance: Instance, bounds: BoundProfile) -> None:
    if flow_value(instance, bounds) != instance.total_volume:
        raise AssertionError("invariant broken: bounds infeasible on entry")


def keep_idle(k: int, t: int, bounds: BoundProfile, instance: Instance,
              probes: Probes | None = None) -> int:
    """Keep processor ``k`` idle from slot ``t`` for as long as feasible.

    Caps the upper bound at ``k - 1`` on ``[t, t')`` for the largest feasible
    ``t'`` and returns ``t'``. Returns ``t`` unchanged when even slot ``t``
    cannot be spared. ``bounds`` is updated in place.
    """
    if probes is None:
        _check_entry(instance, bounds)
        probes = Probes()

    def probe(end: int) -> bool:
        if not bounds.admits_upper(t, end, k - 1):
            return False
        trial = bounds.copy()
        trial.cap_upper(t, end, k - 1)
        return probes.feasible(instance, trial)

    end = _maximal(t, bounds.d + 1, probe)
    bounds.cap_upper(t, end, k - 1)
    return end


def keep_busy(k: int, t: int, bounds: BoundProfile, instance: Instance,
              probes: Probes | None = None) -> int:
    """Keep processors ``1..k`` busy from slot ``t`` for as long as feasible.

    Raises the lower bound to ``k`` on ``[t, t')`` and returns ``t'``.
    """
    if t > bounds.d:
        return t
    if probes is None:
        _check_entry(instance, bounds)
        probes = Probes()

    def probe(end: int) -> bool:
        trial = bounds.copy()
        try:
            trial.raise_lower(t, end, k)
        except ValueError:  # lower would exceed upper
            return False
        return probes.feasible(instance, trial)

    end = _maximal(t, bounds.d + 1, probe)
    bounds.raise_lower(t, end, k)
    return end


def run(instance: Instance, diagnostics: bool = False) -> PltrResult:
    """Solve ``instance``; raises :class:`InfeasibleError` if it has no feasible schedule."""
    cert = certify(instance)
    if cert is not None:
        raise InfeasibleError(cert)
    bounds = BoundProfile.constant(instance.d, instance.m_eff)
    probes = Probes()
    result = PltrResult(instance, bounds)
    d = instance.d
    for k in range(instance.m_eff, 0, -1):
        t = 0
        while t <= d:
            t = keep_idle(k, t, bounds, instance, probes)
            if t > d:
                break
            snap = None
            if diagnostics:
                result.snapshots.append(bounds.copy())
                snap = len(result.snapshots) - 1
            result.engagements.append(Engagement(k, t, snap))
            end = keep_busy(k, t, bounds, instance, probes)
            if end == t:
                raise AssertionError(f"invariant broken: processor {k} can neither idle nor work at slot {t}")
            t = end
    result.feasibility_calls = probes.calls
    log.debug("pltr: %d engagements, %d feasibility calls", len(result.engagements), probes.calls)
    return result


@dataclass
class TightnessReport:
    violations: list[Engagement] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def engagement_tightness_check(result: PltrResult) -> TightnessReport:
    """At every engagement, idling one more slot must have been infeasible."""
    report = TightnessReport()
    P = result.instance.total_volume
    for e in result.engagements:
        if e.snapshot is None:
            raise ValueError("run with diagnostics=True to keep bound snapshots")
        snap = result.snapshots[e.snapshot]
        report.checked += 1
        if not snap.admits_upper(e.t, e.t + 1, e.k - 1):
            continue  # lower bound already forces processor k busy
        trial = snap.copy()
        trial.cap_upper(e.t, e.t + 1, e.k - 1)
        if flow_value(result.instance, trial) == P:
            report.violations.append(e)
    return report
