"""Volume analytics over sets of slots, and an exhaustive feasibility oracle.

All quantities are integers, so densities are returned as exact
:class:`fractions.Fraction` values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .model import BoundProfile, Instance, Job, Schedule

PEAK_DENSITY_CAP = 20
ENUMERATION_CAP = 16


class EnumerationCapError(ValueError):
    pass


def slot_set(Q: Iterable[int]) -> frozenset[int]:
    return frozenset(Q)


def _inside(job: Job, Q: frozenset[int]) -> int:
    if len(Q) > job.window:
        return sum(1 for t in range(job.release, job.deadline + 1) if t in Q)
    return sum(1 for t in Q if job.release <= t <= job.deadline)


def forced_volume(job: Job, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return max(0, job.volume - (job.window - _inside(job, Q)))


def possible_volume(job: Job, Q: Iterable[int]) -> int:
    return min(job.volume, _inside(job, slot_set(Q)))


def total_forced(instance: Instance, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return sum(forced_volume(j, Q) for j in instance.jobs)


def total_possible(instance: Instance, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return sum(possible_volume(j, Q) for j in instance.jobs)


def scheduled_volume(schedule: Schedule, Q: Iterable[int], jobs: Iterable[str] | None = None) -> int:
    """Number of placements inside ``Q``, optionally restricted to job ids."""
    Q = slot_set(Q)
    wanted = None if jobs is None else set(jobs)
    return sum(
        1 for t, _, job in schedule.placements()
        if t in Q and (wanted is None or job in wanted)
    )


def unnecessary_volume(schedule: Schedule, job: Job, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return scheduled_volume(schedule, Q, [job.id]) - forced_volume(job, Q)


def density(instance: Instance, Q: Iterable[int]) -> Fraction:
    Q = slot_set(Q)
    if not Q:
        raise ValueError("undefined density: empty slot set")
    return Fraction(total_forced(instance, Q), len(Q))


def peak_density(instance: Instance, Q: Iterable[int], cap: int = PEAK_DENSITY_CAP) -> Fraction:
    """Maximum density over nonempty subsets of ``Q`` (exponential)."""
    Q = sorted(slot_set(Q))
    if len(Q) > cap:
        raise EnumerationCapError(f"peak density cap: |Q|={len(Q)} > {cap}")
    best = Fraction(0)
    for size in range(1, len(Q) + 1):
        for sub in combinations(Q, size):
            best = max(best, density(instance, sub))
    return best


def deficiency(instance: Instance, bounds: BoundProfile, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return total_forced(instance, Q) - sum(bounds.upper(t) for t in Q)


def excess(instance: Instance, bounds: BoundProfile, Q: Iterable[int]) -> int:
    Q = slot_set(Q)
    return sum(bounds.lower(t) for t in Q) - total_possible(instance, Q)


def feasible_by_enumeration(instance: Instance, bounds: BoundProfile,
                            cap: int = ENUMERATION_CAP) -> tuple[bool, frozenset[int] | None]:
    """Check every ``Q ⊆ T`` for positive deficiency or excess.

    Sets are visited largest first, then in lexicographic order, so the
    returned witness is the first violating set in that order.
    """
    size = bounds.d + 1
    if size > cap:
        raise EnumerationCapError(f"enumeration cap: {size} slots > {cap}")
    lowers, uppers = bounds.slot_lists()
    # bitmask arithmetic: |E_j ∩ Q| is a popcount
    masks = []
    for j in instance.jobs:
        lo, hi = max(j.release, 0), min(j.deadline, size - 1)
        span = ((1 << (hi - lo + 1)) - 1) << lo if hi >= lo else 0
        masks.append((span, j.window, j.volume))
    for k in range(size, -1, -1):
        for combo in combinations(range(size), k):
            bits = 0
            for t in combo:
                bits |= 1 << t
            fv = pv = 0
            for span, window, p in masks:
                inside = (span & bits).bit_count()
                fv += max(0, p - (window - inside))
                pv += min(p, inside)
            if fv - sum(uppers[t] for t in combo) > 0 or sum(lowers[t] for t in combo) - pv > 0:
                return False, frozenset(combo)
    return True, None
