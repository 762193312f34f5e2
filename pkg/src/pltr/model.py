"""Domain types for deadline scheduling with power-down.

Time is discrete. A job may run in any slot of its inclusive execution
interval ``[release, deadline]``. Processors are numbered ``1..m``.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class EmptyInstanceError(ValueError):
    """Raised when an operation needs a time horizon but there are no jobs."""


@dataclass(frozen=True)
class Job:
    id: str
    release: int
    deadline: int
    volume: int

    @property
    def window(self) -> int:
        """Number of slots in the execution interval."""
        return self.deadline - self.release + 1

    def available(self, t: int) -> bool:
        return self.release <= t <= self.deadline


@dataclass(frozen=True)
class Instance:
    jobs: tuple[Job, ...]
    m: int
    q: int
    offset: int = 0  # amount subtracted from all times during normalization

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))

    @classmethod
    def create(cls, jobs: Iterable[Job], m: int, q: int) -> "Instance":
        """Build an instance, shifting times so the earliest release is 0."""
        jobs = tuple(jobs)
        offset = min((j.release for j in jobs), default=0)
        if offset:
            jobs = tuple(
                Job(j.id, j.release - offset, j.deadline - offset, j.volume) for j in jobs
            )
        return cls(jobs, m, q, offset)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def d(self) -> int:
        """Last deadline; -1 for an instance without jobs."""
        return max((j.deadline for j in self.jobs), default=-1)

    @property
    def total_volume(self) -> int:
        return sum(j.volume for j in self.jobs)

    @property
    def m_eff(self) -> int:
        """Processors that can ever be busy at once: ``min(m, n)``."""
        return min(self.m, self.n)

    def job(self, job_id: str) -> Job:
        for j in self.jobs:
            if j.id == job_id:
                return j
        raise KeyError(job_id)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "jobs": [
                {
                    "id": j.id,
                    "release": j.release + self.offset,
                    "deadline": j.deadline + self.offset,
                    "volume": j.volume,
                }
                for j in self.jobs
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        try:
            jobs = [
                Job(str(j["id"]), j["release"], j["deadline"], j["volume"])
                for j in data["jobs"]
            ]
            return cls.create(jobs, data["m"], data["q"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed instance: {exc!r}") from exc


def horizon(instance: Instance) -> tuple[int, int]:
    """Return ``(d, |T|)`` where ``d`` is the last deadline."""
    if not instance.jobs:
        raise EmptyInstanceError("empty instance")
    d = instance.d
    return d, d + 1


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    job: str | None = None
    slot: int | None = None
    # Structural violations make the input unusable. Non-structural ones
    # (a job larger than its window) leave a well-formed but infeasible input.
    structural: bool = True


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def structural(self) -> list[Violation]:
        return [v for v in self.violations if v.structural]

    def add(self, code: str, message: str, **kw) -> None:
        self.violations.append(Violation(code, message, **kw))

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(v.message for v in self.violations)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def validate_instance(instance: Instance) -> ValidationReport:
    report = ValidationReport()
    if not _is_int(instance.m) or instance.m < 1:
        report.add("processor count", f"processor count must be an integer >= 1, got {instance.m!r}")
    if not _is_int(instance.q) or instance.q < 0:
        report.add("wake-up cost", f"wake-up cost must be an integer >= 0, got {instance.q!r}")
    seen = set()
    for j in instance.jobs:
        if j.id in seen:
            report.add("duplicate id", f"duplicate id {j.id!r}", job=j.id)
        seen.add(j.id)
        fields = {"release": j.release, "deadline": j.deadline, "volume": j.volume}
        bad = [k for k, v in fields.items() if not _is_int(v) or v < 0]
        for k in bad:
            report.add(
                "non-integer field",
                f"job {j.id!r}: {k} must be a non-negative integer, got {fields[k]!r}",
                job=j.id,
            )
        if bad:
            continue
        if j.volume < 1:
            report.add("empty volume", f"job {j.id!r}: volume must be >= 1", job=j.id)
        if j.deadline < j.release:
            report.add("inverted interval", f"job {j.id!r}: deadline before release", job=j.id)
        elif j.volume > j.window:
            report.add(
                "volume exceeds execution interval",
                f"job {j.id!r}: volume exceeds execution interval ({j.volume} > {j.window} slots)",
                job=j.id,
                structural=False,
            )
    if instance.jobs and report.ok and min(j.release for j in instance.jobs) != 0:
        report.add("not normalized", "earliest release is not 0")
    return report


# -- bound profile --------------------------------------------------------------


class BoundProfile:
    """Piecewise-constant lower/upper bounds on the number of busy processors.

    Segments are stored by start slot; the last segment ends at ``d``
    (inclusive). Adjacent segments with equal bounds are merged, so the
    breakpoint list stays short for the compressed flow network.
    """

    def __init__(self, d: int, m: int, starts: Sequence[int], lowers: Sequence[int], uppers: Sequence[int]):
        self.d = d
        self.m = m
        self._starts = list(starts)
        self._lo = list(lowers)
        self._up = list(uppers)
        self._check()
        self._merge()

    @classmethod
    def constant(cls, d: int, m: int, lower: int = 0, upper: int | None = None) -> "BoundProfile":
        upper = m if upper is None else upper
        if d < 0:
            return cls(d, m, [], [], [])
        return cls(d, m, [0], [lower], [upper])

    @classmethod
    def from_slots(cls, lowers: Sequence[int], uppers: Sequence[int], m: int) -> "BoundProfile":
        if len(lowers) != len(uppers):
            raise ValueError("lower and upper slot lists differ in length")
        return cls(len(lowers) - 1, m, range(len(lowers)), lowers, uppers)

    def _check(self) -> None:
        if self.d < 0:
            if self._starts:
                raise ValueError("segments given for an empty horizon")
            return
        if not self._starts or self._starts[0] != 0:
            raise ValueError("segments must start at slot 0")
        if any(a >= b for a, b in zip(self._starts, self._starts[1:])):
            raise ValueError("segment starts must be strictly increasing")
        if self._starts[-1] > self.d:
            raise ValueError("segment starts beyond the horizon")
        for s, lo, up in zip(self._starts, self._lo, self._up):
            if not 0 <= lo <= up <= self.m:
                raise ValueError(f"segment at {s}: need 0 <= lower <= upper <= m, got ({lo}, {up}, m={self.m})")

    def _merge(self) -> None:
        starts, lo, up = [], [], []
        for s, a, b in zip(self._starts, self._lo, self._up):
            if lo and lo[-1] == a and up[-1] == b:
                continue
            starts.append(s)
            lo.append(a)
            up.append(b)
        self._starts, self._lo, self._up = starts, lo, up

    def copy(self) -> "BoundProfile":
        new = BoundProfile.__new__(BoundProfile)
        new.d, new.m = self.d, self.m
        new._starts, new._lo, new._up = list(self._starts), list(self._lo), list(self._up)
        return new

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundProfile):
            return NotImplemented
        return (self.d, self.m, self._starts, self._lo, self._up) == (
            other.d, other.m, other._starts, other._lo, other._up)

    def __repr__(self) -> str:
        segs = ", ".join(f"[{a}..{b}]:({lo},{up})" for a, b, lo, up in self.segments())
        return f"BoundProfile(d={self.d}, m={self.m}, {segs})"

    @property
    def breakpoints(self) -> list[int]:
        return list(self._starts)

    def segments(self) -> Iterator[tuple[int, int, int, int]]:
        """Yield ``(first, last, lower, upper)`` with ``last`` inclusive."""
        ends = self._starts[1:] + [self.d + 1]
        for s, e, lo, up in zip(self._starts, ends, self._lo, self._up):
            yield s, e - 1, lo, up

    def at(self, t: int) -> tuple[int, int]:
        if not 0 <= t <= self.d:
            raise IndexError(t)
        i = bisect.bisect_right(self._starts, t) - 1
        return self._lo[i], self._up[i]

    def lower(self, t: int) -> int:
        return self.at(t)[0]

    def upper(self, t: int) -> int:
        return self.at(t)[1]

    def slot_lists(self) -> tuple[list[int], list[int]]:
        lowers, uppers = [], []
        for a, b, lo, up in self.segments():
            lowers.extend([lo] * (b - a + 1))
            uppers.extend([up] * (b - a + 1))
        return lowers, uppers

    def total_lower(self) -> int:
        return sum((b - a + 1) * lo for a, b, lo, _ in self.segments())

    def _split(self, t: int) -> int:
        """Ensure a segment starts at ``t``; return its index."""
        if t > self.d:
            return len(self._starts)
        i = bisect.bisect_right(self._starts, t) - 1
        if self._starts[i] == t:
            return i
        self._starts.insert(i + 1, t)
        self._lo.insert(i + 1, self._lo[i])
        self._up.insert(i + 1, self._up[i])
        return i + 1

    def _apply(self, a: int, b: int, fn_lo, fn_up) -> None:
        if not 0 <= a <= b <= self.d + 1:
            raise IndexError((a, b))
        if a == b:
            return
        i = self._split(a)
        j = self._split(b)
        for x in range(i, j):
            lo, up = fn_lo(self._lo[x]), fn_up(self._up[x])
            if lo > up:
                raise ValueError(f"bounds cross at slot {self._starts[x]}: lower {lo} > upper {up}")
            # tightening only
            assert lo >= self._lo[x] and up <= self._up[x]
            self._lo[x], self._up[x] = lo, up
        self._merge()

    def cap_upper(self, a: int, b: int, value: int) -> None:
        """Set ``upper = min(upper, value)`` on slots ``[a, b)``."""
        self._apply(a, b, lambda lo: lo, lambda up: min(up, value))

    def raise_lower(self, a: int, b: int, value: int) -> None:
        """Set ``lower = max(lower, value)`` on slots ``[a, b)``."""
        self._apply(a, b, lambda lo: max(lo, value), lambda up: up)

    def admits_upper(self, a: int, b: int, value: int) -> bool:
        """Whether capping the upper bound on ``[a, b)`` keeps ``lower <= upper``."""
        return all(lo <= value for s, e, lo, _ in self.segments() if s < b and e >= a)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "segments": [
                {"start": a, "end": b, "lower": lo, "upper": up}
                for a, b, lo, up in self.segments()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundProfile":
        try:
            segs = sorted(data["segments"], key=lambda s: s["start"])
            m = data["m"]
            if not segs:
                return cls(-1, m, [], [], [])
            for a, b in zip(segs, segs[1:]):
                if a["end"] + 1 != b["start"]:
                    raise ValueError("bound segments must tile the horizon without gaps")
            return cls(
                segs[-1]["end"], m,
                [s["start"] for s in segs],
                [s["lower"] for s in segs],
                [s["upper"] for s in segs],
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed bounds: {exc!r}") from exc


# -- schedules ------------------------------------------------------------------


@dataclass(frozen=True)
class Schedule:
    """Slot-indexed assignment; ``slots[t]`` lists ``(processor, job_id)`` pairs."""

    slots: tuple[tuple[tuple[int, str], ...], ...]

    @classmethod
    def from_placements(cls, placements: Iterable[tuple[int, int, str]], length: int) -> "Schedule":
        """Build from ``(t, processor, job_id)`` triples."""
        buckets: list[list[tuple[int, str]]] = [[] for _ in range(length)]
        for t, k, job in placements:
            buckets[t].append((k, job))
        return cls(tuple(tuple(sorted(b)) for b in buckets))

    @classmethod
    def empty(cls, length: int = 0) -> "Schedule":
        return cls(tuple(() for _ in range(length)))

    def __len__(self) -> int:
        return len(self.slots)

    def placements(self) -> Iterator[tuple[int, int, str]]:
        for t, entries in enumerate(self.slots):
            for k, job in entries:
                yield t, k, job

    def vol(self, t: int) -> int:
        return len(self.slots[t]) if 0 <= t < len(self.slots) else 0

    def busy_sets(self) -> dict[int, list[int]]:
        busy: dict[int, list[int]] = {}
        for t, k, _ in self.placements():
            busy.setdefault(k, []).append(t)
        return {k: sorted(ts) for k, ts in sorted(busy.items())}

    def job_slots(self) -> dict[str, list[int]]:
        out: dict[str, list[int]] = {}
        for t, _, job in self.placements():
            out.setdefault(job, []).append(t)
        return out

    def to_dict(self, offset: int = 0) -> dict:
        procs = {}
        for t, k, job in self.placements():
            procs.setdefault(k, []).append({"t": t + offset, "job": job})
        return {
            "processors": [{"k": k, "slots": procs[k]} for k in sorted(procs)],
        }

    @classmethod
    def from_dict(cls, data: dict, offset: int = 0) -> "Schedule":
        try:
            triples = [
                (s["t"] - offset, p["k"], str(s["job"]))
                for p in data["processors"]
                for s in p["slots"]
            ]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed schedule: {exc!r}") from exc
        if any(t < 0 for t, _, _ in triples):
            raise ValueError("schedule slot before time 0")
        length = max((t for t, _, _ in triples), default=-1) + 1
        return cls.from_placements(triples, length)


def check_stair(schedule: Schedule) -> bool:
    """True iff every slot uses exactly processors ``1..vol(t)``."""
    for entries in schedule.slots:
        if sorted(k for k, _ in entries) != list(range(1, len(entries) + 1)):
            return False
    return True


def check_valid(schedule: Schedule, instance: Instance, bounds: BoundProfile | None = None) -> ValidationReport:
    report = ValidationReport()
    jobs = {j.id: j for j in instance.jobs}
    counts = dict.fromkeys(jobs, 0)
    for t, entries in enumerate(schedule.slots):
        procs = [k for k, _ in entries]
        ids = [job for _, job in entries]
        for k in sorted({k for k in procs if procs.count(k) > 1}):
            report.add("processor reused", f"slot {t}: processor {k} runs more than one job", slot=t)
        for job in sorted({x for x in ids if ids.count(x) > 1}):
            report.add("parallel self-execution", f"slot {t}: job {job!r} runs on several processors", job=job, slot=t)
        for k, job in entries:
            if not 1 <= k <= instance.m:
                report.add("processor out of range", f"slot {t}: processor {k} not in 1..{instance.m}", slot=t)
            if job not in jobs:
                report.add("unknown job", f"slot {t}: unknown job {job!r}", job=job, slot=t)
                continue
            counts[job] += 1
            if not jobs[job].available(t):
                report.add("slot outside execution interval",
                           f"slot {t}: job {job!r} outside its execution interval", job=job, slot=t)
    for job, c in counts.items():
        p = jobs[job].volume
        if c < p:
            report.add("volume deficit", f"job {job!r}: scheduled {c} of {p} units", job=job)
        elif c > p:
            report.add("volume surplus", f"job {job!r}: scheduled {c} of {p} units", job=job)
    if bounds is not None:
        if len(schedule) > bounds.d + 1:
            report.add("beyond horizon", f"schedule extends past slot {bounds.d}")
        for t in range(bounds.d + 1):
            lo, up = bounds.at(t)
            v = schedule.vol(t)
            if not lo <= v <= up:
                report.add("bound violated", f"slot {t}: {v} busy processors outside [{lo}, {up}]", slot=t)
    return report


# -- cost model -------------------------------------------------------------------


@dataclass(frozen=True)
class ProcessorCost:
    k: int
    busy_cost: int
    interior_idle_cost: int
    powerup_cost: int
    on_cost: int
    off_cost: int

    @property
    def total(self) -> int:
        return self.busy_cost + self.interior_idle_cost + self.powerup_cost


@dataclass(frozen=True)
class CostBreakdown:
    processors: tuple[ProcessorCost, ...]

    @property
    def busy(self) -> int:
        return sum(p.busy_cost for p in self.processors)

    @property
    def idle(self) -> int:
        return sum(p.interior_idle_cost for p in self.processors)

    @property
    def powerup(self) -> int:
        return sum(p.powerup_cost for p in self.processors)

    @property
    def on(self) -> int:
        return sum(p.on_cost for p in self.processors)

    @property
    def off(self) -> int:
        return sum(p.off_cost for p in self.processors)

    @property
    def total(self) -> int:
        return self.busy + self.idle + self.powerup

    def to_dict(self) -> dict:
        return {
            "busy": self.busy,
            "idle": self.idle,
            "powerup": self.powerup,
            "on": self.on,
            "off": self.off,
            "total": self.total,
            "processors": [
                {"k": p.k, "busy": p.busy_cost, "idle": p.interior_idle_cost, "powerup": p.powerup_cost}
                for p in self.processors
            ],
        }


def processor_cost(busy: Sequence[int], q: int) -> tuple[int, int, int, int, int]:
    """Cost of one processor busy exactly on the sorted slots ``busy``.

    Returns ``(busy, idle, powerup, on, off)``. The two decompositions
    ``busy + idle + powerup`` and ``on + off`` are computed independently.
    """
    if not busy:
        return 0, 0, 0, 0, 0
    gaps = [b - a - 1 for a, b in zip(busy, busy[1:]) if b - a > 1]
    idle = sum(min(g, q) for g in gaps)
    # on/off view: stay on through gaps no longer than q
    on, runs = 0, 0
    start = prev = busy[0]
    for t in busy[1:]:
        if t - prev - 1 > q:
            on += prev - start + 1
            runs += 1
            start = t
        prev = t
    on += prev - start + 1
    runs += 1
    return len(busy), idle, q, on, q * runs


def compute_cost(schedule: Schedule, q: int) -> CostBreakdown:
    procs = []
    for k, ts in schedule.busy_sets().items():
        busy, idle, powerup, on, off = processor_cost(ts, q)
        assert busy + idle + powerup == on + off, "cost views disagree"
        procs.append(ProcessorCost(k, busy, idle, powerup, on, off))
    return CostBreakdown(tuple(procs))


def dumps(data: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
