"""Random instance generation."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass

from .model import Instance, Job


@dataclass(frozen=True)
class GenSpec:
    n: int = 4
    m: int = 2
    q: int = 2
    d: int = 8
    volume: tuple[int, int] = (1, 3)
    slack: tuple[int, int] = (0, 4)
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        """Parse ``"n=3,d=8,m=2,q=2,seed=7,volume=1-3,slack=0-4"``."""
        kw = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, val = part.partition("=")
            key = key.strip()
            if key in ("volume", "slack"):
                lo, _, hi = val.partition("-")
                kw[key] = (int(lo), int(hi or lo))
            elif key in ("n", "m", "q", "d", "seed"):
                kw[key] = int(val)
            else:
                raise ValueError(f"unknown generator field {key!r}")
        if "PLTR_SEED" in os.environ:
            kw["seed"] = int(os.environ["PLTR_SEED"])
        return cls(**kw)


def generate(spec: GenSpec, rng: random.Random | None = None) -> Instance:
    """Draw one instance; every job fits its window.

    Each job gets a volume, then a window of ``volume + slack`` slots placed
    uniformly inside ``[0, d]``. Windows are clipped to the horizon, which
    never shrinks them below the volume.
    """
    rng = rng or random.Random(spec.seed)
    horizon = spec.d + 1
    jobs = []
    for i in range(spec.n):
        p = min(rng.randint(*spec.volume), horizon)
        width = min(p + rng.randint(*spec.slack), horizon)
        r = rng.randint(0, horizon - width)
        jobs.append(Job(f"j{i + 1}", r, r + width - 1, p))
    return Instance.create(jobs, spec.m, spec.q)


def stream(spec: GenSpec, trials: int, feasible_only: bool = False):
    """Yield ``trials`` instances from one seeded stream."""
    from .flow import is_feasible

    rng = random.Random(spec.seed)
    made = 0
    while made < trials:
        inst = generate(spec, rng)
        if feasible_only and not is_feasible(inst):
            continue
        made += 1
        yield inst
