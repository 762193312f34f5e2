"""Max-flow feasibility for deadline scheduling with per-slot processor bounds.

Network layout (node ids in this order)::

    source -> job_j           capacity p_j
    job_j  -> interval_I      capacity |I|               if I lies inside E_j
    interval_I -> relief      capacity (upper - lower)*|I|
    interval_I -> sink        capacity lower*|I|
    relief -> sink            capacity P - sum of lower bounds

An "interval" is a maximal run of slots on which job availability and both
bounds are constant. The per-slot network uses one interval per slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .model import BoundProfile, Instance
from .volume import deficiency, excess


class CertificateError(RuntimeError):
    """A min cut did not yield a positive deficiency or excess."""


class InfeasibleError(Exception):
    """Raised when an instance (with bounds) admits no feasible schedule."""

    def __init__(self, certificate: "CutCertificate"):
        self.certificate = certificate
        super().__init__(
            f"infeasible: {certificate.kind} {certificate.value} on slots {sorted(certificate.slots)}"
        )


@dataclass(frozen=True)
class Interval:
    start: int
    end: int  # exclusive
    lower: int
    upper: int

    @property
    def length(self) -> int:
        return self.end - self.start

    def slots(self) -> range:
        return range(self.start, self.end)


@dataclass(frozen=True)
class CutCertificate:
    kind: str  # "deficiency" or "excess"
    slots: frozenset[int]
    value: int

    def to_dict(self) -> dict:
        return {"kind": self.kind, "Q": sorted(self.slots), "value": self.value}


@dataclass
class FlowNetwork:
    job_ids: list[str]
    intervals: list[Interval]
    tails: np.ndarray
    heads: np.ndarray
    caps: np.ndarray
    total_volume: int

    @property
    def n_jobs(self) -> int:
        return len(self.job_ids)

    @property
    def source(self) -> int:
        return 0

    def job_node(self, i: int) -> int:
        return 1 + i

    def time_node(self, i: int) -> int:
        return 1 + self.n_jobs + i

    @property
    def relief(self) -> int:
        return 1 + self.n_jobs + len(self.intervals)

    @property
    def sink(self) -> int:
        return self.relief + 1

    @property
    def n_nodes(self) -> int:
        return self.sink + 1

    @property
    def n_edges(self) -> int:
        return len(self.tails)


@dataclass
class FlowResult:
    value: int
    flows: np.ndarray
    source_side: np.ndarray  # min cut: True for nodes in S


class LowerBoundsExceedVolume(ValueError):
    def __init__(self, instance: Instance, bounds: BoundProfile):
        self.instance, self.bounds = instance, bounds
        super().__init__("lower bounds exceed total volume")

    @property
    def certificate(self) -> CutCertificate:
        """Excess certificate on the whole horizon."""
        T = frozenset(range(self.bounds.d + 1))
        return CutCertificate("excess", T, excess(self.instance, self.bounds, T))


def _time_intervals(instance: Instance, bounds: BoundProfile, compressed: bool) -> list[Interval]:
    end = bounds.d + 1
    if compressed:
        cuts = {0, end}
        for j in instance.jobs:
            cuts.add(j.release)
            cuts.add(j.deadline + 1)
        cuts.update(bounds.breakpoints)
        cuts = sorted(c for c in cuts if 0 <= c <= end)
    else:
        cuts = list(range(end + 1))
    out = []
    seg = list(bounds.segments())
    s = 0
    for a, b in zip(cuts, cuts[1:]):
        while seg[s][1] < a:
            s += 1
        out.append(Interval(a, b, seg[s][2], seg[s][3]))
    return out


def build_network(instance: Instance, bounds: BoundProfile, compressed: bool = True) -> FlowNetwork:
    """Build the feasibility network.

    Raises :class:`LowerBoundsExceedVolume` (carrying an excess certificate on
    the whole horizon) when the relief edge would need negative capacity.
    """
    if bounds.d < instance.d:
        raise ValueError(f"bounds end at slot {bounds.d} before the last deadline {instance.d}")
    P = instance.total_volume
    total_lower = bounds.total_lower()
    if total_lower > P:
        raise LowerBoundsExceedVolume(instance, bounds)

    intervals = _time_intervals(instance, bounds, compressed)
    n, k = instance.n, len(intervals)
    rel = np.array([j.release for j in instance.jobs], dtype=np.int64)
    dl = np.array([j.deadline for j in instance.jobs], dtype=np.int64)
    vol = np.array([j.volume for j in instance.jobs], dtype=np.int64)
    starts = np.array([iv.start for iv in intervals], dtype=np.int64)
    ends = np.array([iv.end for iv in intervals], dtype=np.int64)
    lengths = ends - starts
    lo = np.array([iv.lower for iv in intervals], dtype=np.int64)
    up = np.array([iv.upper for iv in intervals], dtype=np.int64)

    # job-interval incidence, row-major => edges sorted by (job node, time node)
    inside = (rel[:, None] <= starts[None, :]) & (ends[None, :] - 1 <= dl[:, None])
    ji, ti = np.nonzero(inside)

    time0 = 1 + n
    relief, sink = time0 + k, time0 + k + 1
    t_nodes = np.arange(time0, time0 + k, dtype=np.int64)
    tails = np.concatenate([
        np.zeros(n, dtype=np.int64),
        1 + ji,
        np.repeat(t_nodes, 2),
        [relief],
    ]).astype(np.int64)
    heads = np.concatenate([
        1 + np.arange(n, dtype=np.int64),
        time0 + ti,
        np.ravel(np.column_stack([np.full(k, relief), np.full(k, sink)])),
        [sink],
    ]).astype(np.int64)
    caps = np.concatenate([
        vol,
        lengths[ti],
        np.ravel(np.column_stack([(up - lo) * lengths, lo * lengths])),
        [P - total_lower],
    ]).astype(np.int64)
    return FlowNetwork([j.id for j in instance.jobs], intervals, tails, heads, caps, P)


def max_flow(network: FlowNetwork, backend: str | None = None) -> FlowResult:
    """Exact integral max flow from source to sink.

    The min cut returned is the sink-maximal one: ``S`` holds every node that
    cannot reach the sink in the final residual network.
    """
    dinic = _backend.kernel(backend)
    value, flows, reaches = dinic(
        network.n_nodes, network.tails, network.heads, network.caps, network.source, network.sink
    )
    return FlowResult(int(value), np.asarray(flows, dtype=np.int64), ~np.asarray(reaches, dtype=bool))


def flow_value(instance: Instance, bounds: BoundProfile, compressed: bool = True, backend: str | None = None) -> int:
    try:
        net = build_network(instance, bounds, compressed)
    except LowerBoundsExceedVolume:
        return -1
    return max_flow(net, backend).value


def default_bounds(instance: Instance) -> BoundProfile:
    return BoundProfile.constant(instance.d, instance.m)


def is_feasible(instance: Instance, bounds: BoundProfile | None = None, compressed: bool = True) -> bool:
    if bounds is None:
        bounds = default_bounds(instance)
    return flow_value(instance, bounds, compressed) == instance.total_volume


def extract_certificate(instance: Instance, bounds: BoundProfile, network: FlowNetwork,
                        result: FlowResult) -> CutCertificate:
    if result.value >= network.total_volume:
        raise ValueError("network carries full volume; nothing to certify")
    inside, outside = set(), set()
    for i, iv in enumerate(network.intervals):
        (inside if result.source_side[network.time_node(i)] else outside).update(iv.slots())
    if not result.source_side[network.relief]:
        cert = CutCertificate("deficiency", frozenset(inside), deficiency(instance, bounds, inside))
    else:
        cert = CutCertificate("excess", frozenset(outside), excess(instance, bounds, outside))
    if cert.value <= 0:
        raise CertificateError(f"certificate verification failed: {cert}")
    return cert


def certify(instance: Instance, bounds: BoundProfile | None = None) -> CutCertificate | None:
    """Return ``None`` when feasible, else a verified infeasibility certificate."""
    if bounds is None:
        bounds = default_bounds(instance)
    try:
        net = build_network(instance, bounds)
    except LowerBoundsExceedVolume as exc:
        return exc.certificate
    result = max_flow(net)
    if result.value == instance.total_volume:
        return None
    return extract_certificate(instance, bounds, net, result)


def equivalent_networks_check(instance: Instance, bounds: BoundProfile | None = None) -> bool:
    if bounds is None:
        bounds = default_bounds(instance)
    return flow_value(instance, bounds, compressed=False) == flow_value(instance, bounds, compressed=True)
