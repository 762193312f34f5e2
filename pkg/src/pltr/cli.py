"""Command-line front end.

Exit codes: 0 solved or feasible, 2 infeasible (certificate printed),
1 input/validation error or a failed check.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import _backend, solver
from .flow import InfeasibleError, certify
from .gantt import render_svg
from .generate import GenSpec, stream
from .model import BoundProfile, Instance, Schedule, dumps, validate_instance
from .oracle import OracleCapError, approximation_report, brute_force_opt
from .realize import schedule_from_result
from .volume import deficiency, excess

OK, ERROR, INFEASIBLE = 0, 1, 2

log = logging.getLogger("pltr")


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def load_instance(path: str) -> Instance:
    try:
        inst = Instance.from_dict(_read_json(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    report = validate_instance(inst)
    if report.structural:
        raise UsageError(f"{path}: " + "; ".join(v.message for v in report.structural))
    return inst


def load_bounds(path: str, instance: Instance) -> BoundProfile:
    """Bounds are given in the instance's own time frame."""
    data = _read_json(path)
    try:
        segs = [dict(s, start=s["start"] - instance.offset, end=s["end"] - instance.offset)
                for s in data["segments"]]
        bounds = BoundProfile.from_dict({"m": data.get("m", instance.m), "segments": segs})
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if bounds.m > instance.m:
        raise UsageError(f"{path}: bound m={bounds.m} exceeds processor count {instance.m}")
    if bounds.d < instance.d:
        raise UsageError(f"{path}: bounds end before the last deadline")
    return bounds


def _emit(data) -> None:
    print(dumps(data))


def _certificate_json(instance: Instance, bounds: BoundProfile, cert) -> dict:
    Q = cert.slots
    return {
        "kind": cert.kind,
        "Q": sorted(t + instance.offset for t in Q),
        "value": cert.value,
        "deficiency": deficiency(instance, bounds, Q),
        "excess": excess(instance, bounds, Q),
    }


def schedule_json(schedule: Schedule, instance: Instance, cost) -> dict:
    data = schedule.to_dict(instance.offset)
    data["cost"] = cost.to_dict()
    data["q"] = instance.q
    data["m"] = instance.m
    return data


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    try:
        result = solver.run(inst, diagnostics=args.diagnostics)
    except InfeasibleError as exc:
        bounds = BoundProfile.constant(inst.d, inst.m)
        _emit({"status": "infeasible", "certificate": _certificate_json(inst, bounds, exc.certificate)})
        return INFEASIBLE
    schedule, cost = schedule_from_result(result, verify_bound=False)
    sched = schedule_json(schedule, inst, cost)
    out = {"status": "solved", "cost": cost.total, "pltr": result.summary(), "schedule": sched}
    if args.diagnostics:
        tight = solver.engagement_tightness_check(result)
        out["tightness"] = {
            "checked": tight.checked,
            "violations": [{"k": e.k, "t": e.t + inst.offset} for e in tight.violations],
        }
    if args.schedule_out:
        Path(args.schedule_out).write_text(dumps(sched) + "\n", encoding="utf-8")
    if args.gantt_out:
        Path(args.gantt_out).write_text(render_svg(schedule, inst.q, inst.m, inst.offset), encoding="utf-8")
    _emit(out)
    return OK


def cmd_check(args) -> int:
    inst = load_instance(args.instance)
    bounds = load_bounds(args.bounds, inst) if args.bounds else BoundProfile.constant(inst.d, inst.m)
    cert = certify(inst, bounds)
    if cert is None:
        _emit({"feasible": True})
        return OK
    _emit({"feasible": False, "certificate": _certificate_json(inst, bounds, cert)})
    return INFEASIBLE


def _instances(args):
    if args.instance:
        yield from [load_instance(args.instance)] * max(args.trials, 0)
    else:
        yield from stream(GenSpec.parse(args.gen), args.trials, feasible_only=True)


def cmd_compare(args) -> int:
    rows = []
    for i, inst in enumerate(_instances(args)):
        try:
            rep = approximation_report(inst)
        except OracleCapError as exc:
            print(f"trial {i}: skipped ({exc})", file=sys.stderr)
            continue
        except InfeasibleError as exc:
            print(f"trial {i}: skipped ({exc})", file=sys.stderr)
            continue
        rows.append(dict(trial=i, **rep.to_dict()))
    if args.json:
        _emit({"rows": rows})
    else:
        cols = ["trial", "pltr_cost", "opt_cost", "P", "bound", "bound_ok", "ratio"]
        print("  ".join(f"{c:>9}" for c in cols))
        for r in rows:
            print("  ".join(f"{str(r[c]):>9}" for c in cols))
    return OK if all(r["bound_ok"] for r in rows) else ERROR


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    try:
        opt = brute_force_opt(inst, cap=args.cap)
    except OracleCapError as exc:
        raise UsageError(str(exc)) from exc
    except InfeasibleError as exc:
        bounds = BoundProfile.constant(inst.d, inst.m)
        _emit({"status": "infeasible", "certificate": _certificate_json(inst, bounds, exc.certificate)})
        return INFEASIBLE
    from .model import compute_cost

    _emit({
        "status": "solved",
        "opt_cost": opt.cost,
        "profile": list(opt.profile),
        "candidates": opt.candidates,
        "schedule": schedule_json(opt.schedule, inst, compute_cost(opt.schedule, inst.q)),
    })
    return OK


def cmd_gantt(args) -> int:
    data = _read_json(args.schedule)
    try:
        schedule = Schedule.from_dict(data)
    except ValueError as exc:
        raise UsageError(f"{args.schedule}: {exc}") from exc
    for t, entries in enumerate(schedule.slots):
        procs = [k for k, _ in entries]
        if len(set(procs)) != len(procs) or any(k < 1 for k in procs):
            raise UsageError(f"{args.schedule}: invalid processor use at slot {t}")
    q = args.q if args.q is not None else data.get("q", 0)
    Path(args.out).write_text(render_svg(schedule, q, data.get("m")), encoding="utf-8")
    return OK


def cmd_gen(args) -> int:
    spec = GenSpec.parse(args.spec)
    for inst in stream(spec, args.trials, feasible_only=args.feasible_only):
        print(dumps(inst.to_dict()))
    return OK


def cmd_bench(args) -> int:
    if args.backend:
        _backend.use(args.backend)
    spec = GenSpec.parse(args.gen)
    trials, failures = [], 0
    for i, inst in enumerate(stream(spec, args.trials, feasible_only=True)):
        start = time.perf_counter()
        result = solver.run(inst)
        wall = time.perf_counter() - start
        budget = result.call_budget()
        row = {
            "trial": i,
            "n": inst.n,
            "d": inst.d,
            "m_eff": inst.m_eff,
            "feasibility_calls": result.feasibility_calls,
            "call_budget": budget,
            "busy_interval_count": result.busy_interval_count,
            "wall_time": round(wall, 6),
            "calls_ok": result.feasibility_calls <= budget,
            "busy_ok": result.busy_interval_count <= inst.n,
        }
        failures += not (row["calls_ok"] and row["busy_ok"])
        trials.append(row)
    _emit({"backend": _backend.BACKEND, "trials": trials, "failures": failures})
    return ERROR if failures else OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pltr", description="Energy-minimizing deadline scheduling with power-down.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run PLTR on an instance file")
    s.add_argument("instance")
    s.add_argument("--diagnostics", action="store_true", help="keep bound snapshots and check engagement tightness")
    s.add_argument("--schedule-out")
    s.add_argument("--gantt-out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("check", help="feasibility verdict with certificate")
    s.add_argument("instance")
    s.add_argument("--bounds", help="bound profile JSON")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("compare", help="PLTR cost against the brute-force optimum")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("instance", nargs="?")
    src.add_argument("--gen", help='generator spec, e.g. "n=3,d=8,m=2,q=2,seed=7"')
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("oracle", help="brute-force optimal schedule")
    s.add_argument("instance")
    s.add_argument("--cap", type=int, default=2_000_000)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gantt", help="render a schedule JSON as SVG")
    s.add_argument("schedule")
    s.add_argument("out")
    s.add_argument("--q", type=int)
    s.set_defaults(func=cmd_gantt)

    s = sub.add_parser("gen", help="emit random instances as JSON lines")
    s.add_argument("spec", nargs="?", default="")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--feasible-only", action="store_true")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="feasibility-call and busy-interval accounting")
    s.add_argument("--gen", default="n=20,d=10000,m=4,seed=0")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--backend", choices=sorted(_backend.KERNELS))
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pltr: {exc}", file=sys.stderr)
        return ERROR
    except ValueError as exc:
        print(f"pltr: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
