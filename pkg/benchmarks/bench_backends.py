"""Compare the compiled and pure-Python max-flow kernels.

Times raw max-flow on prebuilt networks and full solver runs on the same
instances for each available kernel.

    python benchmarks/bench_backends.py --gen "n=20,d=10000,m=4" --trials 10
"""

import argparse
import statistics
import time

from pltr import _backend, solver
from pltr.flow import build_network, default_bounds, max_flow
from pltr.generate import GenSpec, stream


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--gen", default="n=20,d=10000,m=4,seed=0")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)

    insts = list(stream(GenSpec.parse(args.gen), args.trials, feasible_only=True))
    nets = [build_network(i, default_bounds(i)) for i in insts]
    rows = []
    for name in sorted(_backend.KERNELS):
        flow_t = timed(lambda: [max_flow(net, backend=name) for net in nets], args.repeat)
        prev = _backend.use(name)
        try:
            solve_t = timed(lambda: [solver.run(i) for i in insts], args.repeat)
        finally:
            _backend.use(prev)
        rows.append((name, flow_t, solve_t))

    print(f"{len(insts)} instances from {args.gen!r}, median of {args.repeat}")
    print(f"{'kernel':<10}{'max-flow (s)':>14}{'solve (s)':>12}")
    for name, flow_t, solve_t in rows:
        print(f"{name:<10}{flow_t:>14.4f}{solve_t:>12.4f}")
    if len(rows) == 2:
        (_, fc, sc), (_, fp, sp) = rows
        print(f"speedup   {fp / fc:>13.1f}x{sp / sc:>11.1f}x")


if __name__ == "__main__":
    main()
