"""Backend benchmark: pure Python versus the compiled kernel.

Runs the same fixed-error simplification over one generated stream with each
available backend, checks that the outputs are bit-identical, and reports
vertices per second.  Usage:

    python -m streamsimplify.bench [--n N] [--eps E] [--delta D] [--seed S]
"""

import argparse
import random
import time

from . import simplify, stabber


def make_walk(n, seed, step=0.3):
    rng = random.Random(seed)
    pts = []
    x = y = 0.0
    for _ in range(n):
        pts.append((x, y))
        x += rng.uniform(-step, step)
        y += rng.uniform(-step, step)
    return pts


def run_backend(stream, eps, delta, backend):
    sim = simplify.StreamSimplifier(eps, delta, backend=backend)
    t0 = time.perf_counter()
    for v in stream:
        sim.push(v)
    wall = time.perf_counter() - t0
    curve, _, _ = sim.finish()
    return curve, wall


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="python -m streamsimplify.bench", description=__doc__
    )
    parser.add_argument("--n", type=int, default=20000)
    parser.add_argument("--eps", type=float, default=0.25)
    parser.add_argument("--delta", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=20240817)
    args = parser.parse_args(argv)

    stream = make_walk(args.n, args.seed)
    backends = stabber.available_backends()
    print("backends: %s" % (", ".join(backends)))
    results = {}
    for backend in backends:
        curve, wall = run_backend(stream, args.eps, args.delta, backend)
        results[backend] = (curve, wall)
        rate = args.n / wall if wall > 0 else float("inf")
        print(
            "%-4s  %8.3f s  %10.0f vertices/s  output %d"
            % (backend, wall, rate, len(curve))
        )
    if len(results) == 2:
        py_curve = results["py"][0]
        fast_curve = results["fast"][0]
        if py_curve == fast_curve:
            print("outputs bit-identical: yes")
        else:
            print("outputs bit-identical: NO (backend divergence!)")
            return 1
        speedup = results["py"][1] / results["fast"][1]
        print("speedup: %.1fx" % speedup)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
