"""Command line interface.

Three subcommands: ``delta`` streams a fixed-error simplification and emits
finalized vertices incrementally, ``k`` streams a fixed-size simplification
and emits the best run's curve at end of input, ``verify`` measures the
Fréchet distance between two curve files against a bound.

Input formats: CSV ("x,y" per line, '#' comments skipped) and JSONL
({"x": ..., "y": ...} per line), auto-detected from the file extension and
overridable with --format.  Output is always CSV with 17 significant digits,
which round-trips doubles losslessly.  A JSON run summary goes to stderr.

Exit codes: 0 success, 1 verification failure, 2 unreadable or malformed
input, 3 parameter outside its domain.
"""

import argparse
import json
import math
import sys
import time

from . import frechet, ksimplify, simplify
from .simplify import SegmentFinalized

__all__ = ["main", "cmd_delta", "cmd_k", "cmd_verify"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_PARAMETER = 3


class _UsageError(Exception):
    pass


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # route argparse failures to exit code 3 instead of its default 2
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(
        prog="streamsimplify",
        description="Streaming polyline simplification with Fréchet-distance "
        "guarantees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_delta = sub.add_parser(
        "delta", help="simplify at a fixed error bound, streaming"
    )
    p_delta.add_argument("--epsilon", type=float, required=True,
                         help="accuracy parameter in (0, 1)")
    p_delta.add_argument("--delta", type=float, required=True,
                         help="error bound, positive")
    _add_input_flags(p_delta)
    p_delta.add_argument(
        "--verify", action="store_true",
        help="store the whole input and check the output against "
        "(1+epsilon)*delta at the end (breaks the streaming memory bound)",
    )
    p_delta.set_defaults(func=cmd_delta)

    p_k = sub.add_parser(
        "k", help="simplify to at most 2k-2 vertices, streaming"
    )
    p_k.add_argument("--k", type=int, required=True,
                     help="size budget parameter, integer >= 2")
    p_k.add_argument("--epsilon", type=float, required=True,
                     help="accuracy parameter in (0, 1/17)")
    _add_input_flags(p_k)
    p_k.add_argument(
        "--verify", action="store_true",
        help="store the whole input and measure the output's Fréchet "
        "distance to it at the end",
    )
    p_k.add_argument("--runs", type=int, default=None,
                     help="override the ladder length (testing aid)")
    p_k.add_argument("--run-eps", type=float, default=None,
                     help="override the per-run epsilon (testing aid)")
    p_k.set_defaults(func=cmd_k)

    p_verify = sub.add_parser(
        "verify", help="compare two curve files against an error bound"
    )
    p_verify.add_argument("--delta", type=float, required=True)
    p_verify.add_argument("--epsilon", type=float, required=True)
    p_verify.add_argument("original", help="path of the reference curve")
    p_verify.add_argument("simplified", help="path of the curve to check")
    p_verify.add_argument("--format", choices=("csv", "jsonl"), default=None)
    p_verify.set_defaults(func=cmd_verify)
    return parser


def _add_input_flags(p):
    p.add_argument("--input", default="-",
                   help="input path, or - for stdin (default)")
    p.add_argument("--format", choices=("csv", "jsonl"), default=None,
                   help="input format; default: by extension, csv otherwise")


def _detect_format(path, override):
    if override is not None:
        return override
    if path.endswith(".jsonl") or path.endswith(".ndjson"):
        return "jsonl"
    return "csv"


def _iter_records(lines, fmt):
    if fmt == "jsonl":
        for n, raw in enumerate(lines, 1):
            s = raw.strip()
            if not s:
                continue
            try:
                obj = json.loads(s)
            except ValueError:
                raise _InputError("line %d: invalid JSON" % n)
            if not isinstance(obj, dict) or "x" not in obj or "y" not in obj:
                raise _InputError('line %d: expected {"x": ..., "y": ...}' % n)
            x, y = obj["x"], obj["y"]
            if isinstance(x, bool) or isinstance(y, bool) or not (
                isinstance(x, (int, float)) and isinstance(y, (int, float))
            ):
                raise _InputError("line %d: x and y must be numbers" % n)
            x = float(x)
            y = float(y)
            if not (math.isfinite(x) and math.isfinite(y)):
                raise _InputError("line %d: non-finite coordinate" % n)
            yield (x, y)
        return
    for n, raw in enumerate(lines, 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split(",")
        if len(parts) != 2:
            raise _InputError("line %d: expected 'x,y'" % n)
        try:
            x = float(parts[0])
            y = float(parts[1])
        except ValueError:
            raise _InputError("line %d: coordinates must be numbers" % n)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise _InputError("line %d: non-finite coordinate" % n)
        yield (x, y)


class _Input:
    # context manager around a path or stdin that never closes stdin
    def __init__(self, path, stdin):
        self.path = path
        self.stdin = stdin
        self.fh = None

    def __enter__(self):
        if self.path == "-":
            return self.stdin
        try:
            self.fh = open(self.path, "r")
        except OSError as e:
            raise _InputError("cannot open %s: %s" % (self.path, e))
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not None:
            self.fh.close()
        return False


def _fmt(v):
    return "%.17g" % v


def _write_point(out, p):
    out.write("%s,%s\n" % (_fmt(p[0]), _fmt(p[1])))


def _load_curve(path, fmt_override, stdin):
    fmt = _detect_format(path if path != "-" else "", fmt_override)
    with _Input(path, stdin) as lines:
        return list(_iter_records(lines, fmt))


def _summary(stderr, **fields):
    stderr.write(json.dumps(fields, sort_keys=True) + "\n")


def cmd_delta(args, stdin, stdout, stderr):
    try:
        sim = simplify.StreamSimplifier(args.epsilon, args.delta)
    except ValueError as e:
        stderr.write("parameter error: %s\n" % e)
        return EXIT_PARAMETER
    full = None
    if args.verify:
        stderr.write(
            "warning: --verify stores the full input in memory, dropping "
            "the streaming storage guarantee\n"
        )
        full = []
    fmt = _detect_format(args.input if args.input != "-" else "", args.format)
    t0 = time.perf_counter()
    peak = 0
    emitted = 0
    try:
        with _Input(args.input, stdin) as lines:
            for v in _iter_records(lines, fmt):
                if full is not None:
                    full.append(v)
                ev = sim.push(v)
                if isinstance(ev, SegmentFinalized):
                    _write_point(stdout, ev.p)
                    _write_point(stdout, ev.q)
                    emitted += 2
                    stdout.flush()
                b = sim.state_bytes()
                if b > peak:
                    peak = b
    except _InputError as e:
        stderr.write("input error: %s\n" % e)
        return EXIT_INPUT
    tail = list(sim.buffer) if sim.vertex_count else []
    for p in tail:
        _write_point(stdout, p)
    stdout.flush()
    wall = time.perf_counter() - t0
    verified = None
    bound = None
    if args.verify and sim.vertex_count:
        curve = sim.curve()
        bound = (1.0 + sim.eps) * sim.delta
        verified = bool(frechet.free_space_decide(curve, full, bound))
    _summary(
        stderr,
        command="delta",
        input_vertices=sim.vertex_count,
        output_vertices=emitted + len(tail),
        epsilon=sim.eps,
        delta=sim.delta,
        verified=verified,
        verified_bound=bound,
        wall_time=wall,
        peak_state_bytes=peak,
    )
    if verified is False:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_k(args, stdin, stdout, stderr):
    try:
        pool = ksimplify.pool_new(
            args.epsilon, args.k, run_eps=args.run_eps, runs=args.runs
        )
    except ValueError as e:
        stderr.write("parameter error: %s\n" % e)
        return EXIT_PARAMETER
    full = None
    if args.verify:
        stderr.write(
            "warning: --verify stores the full input in memory, dropping "
            "the streaming storage guarantee\n"
        )
        full = []
    fmt = _detect_format(args.input if args.input != "-" else "", args.format)
    t0 = time.perf_counter()
    peak = 0
    try:
        with _Input(args.input, stdin) as lines:
            for v in _iter_records(lines, fmt):
                if full is not None:
                    full.append(v)
                pool.push(v)
                if pool.pushed % 32 == 1:
                    b = pool.state_bytes()
                    if b > peak:
                        peak = b
    except _InputError as e:
        stderr.write("input error: %s\n" % e)
        return EXIT_INPUT
    if pool.pushed == 0:
        _summary(
            stderr, command="k", input_vertices=0, output_vertices=0,
            epsilon=pool.eps_user, k=pool.k, delta_estimate=None,
            verified=None, verified_bound=None,
            wall_time=time.perf_counter() - t0, peak_state_bytes=peak,
        )
        return EXIT_OK
    pool.flush()
    b = pool.state_bytes()
    if b > peak:
        peak = b
    curve, estimate = pool.best()
    for p in curve:
        _write_point(stdout, p)
    stdout.flush()
    wall = time.perf_counter() - t0
    verified = None
    bound = None
    distance = None
    if args.verify and full:
        scale = 1.0
        for x, y in full:
            scale = max(scale, abs(x), abs(y))
        vtol = 1e-6 * scale
        distance = frechet.frechet_distance(curve, full, tol=vtol)
        # the run's own guarantee chain: its current error estimate, scaled
        # by the simplify factor and the compress accumulation factor
        run_eps = pool.runs[0].eps
        bound = estimate * (1.0 + run_eps) / (1.0 - 4.0 * run_eps)
        verified = bool(distance <= bound + vtol)
    _summary(
        stderr,
        command="k",
        input_vertices=pool.pushed,
        output_vertices=len(curve),
        epsilon=pool.eps_user,
        k=pool.k,
        delta_estimate=estimate,
        distance=distance,
        verified=verified,
        verified_bound=bound,
        wall_time=wall,
        peak_state_bytes=peak,
    )
    if verified is False:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(args, stdin, stdout, stderr):
    if not (0.0 < args.epsilon < 1.0) or not math.isfinite(args.epsilon):
        stderr.write("parameter error: epsilon must be in (0, 1)\n")
        return EXIT_PARAMETER
    if not (args.delta > 0.0) or not math.isfinite(args.delta):
        stderr.write("parameter error: delta must be positive\n")
        return EXIT_PARAMETER
    try:
        original = _load_curve(args.original, args.format, stdin)
        simplified = _load_curve(args.simplified, args.format, stdin)
    except _InputError as e:
        stderr.write("input error: %s\n" % e)
        return EXIT_INPUT
    if not original or not simplified:
        stderr.write("input error: curves must have at least one vertex\n")
        return EXIT_INPUT
    scale = 1.0
    for x, y in original + simplified:
        scale = max(scale, abs(x), abs(y))
    vtol = 1e-6 * scale
    d = frechet.frechet_distance(original, simplified, tol=vtol)
    bound = (1.0 + args.epsilon) * args.delta
    ok = d <= bound + vtol
    stdout.write("distance %s\n" % _fmt(d))
    stdout.write("bound %s\n" % _fmt(bound))
    stdout.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        stderr.write("parameter error: %s\n" % e)
        return EXIT_PARAMETER
    return args.func(args, stdin, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
