"""End-to-end guarantees of the shipped behavior.

Each test here states a user-visible contract of the library: error and size
bounds of the fixed-error stream simplifier, storage and throughput plateaus
on million-vertex streams, the compress scaling contract, prefix stability of
the CLI output, and self-consistency of the distance oracles.

Two tests exercise the fixed-size pipeline at its production accuracy
settings.  Those settings need two to three orders of magnitude more memory
than this host offers (see the messages in the tests); they fail fast with
the resource analysis unless RUN_FULL_LADDER=1 is exported.
"""

import functools
import io
import json
import math
import os
import random
import statistics
import time
from collections import deque

import pytest

from streamsimplify import (
    cli,
    compress,
    frechet_distance,
    free_space_decide,
    min_vertex_restricted_size,
    pool_best,
    pool_flush,
    pool_new,
    pool_push,
    segment_curve_decide,
    simplifier_new,
    simplifier_push,
    simplify_static,
)

from oracles import (
    dense_frechet,
    min_size_subset,
    min_size_subset_span,
    point_to_segment,
    refine_k_curve,
    subsample_starts,
)
from streams import curve_scale, smoothed_walk, walk, zigzag
from test_stabber import _sampling_equivalence


# ---------------------------------------------------------------- error bound


def _stream_family(rng, family, n, delta):
    if family == "walk":
        step = rng.choice([0.1, 0.3, 1.0]) * delta
        return walk(n, rng.randrange(1 << 30), step)
    amp = rng.choice([0.5, 2.0, 5.0]) * delta
    dx = rng.choice([0.25, 0.5, 2.0]) * delta
    return zigzag(n, dx, amp)


def test_error_bound_holds_on_500_random_streams():
    rng = random.Random(20260814)
    combos = [(e, d) for e in (0.5, 0.25, 0.1) for d in (0.1, 1.0, 10.0)]
    ncap = {0.5: 200, 0.25: 160, 0.1: 80}
    t0 = time.perf_counter()
    streams = 0
    for eps, delta in combos:
        for i in range(56):
            n = rng.randint(20, ncap[eps])
            pts = _stream_family(rng, "walk" if i % 2 else "zigzag", n, delta)
            streams += 1
            s = simplifier_new(eps, delta)
            bound = (1 + eps) * delta + 1e-6 * curve_scale(pts)
            for j, p in enumerate(pts):
                simplifier_push(s, p)
                if (j + 1) % 10 == 0 or j == len(pts) - 1:
                    assert free_space_decide(s.curve(), pts[: j + 1], bound)
    assert streams >= 500
    print("error bound sweep: %.1fs" % (time.perf_counter() - t0))


# ----------------------------------------------------------------- size bound


def test_output_never_exceeds_twice_restricted_optimum_minus_two():
    rng = random.Random(7)
    for t in range(200):
        n = rng.randint(5, 40)
        fam = t % 3
        if fam == 0:
            pts = walk(n, 1000 + t, 1.0)
        elif fam == 1:
            pts = smoothed_walk(n, 1000 + t, 1.0, 3)
        else:
            pts = zigzag(n, rng.uniform(0.3, 1.5), rng.uniform(0.2, 3.0))
        delta = rng.uniform(0.1, 0.8) * max(1.0, curve_scale(pts) / 10)
        eps = rng.choice([0.8, 0.5, 0.25])
        out, _, _ = simplify_static(pts, eps, delta)
        kvr = min_vertex_restricted_size(pts, delta)
        assert len(out) <= 2 * kvr - 2


# --------------------------------------------------------- frontier semantics


def test_frontier_agrees_with_direct_stabbing_checks():
    # membership in a frontier cell must coincide with the stabbing
    # predicate evaluated from scratch, outside boundary slack
    _sampling_equivalence(0.5, 0.7, 101, 8, 100, 1)
    _sampling_equivalence(0.25, 1.0, 102, 6, 60, 16)


# ------------------------------------------- million-vertex storage and speed


def _walk_iter(n, seed, step):
    rng = random.Random(seed)
    x = y = 0.0
    for _ in range(n):
        yield (x, y)
        a = rng.uniform(0.0, 2.0 * math.pi)
        r = step * rng.random()
        x += r * math.cos(a)
        y += r * math.sin(a)


@pytest.fixture(scope="module")
def million_vertex_run():
    n = 1_000_000
    probe = 100_000
    sim = simplifier_new(0.25, 1.0)
    peaks = {}
    peak_total = peak_bytes = peak_cell = 0
    head = []
    tail = deque(maxlen=probe)
    for i, p in enumerate(_walk_iter(n, 20260814, 0.3)):
        t0 = time.perf_counter()
        simplifier_push(sim, p)
        dt = time.perf_counter() - t0
        if i < probe:
            head.append(dt)
        tail.append(dt)
        tot = sim.frontier.total_cell_vertices()
        if tot > peak_total:
            peak_total = tot
        b = sim.state_bytes()
        if b > peak_bytes:
            peak_bytes = b
        c = sim.frontier.max_cell_vertices()
        if c > peak_cell:
            peak_cell = c
        if i + 1 in (1000, n):
            peaks[i + 1] = (peak_total, peak_bytes)
    return {
        "peaks": peaks,
        "peak_cell": peak_cell,
        "median_first": statistics.median(head),
        "median_last": statistics.median(tail),
        "output": len(sim.curve()),
    }


def test_storage_plateaus_within_five_percent(million_vertex_run):
    small = million_vertex_run["peaks"][1000]
    big = million_vertex_run["peaks"][1_000_000]
    assert big[0] <= 1.05 * small[0]
    assert big[1] <= 1.05 * small[1]


def test_per_cell_storage_stays_under_frozen_bound(million_vertex_run):
    # 9 vertices per cell per unit of accuracy squared, frozen at bring-up
    assert million_vertex_run["peak_cell"] <= 9.0 / 0.25 ** 2


def test_throughput_does_not_degrade_with_stream_position(million_vertex_run):
    assert million_vertex_run["median_last"] <= 2.0 * million_vertex_run["median_first"]


# ----------------------------------------------------------- compress scaling


def test_compress_size_and_scale_contract():
    rng = random.Random(202)
    for _ in range(200):
        k = rng.randint(2, 6)
        n = 2 * k - 1
        while True:
            pts = [(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(n)]
            clear = min(
                point_to_segment(pts[i], pts[i - 1], pts[i + 1])
                for i in range(1, n - 1, 2)
            )
            if clear > 2e-6:
                break
        threshold = 0.5 * clear
        eps = rng.choice([0.3, 0.5, 0.8])
        delta = rng.uniform(1e-4, 2 * threshold)
        out, new_delta, _, _ = compress(pts, eps, k, delta)
        assert len(out) <= 2 * k - 2
        t = 1
        while delta * eps ** (-t) < threshold:
            t += 1
        assert new_delta == pytest.approx(delta * eps ** (-t), rel=1e-12)


# ------------------------------------------- fixed-size accuracy (full scale)


def _accuracy_instances():
    shapes = [
        (zigzag(9, 1.0, 2.0), 2),
        (zigzag(21, 1.0, 5.0), 2),
        (zigzag(13, 0.7, 3.0), 3),
        (zigzag(25, 1.0, 1.5), 3),
        (zigzag(33, 0.5, 2.0), 4),
        (smoothed_walk(40, 1, 1.0, 4), 2),
        (smoothed_walk(50, 2, 1.0, 4), 3),
        (smoothed_walk(60, 3, 0.8, 4), 4),
        (smoothed_walk(45, 4, 1.2, 4), 3),
        (smoothed_walk(55, 5, 0.7, 4), 2),
    ]
    return [(pts, k, eps) for eps in (0.04, 0.02) for pts, k in shapes]


_LADDER_ANALYSIS = (
    "the full accuracy ladder at epsilon=0.04 holds 1383 concurrent runs of "
    "~2.4e6 anchors each (about 53 GB of anchor state and roughly 55 hours "
    "single-core); at epsilon=0.02 it is 3110 runs of ~9.6e6 anchors (about "
    "477 GB). This host has 5 GB of memory and one CPU. Export "
    "RUN_FULL_LADDER=1 to attempt the computation anyway."
)


@functools.lru_cache(maxsize=1)
def _full_ladder_results():
    results = []
    for pts, k, eps_user in _accuracy_instances():
        pool = pool_new(eps_user, k)
        for p in pts:
            pool_push(pool, p)
        pool_flush(pool)
        curve, d_best = pool_best(pool)
        fd = lambda cand: frechet_distance(cand, pts)
        best = math.inf
        for start in subsample_starts(pts, k):
            got = refine_k_curve(pts, k, [start], fd)
            if got[1] < best:
                best = got[1]
        results.append((pts, k, eps_user, curve, d_best, best))
    return results


def test_fixed_size_output_beats_scaled_optimum():
    if not os.environ.get("RUN_FULL_LADDER"):
        pytest.fail("not attempted: " + _LADDER_ANALYSIS, pytrace=False)
    for pts, k, eps_user, curve, d_best, d_star in _full_ladder_results():
        assert len(curve) <= 2 * k - 2
        d = frechet_distance(curve, pts)
        assert d <= (1 + eps_user) * d_star * (1 + 1e-3)


def test_best_run_estimate_close_to_optimum():
    if not os.environ.get("RUN_FULL_LADDER"):
        pytest.fail("not attempted: " + _LADDER_ANALYSIS, pytrace=False)
    for pts, k, eps_user, curve, d_best, d_star in _full_ladder_results():
        assert d_best <= (1 + 8 * eps_user / 10) * d_star * (1 + 1e-3)


# ------------------------------------------------------ CLI prefix stability


def _cli_delta_output(pts, eps, delta):
    out = io.StringIO()
    err = io.StringIO()
    text = "".join("%r,%r\n" % p for p in pts)
    code = cli.main(
        ["delta", "--epsilon", str(eps), "--delta", str(delta)],
        stdin=io.StringIO(text), stdout=out, stderr=err,
    )
    assert code == 0
    summary = json.loads(err.getvalue().strip().splitlines()[-1])
    lines = out.getvalue().splitlines(keepends=True)
    v = summary["output_vertices"]
    assert len(lines) == v
    tail = 1 if v % 2 else 2
    if v == 0:
        tail = 0
    return "".join(lines[: v - tail])


def test_finalized_output_is_prefix_stable_under_extension():
    rng = random.Random(909)
    for t in range(50):
        n = rng.randint(30, 120)
        m = rng.randint(10, n - 5)
        delta = rng.choice([0.3, 1.0])
        eps = rng.choice([0.5, 0.25])
        if t % 2:
            pts = walk(n, 7000 + t, 1.2 * delta)
        else:
            pts = zigzag(n, 0.8 * delta, 3.0 * delta)
        short = _cli_delta_output(pts[:m], eps, delta)
        long = _cli_delta_output(pts, eps, delta)
        assert long.startswith(short)


# ------------------------------------------------------- oracle consistency


def test_distance_agrees_with_dense_matching():
    rng = random.Random(414)
    for t in range(30):
        na, nb = rng.randint(2, 12), rng.randint(2, 12)
        a = walk(na, 8000 + t, 1.0)
        b = walk(nb, 8500 + t, 1.0)
        sc = max(curve_scale(a), curve_scale(b))
        tol = 1e-6 * sc
        v = frechet_distance(a, b, tol=tol)
        spacing = max(v / 150.0, 1e-4 * sc)
        dv = dense_frechet(a, b, spacing)
        assert dv - spacing - tol <= v <= dv + tol


def test_restricted_size_matches_exhaustive_subset_search():
    rng = random.Random(515)
    for t in range(100):
        n = rng.randint(3, 10)
        pts = walk(n, 9000 + t, 1.0)
        delta = rng.uniform(0.2, 1.2)
        got = min_vertex_restricted_size(pts, delta)
        brute = min_size_subset_span(pts, delta, segment_curve_decide)
        assert got == brute
        if t < 60:
            free = min_size_subset(
                pts, delta, lambda c, cur, d: free_space_decide(c, cur, d)
            )
            assert free <= got
