"""Streaming simplification at a fixed output size budget.

Instead of a fixed error, the caller fixes the vertex budget (at most 2k-2
output vertices once the stream is longer than 2k-1) and the algorithm
searches the error scale.  One ``ReduceState`` is a single run: it fills a
(2k-1)-vertex prefix, derives an initial error from the prefix geometry,
then streams like the delta simplifier, except that running out of vertex
budget triggers ``compress``: the current output plus the new vertex (a
(2k-1)-vertex curve) is re-simplified at a geometrically larger error, which
restores the size budget.  A ``RunPool`` runs a ladder of such runs whose
initial errors form a geometric progression and answers queries from the run
with the smallest current error.

All runs consume the same deduplicated stream: a shared collinearity filter
holds back the newest vertex and drops it if it turns out collinear with its
neighbours (which would break the prefix-based error lower bound).
"""

import math

from . import cover, geom
from .simplify import StreamSimplifier
from .stabber import Frontier

__all__ = [
    "FILLING",
    "STREAMING",
    "CollinearFilter",
    "collinear_filter_push",
    "collinear_filter_flush",
    "delta_min",
    "compress",
    "ReduceState",
    "reduce_new",
    "reduce_push",
    "RunPool",
    "pool_new",
    "pool_push",
    "pool_flush",
    "pool_best",
]

FILLING = "filling"
STREAMING = "streaming"

# Per-run eps above this bound invalidates the error-ladder constants (the
# (1-4*eps) factor and the run guarantees degrade); user-facing eps is a
# further factor 10 smaller.
_MAX_RUN_EPS = 1.0 / 17.0


def _check_point(v):
    x = float(v[0])
    y = float(v[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("vertex coordinates must be finite")
    return (x, y)


class CollinearFilter:
    """Latency-one filter that forwards a vertex only once the next vertex
    shows it is not collinear with its neighbours.

    Exact consecutive duplicates are dropped too (a duplicate is a degenerate
    collinear triple).  ``flush`` releases the held vertex at end of
    stream."""

    __slots__ = ("last", "held", "flushed")

    def __init__(self):
        self.last = None
        self.held = None
        self.flushed = False

    def push(self, v):
        if self.flushed:
            raise ValueError("push after flush")
        v = _check_point(v)
        if self.held is None:
            self.held = v
            return []
        if self.last is None:
            if v == self.held:
                return []
            out = [self.held]
            self.last = self.held
            self.held = v
            return out
        if geom.orient(self.last, self.held, v) == 0:
            self.held = v
            return []
        out = [self.held]
        self.last = self.held
        self.held = v
        return out

    def flush(self):
        self.flushed = True
        if self.held is None:
            return []
        out = [self.held]
        self.held = None
        return out


def collinear_filter_push(filt, v):
    return filt.push(v)


def collinear_filter_flush(filt):
    return filt.flush()


def delta_min(prefix):
    """Half the smallest distance from an interior vertex to the chord of
    its neighbours; a certified lower bound on the error of any simplification
    of ``prefix`` to fewer vertices."""
    n = len(prefix)
    if n < 3 or n % 2 == 0:
        raise ValueError("prefix must hold exactly 2k-1 vertices, k >= 2")
    best = math.inf
    for i in range(1, n - 1):
        d = geom.point_segment_distance(prefix[i], prefix[i - 1], prefix[i + 1])
        if d < best:
            best = d
    if not (best > 0.0):
        raise ValueError("collinear triple reached delta_min")
    return 0.5 * best


def _compress_threshold(curve):
    # half the smallest even-position vertex-to-chord distance (1-based
    # positions 2, 4, ...; these are the candidate shortcut interiors)
    n = len(curve)
    best = math.inf
    for i in range(1, n - 1, 2):
        d = geom.point_segment_distance(curve[i], curve[i - 1], curve[i + 1])
        if d < best:
            best = d
    return 0.5 * best


def _compress_run(curve, eps, k, delta, backend=None):
    n = len(curve)
    if n != 2 * k - 1:
        raise ValueError("compress needs exactly 2k-1 vertices")
    if not (delta > 0.0 and math.isfinite(delta)):
        raise ValueError("delta must be positive and finite")
    threshold = _compress_threshold(curve)
    # smallest t >= 1 with delta/eps^t reaching the threshold
    new_delta = delta / eps
    while new_delta < threshold:
        new_delta = new_delta / eps
    sim = StreamSimplifier(eps, new_delta, backend=backend)
    for v in curve:
        sim.push(v)
    return sim, new_delta


def compress(curve, eps, k, delta, backend=None):
    """Re-simplify a (2k-1)-vertex curve at the smallest error of the form
    delta/eps^t (integer t >= 1) that guarantees at most 2k-2 output
    vertices.  Returns (output curve, that error, anchors, live frontier)."""
    sim, new_delta = _compress_run(curve, eps, k, delta, backend)
    out, anchors, frontier = sim.finish()
    return out, new_delta, anchors, frontier


class ReduceState:
    """One size-budgeted streaming run (ladder rung ``r``)."""

    __slots__ = (
        "r",
        "eps",
        "k",
        "phase",
        "prefix",
        "delta_min_value",
        "delta",
        "sigma",
        "last_len",
        "frontier",
        "template",
        "vertex_count",
        "_backend",
    )

    def __init__(self, r, eps, k, backend=None):
        if int(r) != r or r < 1:
            raise ValueError("r must be an integer >= 1")
        eps = float(eps)
        if not (0.0 < eps <= _MAX_RUN_EPS):
            raise ValueError("per-run eps must be in (0, 1/17]")
        if int(k) != k or k < 2:
            raise ValueError("k must be an integer >= 2")
        self.r = int(r)
        self.eps = eps
        self.k = int(k)
        self.phase = FILLING
        self.prefix = []
        self.delta_min_value = None
        self.delta = 0.0
        self.sigma = []
        self.last_len = 0
        self.frontier = None
        self.template = None
        self.vertex_count = 0
        self._backend = backend

    @property
    def anchors(self):
        return self.frontier.anchors if self.frontier is not None else ()

    def current_curve(self):
        if self.phase == FILLING:
            return list(self.prefix)
        return list(self.sigma)

    def _adopt(self, sim, new_delta):
        self.sigma = list(sim.emitted)
        self.sigma.extend(sim.buffer)
        self.last_len = len(sim.buffer)
        self.frontier = sim.frontier
        self.template = sim.template
        self.delta = new_delta

    def push(self, v):
        v = _check_point(v)
        self.vertex_count += 1
        if self.phase == FILLING:
            self.prefix.append(v)
            if len(self.prefix) == 2 * self.k - 1:
                dmin = delta_min(self.prefix)
                self.delta_min_value = dmin
                eps = self.eps
                seed = (
                    eps
                    * (1.0 + eps) ** (self.r + 1)
                    / (1.0 - 4.0 * eps)
                    * dmin
                )
                sim, new_delta = _compress_run(
                    self.prefix, eps, self.k, seed, self._backend
                )
                self._adopt(sim, new_delta)
                self.phase = STREAMING
                self.prefix = []
            return
        all_empty = self.frontier.advance_cover(self.template, v)
        if not all_empty:
            p, q = self.frontier.witness()
            del self.sigma[len(self.sigma) - self.last_len :]
            self.sigma.append(p)
            self.sigma.append(q)
            self.last_len = 2
        elif len(self.sigma) < 2 * self.k - 2:
            self.frontier = Frontier.at_cover(self.template, v, self._backend)
            self.sigma.append(v)
            self.last_len = 1
        else:
            curve = list(self.sigma)
            curve.append(v)
            sim, new_delta = _compress_run(
                curve, self.eps, self.k, self.delta, self._backend
            )
            self._adopt(sim, new_delta)

    def state_bytes(self):
        fr = self.frontier.state_bytes() if self.frontier is not None else 0
        return fr + 16 * (len(self.sigma) + len(self.prefix))


def reduce_new(r, eps, k, backend=None):
    return ReduceState(r, eps, k, backend=backend)


def reduce_push(state, v):
    state.push(v)
    return state


class RunPool:
    """Ladder of independent runs behind one collinearity filter."""

    __slots__ = ("eps_user", "k", "runs", "filter", "pushed", "_backend")

    def __init__(self, eps_user, k, run_eps=None, runs=None, backend=None):
        eps_user = float(eps_user)
        if not (0.0 < eps_user < _MAX_RUN_EPS):
            raise ValueError("eps_user must be in (0, 1/17)")
        if int(k) != k or k < 2:
            raise ValueError("k must be an integer >= 2")
        if run_eps is None:
            run_eps = eps_user / 10.0
        else:
            run_eps = float(run_eps)
        if runs is None:
            runs = int(
                math.floor(
                    math.log(10.0 / eps_user) / math.log(1.0 + eps_user / 10.0)
                )
            )
        else:
            if int(runs) != runs or runs < 1:
                raise ValueError("runs must be an integer >= 1")
            runs = int(runs)
        self.eps_user = eps_user
        self.k = int(k)
        self.runs = [
            ReduceState(r, run_eps, k, backend=backend)
            for r in range(1, runs + 1)
        ]
        self.filter = CollinearFilter()
        self.pushed = 0
        self._backend = backend

    def _feed(self, points):
        for p in points:
            for run in self.runs:
                run.push(p)

    def push(self, v):
        self.pushed += 1
        self._feed(self.filter.push(v))

    def flush(self):
        self._feed(self.filter.flush())

    def best(self):
        if self.pushed == 0:
            raise ValueError("no vertices pushed yet")
        first = self.runs[0]
        if first.phase == FILLING:
            curve = list(first.prefix)
            if self.filter.held is not None:
                curve.append(self.filter.held)
            return curve, 0.0
        best = first
        for run in self.runs[1:]:
            if run.delta < best.delta:
                best = run
        return list(best.sigma), best.delta

    def state_bytes(self):
        return sum(run.state_bytes() for run in self.runs)


def pool_new(eps_user, k, *, run_eps=None, runs=None, backend=None):
    """Run pool sized by the standard ladder formula.

    ``run_eps`` and ``runs`` override the per-run eps (default eps_user/10)
    and the ladder length; they exist for tests and experiments that need
    reduced-scale pools, and leave each run's own guarantees intact."""
    return RunPool(eps_user, k, run_eps=run_eps, runs=runs, backend=backend)


def pool_push(pool, v):
    pool.push(v)


def pool_flush(pool):
    """Release the collinearity filter's held vertex into every run; call
    once at end of stream before the final ``pool_best``."""
    pool.flush()


def pool_best(pool):
    """(curve, delta) of the run with the smallest current error (ties:
    lowest rung).  While fewer than 2k-1 filtered vertices have arrived the
    exact prefix is returned with delta 0."""
    return pool.best()
