"""Streaming simplification at a fixed error budget.

``StreamSimplifier`` consumes vertices one at a time and maintains an output
polyline whose Fréchet distance to the consumed prefix stays within
(1+eps)*delta, using working storage that depends only on eps (not on the
stream length).  The output is the even-length list of finalized vertices
(two per finalized segment, immutable once emitted) followed by the current
buffer: one point right after a (re)start, otherwise the witness pair (p, q)
of the live frontier.

Pushing a vertex advances the live frontier with the vertex's cover hull.
If any cell survives, the buffer is refreshed with the new witness.  If the
advance empties every cell, the buffer pair is finalized and a fresh
frontier is started at the just-pushed vertex, whose own cover gets no
advance (the next vertex advances it).
"""

import math
from dataclasses import dataclass

from . import cover
from .stabber import Frontier

__all__ = [
    "Started",
    "BufferUpdated",
    "SegmentFinalized",
    "StreamSimplifier",
    "simplifier_new",
    "simplifier_push",
    "simplifier_curve",
    "simplifier_finish",
    "simplify_static",
]


@dataclass(frozen=True)
class Started:
    """First vertex accepted; the output curve is that single point."""

    vertex: tuple


@dataclass(frozen=True)
class BufferUpdated:
    """Frontier survived the advance; (p, q) is the new buffer segment."""

    p: tuple
    q: tuple


@dataclass(frozen=True)
class SegmentFinalized:
    """The previous buffer (p, q) was emitted and a restart happened at the
    pushed vertex."""

    p: tuple
    q: tuple


def _check_point(v):
    x = float(v[0])
    y = float(v[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("vertex coordinates must be finite")
    return (x, y)


class StreamSimplifier:
    """One streaming simplification run at fixed (eps, delta)."""

    __slots__ = (
        "eps",
        "delta",
        "template",
        "emitted",
        "buffer",
        "frontier",
        "init_flag",
        "vertex_count",
        "_backend",
        "_finished",
    )

    def __init__(self, eps, delta, backend=None):
        eps = float(eps)
        delta = float(delta)
        if not (0.0 < eps < 1.0):
            raise ValueError("eps must be in (0, 1)")
        if not (delta > 0.0 and math.isfinite(delta)):
            raise ValueError("delta must be positive and finite")
        self.eps = eps
        self.delta = delta
        self.template = cover.make_template(eps, delta)
        self.emitted = []
        self.buffer = []
        self.frontier = None
        self.init_flag = False
        self.vertex_count = 0
        self._backend = backend
        self._finished = False

    def push(self, v):
        if self._finished:
            raise ValueError("push after finish")
        v = _check_point(v)
        self.vertex_count += 1
        if not self.init_flag:
            self.frontier = Frontier.at_cover(self.template, v, self._backend)
            self.buffer = [v]
            self.init_flag = True
            return Started(v)
        all_empty = self.frontier.advance_cover(self.template, v)
        if not all_empty:
            p, q = self.frontier.witness()
            self.buffer = [p, q]
            return BufferUpdated(p, q)
        # a fresh frontier survives its first advance, so the buffer always
        # holds a full pair here
        fp, fq = self.buffer
        self.emitted.append(fp)
        self.emitted.append(fq)
        self.frontier = Frontier.at_cover(self.template, v, self._backend)
        self.buffer = [v]
        return SegmentFinalized(fp, fq)

    def curve(self):
        """Current output polyline: finalized vertices plus the buffer."""
        if not self.init_flag:
            raise ValueError("no vertices pushed yet")
        return self.emitted + self.buffer

    def finish(self):
        """Final (curve, anchors, frontier); the state stops accepting
        pushes."""
        if not self.init_flag:
            raise ValueError("no vertices pushed yet")
        self._finished = True
        return self.curve(), self.frontier.anchors, self.frontier

    def state_bytes(self):
        """Logical size of the working state (frontier plus live buffer).
        Finalized vertices are output, not working storage, and are not
        counted even though ``emitted`` retains them for ``curve``."""
        fr = self.frontier.state_bytes() if self.frontier is not None else 0
        return fr + 16 * len(self.buffer)


def simplifier_new(eps, delta):
    return StreamSimplifier(eps, delta)


def simplifier_push(state, v):
    return state.push(v)


def simplifier_curve(state):
    return state.curve()


def simplifier_finish(state):
    return state.finish()


def simplify_static(curve, eps, delta, backend=None):
    """Batch wrapper: push every vertex of ``curve`` and finish.

    Returns (output curve, anchors, frontier) exactly as the streaming run
    would."""
    if not len(curve):
        raise ValueError("curve must have at least one vertex")
    sim = StreamSimplifier(eps, delta, backend=backend)
    for v in curve:
        sim.push(v)
    return sim.finish()
