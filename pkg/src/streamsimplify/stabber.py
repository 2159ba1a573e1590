"""Per-anchor stabbing frontiers.

A frontier belongs to one output segment of the streaming simplifier.  It
pins the anchor set P of the segment's start cover and, for each anchor p,
maintains the cell S[p]: the convex set of points y inside the most recent
cover hull such that the segment py stabs, in order, every cover hull seen
since the frontier was created.  Advancing with the next hull applies

    S'[p] = hull ∩ shadow_region(S[p], p)

per anchor.  Empty cells are tombstoned (they stay empty forever and keep
anchor indexing stable).  When every cell is empty the caller finalizes the
segment and builds a fresh frontier.

Two interchangeable backends exist: a compiled kernel (streamsimplify
._fastcore) and this file's pure Python path.  Both execute the same
floating-point operations in the same order, so their outputs are
bit-identical; selection happens per frontier, defaulting to the compiled
kernel when it is importable.  Set SIMPLIFY_BACKEND=py or =fast to force one
globally.
"""

import os

import numpy as np

from . import cover, geom

try:
    from . import _fastcore
except ImportError:
    _fastcore = None

__all__ = [
    "Frontier",
    "frontier_init",
    "frontier_advance",
    "frontier_witness",
    "default_backend",
    "available_backends",
]

_ENV_BACKEND = os.environ.get("SIMPLIFY_BACKEND", "auto").strip().lower()


def available_backends():
    return ("py", "fast") if _fastcore is not None else ("py",)


def default_backend():
    """Backend used when none is requested explicitly."""
    if _ENV_BACKEND == "py":
        return "py"
    if _ENV_BACKEND == "fast":
        if _fastcore is None:
            raise RuntimeError(
                "SIMPLIFY_BACKEND=fast but the compiled kernel is not available"
            )
        return "fast"
    return "fast" if _fastcore is not None else "py"


def _resolve(backend):
    if backend is None:
        return default_backend()
    if backend not in ("py", "fast"):
        raise ValueError("backend must be 'py' or 'fast'")
    if backend == "fast" and _fastcore is None:
        raise RuntimeError("compiled kernel is not available")
    return backend


class _PyCore:
    """Reference implementation of the frontier kernel.

    The compiled kernel mirrors this code operation for operation; any
    change here must be reflected there to keep the backends bit-equal.
    """

    __slots__ = ("anchors", "cells", "factor", "scale", "nonempty", "total")

    def __init__(self, anchors, factor):
        self.anchors = [(float(x), float(y)) for x, y in anchors]
        if not self.anchors:
            raise ValueError("frontier needs at least one anchor")
        self.cells = [[p] for p in self.anchors]
        self.factor = factor
        s = 1.0
        for x, y in self.anchors:
            ax = abs(x)
            ay = abs(y)
            if ax > s:
                s = ax
            if ay > s:
                s = ay
        self.scale = s
        self.nonempty = len(self.anchors)
        self.total = len(self.anchors)

    def advance(self, hull):
        s = self.scale
        for x, y in hull:
            ax = abs(x)
            ay = abs(y)
            if ax > s:
                s = ax
            if ay > s:
                s = ay
        self.scale = s
        tol = self.factor * s
        nonempty = 0
        total = 0
        anchors = self.anchors
        cells = self.cells
        for i in range(len(anchors)):
            cur = cells[i]
            if not cur:
                continue
            sh = geom.shadow_region(cur, anchors[i], tol)
            new = geom.clip_by_shadow(hull, sh, tol)
            cells[i] = new
            if new:
                nonempty += 1
                total += len(new)
        self.nonempty = nonempty
        self.total = total
        return nonempty == 0

    def witness(self):
        cells = self.cells
        for i in range(len(cells)):
            cur = cells[i]
            if cur:
                px, py = self.anchors[i]
                best = -1.0
                bx = by = 0.0
                for x, y in cur:
                    dx = x - px
                    dy = y - py
                    d = dx * dx + dy * dy
                    if d > best:
                        best = d
                        bx = x
                        by = y
                return (px, py), (bx, by)
        raise ValueError("witness of an all-empty frontier")

    def anchor_count(self):
        return len(self.anchors)

    def anchor(self, i):
        return self.anchors[i]

    def cell(self, i):
        return list(self.cells[i])

    def max_cell(self):
        m = 0
        for c in self.cells:
            if len(c) > m:
                m = len(c)
        return m


class Frontier:
    """Anchor set plus per-anchor cells; see the module docstring.

    ``anchors`` preserves the order it was given (covers supply them in a
    deterministic lexicographic layout).  ``nonempty_count`` is the number of
    anchors whose cell is currently nonempty.
    """

    __slots__ = ("_core", "_backend")

    def __init__(self, anchors, backend=None):
        backend = _resolve(backend)
        factor = geom.tolerance_factor()
        if backend == "fast":
            arr = np.asarray(anchors, dtype=np.float64).reshape(-1, 2)
            if arr.shape[0] == 0:
                raise ValueError("frontier needs at least one anchor")
            self._core = _fastcore.FastCore(arr, factor)
        else:
            self._core = _PyCore(anchors, factor)
        self._backend = backend

    @classmethod
    def at_cover(cls, template, center, backend=None):
        """Fresh frontier whose anchors are the cover's grid corners at
        ``center``; avoids materializing the anchor tuples on the compiled
        path."""
        backend = _resolve(backend)
        self = cls.__new__(cls)
        self._backend = backend
        factor = geom.tolerance_factor()
        cx, cy = float(center[0]), float(center[1])
        if backend == "fast":
            self._core = _fastcore.FastCore.translated(
                template._offsets_np, cx, cy, factor
            )
        else:
            self._core = _PyCore(cover.anchors_at(template, (cx, cy)), factor)
        return self

    @property
    def backend(self):
        return self._backend

    @property
    def nonempty_count(self):
        return self._core.nonempty

    @property
    def anchors(self):
        core = self._core
        return tuple(core.anchor(i) for i in range(core.anchor_count()))

    def anchor_count(self):
        return self._core.anchor_count()

    def advance(self, hull):
        """Advance every live cell with the next cover hull (a canonical
        convex polygon).  Returns True when the advance left all cells
        empty."""
        if not len(hull):
            raise ValueError("advance needs a nonempty hull")
        if self._backend == "fast":
            arr = np.asarray(hull, dtype=np.float64).reshape(-1, 2)
            return bool(self._core.advance(arr))
        return self._core.advance([(float(x), float(y)) for x, y in hull])

    def advance_cover(self, template, center):
        """Advance with the cover hull at ``center``; hot-path variant of
        ``advance`` that translates the template inside the kernel."""
        cx, cy = float(center[0]), float(center[1])
        if self._backend == "fast":
            return bool(
                self._core.advance_translated(template._hull_np, cx, cy)
            )
        return self._core.advance(cover.hull_at(template, (cx, cy)))

    def witness(self):
        """(p, q): first anchor in order with a nonempty cell, and the cell
        vertex farthest from it (ties: lowest vertex index)."""
        return self._core.witness()

    def cell(self, i):
        """Copy of anchor i's cell as a canonical polygon (possibly [])."""
        return self._core.cell(i)

    def cells(self):
        core = self._core
        return [core.cell(i) for i in range(core.anchor_count())]

    def total_cell_vertices(self):
        return self._core.total

    def max_cell_vertices(self):
        return self._core.max_cell()

    def state_bytes(self):
        """Logical state size: 16 bytes per stored coordinate pair (anchors
        and cell vertices), independent of backend allocation policy."""
        core = self._core
        return 16 * (core.anchor_count() + core.total)


def frontier_init(anchors, backend=None):
    """New frontier over the given anchor sequence; every cell starts as the
    degenerate polygon {p}."""
    return Frontier(anchors, backend)


def frontier_advance(frontier, hull):
    """Advance and return (frontier, all_empty).  The pre-advance cell
    contents are consumed."""
    all_empty = frontier.advance(hull)
    return frontier, all_empty


def frontier_witness(frontier):
    return frontier.witness()
