"""Grid ball covers.

For accuracy eps and radius delta, the cover of a point x is the set of axis
grid cells (side eps*delta/(2*sqrt(2)), grid anchored at x) that intersect the
closed disk of radius (1+eps/2)*delta around x.  A template built at the
origin stores the cell-corner offsets and their convex hull once per
(eps, delta); covers at arbitrary centers are exact translates of it, so the
anchor sets of equal templates are bitwise-identical up to the added center.
"""

import math
import threading
from dataclasses import dataclass

from . import geom

__all__ = ["CoverTemplate", "make_template", "cover_at", "clear_template_cache"]


@dataclass(frozen=True)
class CoverTemplate:
    eps: float
    delta: float
    cell_side: float
    corner_offsets: tuple  # lexicographically sorted (x, y) tuples
    hull: tuple            # canonical CCW polygon of the cover, as offsets


_cache = {}
_cache_lock = threading.Lock()


def _build(eps, delta):
    side = eps * delta / (2.0 * math.sqrt(2.0))
    radius = (1.0 + eps / 2.0) * delta
    r2 = radius * radius
    span = int(math.ceil(radius / side)) + 1
    corners = set()
    for i in range(-span - 1, span + 1):
        x0 = i * side
        x1 = (i + 1) * side
        nx = 0.0
        if x1 < 0.0:
            nx = x1
        elif x0 > 0.0:
            nx = x0
        if nx * nx > r2:
            continue
        for j in range(-span - 1, span + 1):
            y0 = j * side
            y1 = (j + 1) * side
            ny = 0.0
            if y1 < 0.0:
                ny = y1
            elif y0 > 0.0:
                ny = y0
            if nx * nx + ny * ny <= r2:
                corners.add((i, j))
                corners.add((i + 1, j))
                corners.add((i, j + 1))
                corners.add((i + 1, j + 1))
    # sort on integer indices: identical floats for identical cells, and the
    # (x, y) lexicographic order coincides with the (i, j) order
    offsets = tuple((i * side, j * side) for (i, j) in sorted(corners))
    hull = tuple(geom.convex_hull(offsets))
    tmpl = CoverTemplate(eps, delta, side, offsets, hull)
    # numpy mirrors for the compiled core, built once per template
    import numpy as np

    ob = np.array(offsets, dtype=np.float64).reshape(len(offsets), 2)
    hb = np.array(hull, dtype=np.float64).reshape(len(hull), 2)
    object.__setattr__(tmpl, "_offsets_np", ob)
    object.__setattr__(tmpl, "_hull_np", hb)
    return tmpl


def make_template(eps, delta):
    """Build (or fetch from the process-wide cache) the cover template for
    exactly this (eps, delta) pair."""
    if not (0.0 < eps < 1.0) or not math.isfinite(eps):
        raise ValueError("eps must lie in (0, 1)")
    if not (delta > 0.0) or not math.isfinite(delta):
        raise ValueError("delta must be positive and finite")
    key = (eps, delta)
    tmpl = _cache.get(key)
    if tmpl is None:
        with _cache_lock:
            tmpl = _cache.get(key)
            if tmpl is None:
                tmpl = _build(eps, delta)
                _cache[key] = tmpl
    return tmpl


def cover_at(tmpl, x):
    """Anchor points and cover hull at center x: a pure translate of the
    template.  Returns (anchors, hull) with anchors in template order."""
    return anchors_at(tmpl, x), hull_at(tmpl, x)


def anchors_at(tmpl, x):
    cx, cy = x
    return [(ox + cx, oy + cy) for (ox, oy) in tmpl.corner_offsets]


def hull_at(tmpl, x):
    cx, cy = x
    return [(hx + cx, hy + cy) for (hx, hy) in tmpl.hull]


def clear_template_cache():
    with _cache_lock:
        _cache.clear()
