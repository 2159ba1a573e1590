"""Frechet distance decision procedures and a vertex-restricted size oracle.

``free_space_decide`` is the classical free-space-diagram reachability test
between two polylines.  ``frechet_distance`` bisects it.
``segment_curve_decide`` answers the same question for a single segment
against a polyline in linear time via a greedy interval walk (for a segment,
the Frechet matching can be anchored at the polyline's vertices).
``min_vertex_restricted_size`` is the shortest-path size of a simplification
restricted to the input's own vertices; it upper-bounds nothing and
lower-bounds no one, but any curve it counts is achievable, so the true
minimum vertex count is never larger.

The compiled kernels in ``_fastcore`` are used when available; the pure
Python paths compute the same answers.
"""

import math

import numpy as np

from . import geom

try:
    from . import _fastcore
except ImportError:
    _fastcore = None

__all__ = [
    "free_space_decide",
    "frechet_distance",
    "segment_curve_decide",
    "min_vertex_restricted_size",
]


def _dist(a, b):
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    return math.sqrt(dx * dx + dy * dy)


def _curve_scale(curve):
    s = 1.0
    for x, y in curve:
        ax = abs(x)
        ay = abs(y)
        if ax > s:
            s = ax
        if ay > s:
            s = ay
    return s


def _check_curve(curve, name):
    if len(curve) < 1:
        raise ValueError("%s must have at least one vertex" % name)
    for x, y in curve:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError("%s has a non-finite vertex" % name)


def _interval(cx, cy, ax, ay, bx, by, r):
    # raw parameter interval of |a + t(b-a) - c| <= r, before clamping to
    # [0, 1]; None when the segment's line misses the disk
    dx = bx - ax
    dy = by - ay
    fx = ax - cx
    fy = ay - cy
    aa = dx * dx + dy * dy
    if aa == 0.0:
        if fx * fx + fy * fy <= r * r:
            return (-math.inf, math.inf)
        return None
    bb = fx * dx + fy * dy
    cc = fx * fx + fy * fy - r * r
    disc = bb * bb - aa * cc
    if disc < 0.0:
        return None
    sq = math.sqrt(disc)
    return ((-bb - sq) / aa, (-bb + sq) / aa)


def _clip_iv(iv, lo_bound):
    # intersect a raw interval with [lo_bound, 1]; None when empty
    if iv is None:
        return None
    lo, hi = iv
    if lo < lo_bound:
        lo = lo_bound
    if hi > 1.0:
        hi = 1.0
    if lo > hi:
        return None
    return (lo, hi)


def _decide_py(a_curve, b_curve, eff):
    n = len(a_curve)
    m = len(b_curve)
    if _dist(a_curve[0], b_curve[0]) > eff:
        return False
    if _dist(a_curve[-1], b_curve[-1]) > eff:
        return False
    if n == 1:
        return all(_dist(a_curve[0], q) <= eff for q in b_curve)
    if m == 1:
        return all(_dist(q, b_curve[0]) <= eff for q in a_curve)

    # Reachability over the free-space diagram, one row of cells at a time.
    # Cell (i, j) pairs segment i of a_curve with segment j of b_curve.
    # bot[j] holds the reachable interval (local coordinates in [0, 1]) on
    # the bottom edge of the current row's cell j; left holds the one on the
    # current cell's left edge.
    bot = [None] * (m - 1)
    # bottom boundary: reachable only while contiguous from the origin
    reach = True
    for j in range(m - 1):
        iv = _interval(
            a_curve[0][0], a_curve[0][1],
            b_curve[j][0], b_curve[j][1],
            b_curve[j + 1][0], b_curve[j + 1][1], eff,
        )
        if reach and iv is not None and iv[0] <= 0.0 and iv[1] >= 0.0:
            bot[j] = (0.0, min(iv[1], 1.0))
            if iv[1] < 1.0:
                reach = False
        else:
            reach = False
    left_reach = True
    for i in range(n - 1):
        # left boundary: same contiguity rule, one cell per row
        iv = _interval(
            b_curve[0][0], b_curve[0][1],
            a_curve[i][0], a_curve[i][1],
            a_curve[i + 1][0], a_curve[i + 1][1], eff,
        )
        if left_reach and iv is not None and iv[0] <= 0.0 and iv[1] >= 0.0:
            left = (0.0, min(iv[1], 1.0))
            if iv[1] < 1.0:
                left_reach = False
        else:
            left = None
            left_reach = False
        newbot = [None] * (m - 1)
        for j in range(m - 1):
            b_entry = bot[j]
            l_entry = left
            if b_entry is None and l_entry is None:
                left = None
                continue
            # free interval on the right edge (along segment i of a_curve)
            riv = _interval(
                b_curve[j + 1][0], b_curve[j + 1][1],
                a_curve[i][0], a_curve[i][1],
                a_curve[i + 1][0], a_curve[i + 1][1], eff,
            )
            # free interval on the top edge (along segment j of b_curve)
            tiv = _interval(
                a_curve[i + 1][0], a_curve[i + 1][1],
                b_curve[j][0], b_curve[j][1],
                b_curve[j + 1][0], b_curve[j + 1][1], eff,
            )
            # from any bottom entry the whole free right edge is reachable;
            # from a left entry only the part at or above the entry minimum
            # (and symmetrically for the top edge)
            if b_entry is not None:
                right = _clip_iv(riv, 0.0)
            else:
                right = _clip_iv(riv, l_entry[0])
            if l_entry is not None:
                top = _clip_iv(tiv, 0.0)
            else:
                top = _clip_iv(tiv, b_entry[0])
            newbot[j] = top
            left = right
        bot = newbot
    # accepted when the top-right corner is reachable: the last top interval
    # reaches parameter 1 (endpoint distance was already checked)
    last = bot[m - 2]
    return last is not None and last[1] >= 1.0


def free_space_decide(a_curve, b_curve, delta, tol=None):
    """True iff the Frechet distance between the two polylines is at most
    delta (up to the geometry tolerance)."""
    _check_curve(a_curve, "a_curve")
    _check_curve(b_curve, "b_curve")
    if not math.isfinite(delta):
        raise ValueError("delta must be finite")
    if tol is None:
        tol = geom.tol_for(max(_curve_scale(a_curve), _curve_scale(b_curve)))
    eff = delta + tol
    if eff < 0.0:
        return False
    if _fastcore is not None and len(a_curve) > 1 and len(b_curve) > 1:
        return bool(_fastcore.fs_decide(_flat(a_curve), _flat(b_curve), eff))
    return _decide_py(a_curve, b_curve, eff)


def _flat(curve):
    arr = np.empty((len(curve), 2), dtype=np.float64)
    for i, (x, y) in enumerate(curve):
        arr[i, 0] = x
        arr[i, 1] = y
    return arr


def frechet_distance(a_curve, b_curve, tol=1e-9):
    """Frechet distance via bisection of ``free_space_decide``.

    The result is within ``tol + geometry tolerance`` of the true value."""
    _check_curve(a_curve, "a_curve")
    _check_curve(b_curve, "b_curve")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    lo = max(_dist(a_curve[0], b_curve[0]), _dist(a_curve[-1], b_curve[-1]))
    hi = 0.0
    for pa in a_curve:
        for pb in b_curve:
            d = _dist(pa, pb)
            if d > hi:
                hi = d
    if hi <= lo:
        return lo
    if free_space_decide(a_curve, b_curve, lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if free_space_decide(a_curve, b_curve, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def segment_curve_decide(a, b, curve, delta, tol=None):
    """True iff the segment ab is within Frechet distance delta of the
    polyline.  Linear time: for a segment, a matching exists iff monotone
    parameters t_i exist with |a + t_i (b-a) - curve_i| <= delta, t_0 = 0,
    t_last = 1."""
    _check_curve(curve, "curve")
    if tol is None:
        tol = geom.tol_for(
            max(_curve_scale(curve), _curve_scale((a, b)))
        )
    eff = delta + tol
    if eff < 0.0:
        return False
    if _dist(a, curve[0]) > eff or _dist(b, curve[-1]) > eff:
        return False
    m = len(curve)
    if m <= 2:
        return True
    if _fastcore is not None and m > 16:
        return bool(
            _fastcore.seg_decide(a[0], a[1], b[0], b[1], _flat(curve), eff)
        )
    t = 0.0
    for j in range(1, m - 1):
        iv = _interval(curve[j][0], curve[j][1], a[0], a[1], b[0], b[1], eff)
        if iv is None:
            return False
        lo, hi = iv
        if hi < 0.0 or lo > 1.0:
            return False
        if lo > t:
            t = lo
        if t > hi:
            return False
    return t <= 1.0


def min_vertex_restricted_size(curve, delta):
    """Minimum vertex count over simplifications whose vertices are a
    subsequence of the input's vertices (first and last kept), where every
    link must stay within Frechet distance delta of the subchain it replaces.
    Any curve admitted here is a valid simplification, so the unrestricted
    optimum is never larger than this value."""
    _check_curve(curve, "curve")
    n = len(curve)
    if n < 2:
        raise ValueError("curve must have at least two vertices")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    best = [n + 1] * n
    best[0] = 1
    for i in range(n - 1):
        if best[i] > n:
            continue
        for j in range(i + 1, n):
            if best[i] + 1 < best[j] and segment_curve_decide(
                curve[i], curve[j], curve[i : j + 1], delta
            ):
                best[j] = best[i] + 1
    return best[n - 1]
