"""Planar primitives: orientation, convex hulls, halfplane clipping, tangents
from an external point, shadow regions, and stabbing-order tests.

Conventions
-----------
A point is a ``(x, y)`` tuple of finite floats.  A convex polygon is a list of
points in canonical form: counterclockwise, no repeated and no collinear
consecutive vertices, starting at the lexicographically smallest vertex.
Degenerate polygons are first-class values: ``[]`` is empty, ``[a]`` a single
point, ``[a, b]`` a segment.  A halfplane ``(nx, ny, c)`` is the set
``{z : nx*z.x + ny*z.y <= c}``; the normal need not be unit length.

All sign and emptiness tests share one absolute length tolerance derived from
the input magnitude (``factor * max(1, magnitude)``, factor 1e-9 by default,
overridable via the SIMPLIFY_GEOM_TOL environment variable or
:func:`set_tolerance_factor`).  Clipping errs toward keeping: a region that
collapses below tolerance is retained as a degenerate point or segment
witness rather than discarded.
"""

import math
import os

__all__ = [
    "orient",
    "point_segment_distance",
    "convex_hull",
    "clip",
    "intersect_convex",
    "point_in_convex",
    "tangent_points",
    "shadow_region",
    "clip_by_shadow",
    "segment_polygon_interval",
    "stabs_in_order",
    "ShadowRegion",
    "ALL",
    "EMPTY",
    "CONE",
    "tol_for",
    "set_tolerance_factor",
    "tolerance_factor",
]

_TOL_FACTOR = float(os.environ.get("SIMPLIFY_GEOM_TOL", "1e-9"))


def set_tolerance_factor(factor):
    """Override the relative tolerance factor (default 1e-9)."""
    global _TOL_FACTOR
    if not (factor > 0.0) or not math.isfinite(factor):
        raise ValueError("tolerance factor must be a positive finite number")
    _TOL_FACTOR = factor


def tolerance_factor():
    return _TOL_FACTOR


def tol_for(scale):
    """Absolute length tolerance at the given coordinate magnitude."""
    return _TOL_FACTOR * (scale if scale > 1.0 else 1.0)


def _scale_of(*pts):
    s = 1.0
    for x, y in pts:
        ax = abs(x)
        ay = abs(y)
        if ax > s:
            s = ax
        if ay > s:
            s = ay
    return s


def _poly_scale(poly):
    s = 1.0
    for x, y in poly:
        ax = abs(x)
        ay = abs(y)
        if ax > s:
            s = ax
        if ay > s:
            s = ay
    return s


def _d2(a, b):
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    return dx * dx + dy * dy


def orient(a, b, c, tol=None):
    """Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 if
    c lies within tolerance of the line through a and b."""
    cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if tol is None:
        tol = tol_for(_scale_of(a, b, c))
    # |cross| = dist(c, line ab) * |ab|; the threshold is symmetric in all
    # three arguments so swap antisymmetry is exact.
    m2 = max(_d2(a, b), _d2(a, c), _d2(b, c))
    if cross * cross <= tol * tol * m2:
        return 0
    return 1 if cross > 0.0 else -1


def point_segment_distance(p, a, b):
    """Euclidean distance from p to the closed segment ab."""
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return math.sqrt(_d2(p, a))
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / dd
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    qx = a[0] + t * dx
    qy = a[1] + t * dy
    ex = p[0] - qx
    ey = p[1] - qy
    return math.sqrt(ex * ex + ey * ey)


def _canonicalize(chain, tol):
    # chain: boundary walk in counterclockwise order, possibly with duplicate
    # or collinear runs.  Returns canonical form (see module docstring).
    pts = []
    t2 = tol * tol
    for q in chain:
        if not pts or _d2(q, pts[-1]) > t2:
            pts.append(q)
    while len(pts) >= 2 and _d2(pts[0], pts[-1]) <= t2:
        pts.pop()
    if len(pts) <= 1:
        return pts
    if len(pts) == 2:
        a, b = pts
        return [a, b] if a <= b else [b, a]
    # Collapse chains that are flat within tolerance to their extreme pair.
    far = 0
    best = 0.0
    for i in range(1, len(pts)):
        d = _d2(pts[0], pts[i])
        if d > best:
            best = d
            far = i
    far2 = far
    best = 0.0
    for i in range(len(pts)):
        d = _d2(pts[far], pts[i])
        if d > best:
            best = d
            far2 = i
    a, b = pts[far], pts[far2]
    flat = True
    for q in pts:
        if point_segment_distance(q, a, b) > tol:
            flat = False
            break
    if flat:
        if _d2(a, b) <= t2:
            lo = pts[0]
            for q in pts:
                if q < lo:
                    lo = q
            return [lo]
        return [a, b] if a <= b else [b, a]
    # Drop vertices within tolerance of the chord of their neighbours.
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        out = []
        n = len(pts)
        for i in range(n):
            a = pts[i - 1]
            b = pts[i]
            c = pts[(i + 1) % n]
            if point_segment_distance(b, a, c) <= tol:
                changed = True
            else:
                out.append(b)
        pts = out
    if len(pts) <= 2:
        return _canonicalize(pts, tol)
    k = 0
    for i in range(1, len(pts)):
        if pts[i] < pts[k]:
            k = i
    return pts[k:] + pts[:k]


def convex_hull(points, tol=None):
    """Convex hull in canonical form.  Accepts any number of points >= 1;
    collapses collinear input to a segment and coincident input to a point."""
    if not points:
        raise ValueError("convex_hull needs at least one point")
    pts = sorted(set((float(p[0]), float(p[1])) for p in points))
    if tol is None:
        tol = tol_for(_poly_scale(pts))
    if len(pts) == 1:
        return [pts[0]]

    def build(seq):
        h = []
        for q in seq:
            while len(h) >= 2 and orient(h[-2], h[-1], q, tol) <= 0:
                h.pop()
            h.append(q)
        return h

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return _canonicalize([pts[0], pts[-1]], tol)
    return _canonicalize(hull, tol)


def point_in_convex(poly, z, tol=None):
    """Closed membership test with tolerance slack (errs toward inside)."""
    if not poly:
        return False
    if tol is None:
        tol = tol_for(max(_poly_scale(poly), _scale_of(z)))
    m = len(poly)
    if m == 1:
        return _d2(z, poly[0]) <= tol * tol
    if m == 2:
        return point_segment_distance(z, poly[0], poly[1]) <= tol
    for i in range(m):
        a = poly[i]
        b = poly[(i + 1) % m]
        ex = b[0] - a[0]
        ey = b[1] - a[1]
        cross = ex * (z[1] - a[1]) - ey * (z[0] - a[0])
        if cross < -tol * math.sqrt(ex * ex + ey * ey):
            return False
    return True


def clip(poly, halfplane, tol=None):
    """Intersection of a canonical convex polygon with a halfplane.

    Keeps degenerate results: a polygon that collapses to a point or segment
    witness within tolerance is returned in degenerate canonical form."""
    if not poly:
        return []
    nx, ny, c = halfplane
    nn = math.sqrt(nx * nx + ny * ny)
    if nn == 0.0:
        raise ValueError("halfplane normal must be nonzero")
    if tol is None:
        tol = tol_for(max(_poly_scale(poly), abs(c) / nn))
    slack = tol * nn
    ds = [nx * x + ny * y - c for (x, y) in poly]
    inside = 0
    for d in ds:
        if d <= slack:
            inside += 1
    m = len(poly)
    if inside == m:
        return list(poly)
    if inside == 0:
        return []
    if m == 2:
        a, b = poly
        da, db = ds
        t = da / (da - db)
        mid = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
        kept = a if da <= slack else b
        return _canonicalize([kept, mid], tol)
    out = []
    for i in range(m):
        a = poly[i]
        b = poly[(i + 1) % m]
        da = ds[i]
        db = ds[(i + 1) % m]
        ain = da <= slack
        bin_ = db <= slack
        if ain:
            out.append(a)
        if ain != bin_:
            t = da / (da - db)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    return _canonicalize(out, tol)


def _edge_halfplane(a, b):
    # halfplane whose boundary supports edge a->b keeping the interior-left
    # side: {z : cross(b-a, z-a) >= 0}
    ny = -(b[0] - a[0])
    nx = b[1] - a[1]
    return (nx, ny, nx * a[0] + ny * a[1])


def intersect_convex(p, q, tol=None):
    """Intersection of two convex polygons in canonical form.

    Implemented by clipping one polygon against the other's edge halfplanes;
    quadratic in the input sizes, which stay small in this library."""
    if not p or not q:
        return []
    if tol is None:
        tol = tol_for(max(_poly_scale(p), _poly_scale(q)))
    # Containment fast paths keep nested results free of clipping drift.
    if all(point_in_convex(q, v, tol) for v in p):
        return list(p)
    if all(point_in_convex(p, v, tol) for v in q):
        return list(q)
    if len(q) < 3 and len(p) >= 3:
        p, q = q, p
    if len(q) >= 3:
        out = list(p)
        for i in range(len(q)):
            out = clip(out, _edge_halfplane(q[i], q[(i + 1) % len(q)]), tol)
            if not out:
                return []
        return out
    # both degenerate
    if len(p) == 1:
        return [p[0]] if point_in_convex(q, p[0], tol) else []
    if len(q) == 1:
        return [q[0]] if point_in_convex(p, q[0], tol) else []
    iv = segment_polygon_interval(p[0], p[1], q, tol)
    if iv is None:
        return []
    lo, hi = iv
    ax, ay = p[0]
    dx = p[1][0] - ax
    dy = p[1][1] - ay
    return _canonicalize(
        [(ax + lo * dx, ay + lo * dy), (ax + hi * dx, ay + hi * dy)], tol
    )


def _edge_visible(poly, i, p, tol):
    # Edge i is strictly visible from p when p is strictly on its outer side.
    a = poly[i]
    b = poly[(i + 1) % len(poly)]
    ex = b[0] - a[0]
    ey = b[1] - a[1]
    cross = ex * (p[1] - a[1]) - ey * (p[0] - a[0])
    return cross < -tol * math.sqrt(ex * ex + ey * ey)


def _tangent_points_linear(p, poly, tol):
    m = len(poly)
    vis = [_edge_visible(poly, i, p, tol) for i in range(m)]
    if not any(vis):
        raise ValueError("tangent_points: point inside or on the polygon")
    if all(vis):
        raise ValueError("tangent_points: degenerate polygon")
    # visible edges form one contiguous cyclic arc [s..e]
    if vis[0]:
        s = 0
        while vis[s - 1]:
            s -= 1
        s %= m
    else:
        s = 1
        while not vis[s]:
            s += 1
    e = s
    while vis[(e + 1) % m]:
        e += 1
    e %= m
    return s, (e + 1) % m


def _first_flip(vis, start, want, m):
    # Exponential search then bisection for the first index k >= 1 with
    # vis[(start+k) % m] == want, assuming the arc structure makes the
    # scanned window monotone (visible edges are one contiguous cyclic run).
    k = 1
    while k < m and vis(start + k) != want:
        k <<= 1
    if k >= m:
        return None
    lo = k >> 1  # vis(start+lo) != want
    hi = k
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if vis(start + mid) == want:
            hi = mid
        else:
            lo = mid
    return hi


def tangent_points(p, poly, tol=None):
    """Indices ``(left, right)`` of the tangent vertices of a canonical convex
    polygon as seen from an external point.

    ``left`` is the vertex whose ray from p has the whole polygon weakly on
    its right; ``right`` the symmetric one.  The boundary walk from ``left``
    counterclockwise to ``right`` is the chain facing p.  Raises ValueError if
    p is inside or on the boundary (within tolerance).  Uses binary search
    over the cyclic edge-visibility pattern; falls back to a linear scan if a
    near-degenerate pattern breaks the search invariant."""
    m = len(poly)
    if m == 0:
        raise ValueError("tangent_points of empty polygon")
    if tol is None:
        tol = tol_for(max(_poly_scale(poly), _scale_of(p)))
    if m == 1:
        if _d2(p, poly[0]) <= tol * tol:
            raise ValueError("tangent_points: point coincides with polygon")
        return 0, 0
    if m == 2:
        a, b = poly
        if point_segment_distance(p, a, b) <= tol:
            raise ValueError("tangent_points: point inside or on the polygon")
        side = orient(p, a, b, tol)
        if side == 0:
            near = 0 if _d2(p, a) <= _d2(p, b) else 1
            return near, near
        return (1, 0) if side > 0 else (0, 1)

    cache = {}

    def vis(i):
        i %= m
        v = cache.get(i)
        if v is None:
            v = _edge_visible(poly, i, p, tol)
            cache[i] = v
        return v

    # The exponential probes can miss a short run entirely; the linear scan
    # is the authority on every failure path, including inside/degenerate.
    if vis(0):
        a = 0
    else:
        a = _first_flip(vis, 0, True, m)
        if a is None:
            return _tangent_points_linear(p, poly, tol)
    x = _first_flip(vis, a, False, m)
    if x is None:
        return _tangent_points_linear(p, poly, tol)
    y = _first_flip(vis, a + x, True, m)
    if y is None:
        return _tangent_points_linear(p, poly, tol)
    s = (a + x + y) % m
    e = (a + x - 1) % m
    if not (vis(s) and vis(e)) or vis(e + 1) or vis(s - 1):
        return _tangent_points_linear(p, poly, tol)
    return s, (e + 1) % m


ALL = "all"
EMPTY = "empty"
CONE = "cone"


class ShadowRegion:
    """Set of points y such that the segment py meets a convex set S.

    ``kind`` is ALL (p in S), EMPTY (S empty), or CONE.  A cone is stored as
    halfplanes: up to two ``pivot`` halfplanes whose boundary lines pass
    through p (the tangent lines) and ``inner`` halfplanes supporting the
    boundary edges of S that face p, oriented away from p."""

    __slots__ = ("kind", "pivot", "inner")

    def __init__(self, kind, pivot=(), inner=()):
        self.kind = kind
        self.pivot = tuple(pivot)
        self.inner = tuple(inner)

    def halfplanes(self):
        return self.pivot + self.inner

    def contains(self, z, tol=None):
        if self.kind == ALL:
            return True
        if self.kind == EMPTY:
            return False
        if tol is None:
            tol = tol_for(_scale_of(z))
        for nx, ny, c in self.halfplanes():
            slack = tol * math.sqrt(nx * nx + ny * ny)
            if nx * z[0] + ny * z[1] - c > slack:
                return False
        return True

    def __repr__(self):
        if self.kind == CONE:
            return "ShadowRegion(cone, %d halfplanes)" % len(self.halfplanes())
        return "ShadowRegion(%s)" % self.kind


def _ray_shadow(p, s):
    # Shadow of a single point s from p: the ray from s away from p.
    dx = s[0] - p[0]
    dy = s[1] - p[1]
    pivot = (
        (dy, -dx, dy * p[0] - dx * p[1]),
        (-dy, dx, -dy * p[0] + dx * p[1]),
    )
    inner = ((-dx, -dy, -dx * s[0] - dy * s[1]),)
    return ShadowRegion(CONE, pivot, inner)


def shadow_region(s_poly, p, tol=None):
    """Shadow region of canonical convex polygon ``s_poly`` from point p."""
    if not s_poly:
        return ShadowRegion(EMPTY)
    if tol is None:
        tol = tol_for(max(_poly_scale(s_poly), _scale_of(p)))
    if point_in_convex(s_poly, p, tol):
        return ShadowRegion(ALL)
    m = len(s_poly)
    if m == 1:
        return _ray_shadow(p, s_poly[0])
    if m == 2:
        a, b = s_poly
        if orient(p, a, b, tol) == 0:
            near = a if _d2(p, a) <= _d2(p, b) else b
            return _ray_shadow(p, near)
    left, right = tangent_points(p, s_poly, tol)
    vr = s_poly[right]
    vl = s_poly[left]
    # pivot lines through p and each tangent vertex, polygon side kept
    dxr = vr[0] - p[0]
    dyr = vr[1] - p[1]
    dxl = vl[0] - p[0]
    dyl = vl[1] - p[1]
    pivot = (
        (dyr, -dxr, dyr * p[0] - dxr * p[1]),
        (-dyl, dxl, -dyl * p[0] + dxl * p[1]),
    )
    inner = []
    i = left
    while i != right:
        j = (i + 1) % m
        inner.append(_edge_halfplane(s_poly[i], s_poly[j]))
        i = j
    return ShadowRegion(CONE, pivot, tuple(inner))


def clip_by_shadow(poly, shadow, tol=None):
    """Intersection of a canonical convex polygon with a shadow region."""
    if shadow.kind == ALL:
        return list(poly)
    if shadow.kind == EMPTY:
        return []
    if tol is None:
        tol = tol_for(_poly_scale(poly) if poly else 1.0)
    out = list(poly)
    for h in shadow.pivot:
        out = clip(out, h, tol)
        if not out:
            return []
    for h in shadow.inner:
        out = clip(out, h, tol)
        if not out:
            return []
    return out


def segment_polygon_interval(a, b, poly, tol=None):
    """Parameter interval ``(t_lo, t_hi)`` of the segment a + t*(b-a),
    t in [0, 1], inside a canonical convex polygon, or None if disjoint."""
    if not poly:
        return None
    if tol is None:
        tol = tol_for(max(_poly_scale(poly), _scale_of(a, b)))
    ax, ay = a
    dx = b[0] - ax
    dy = b[1] - ay
    m = len(poly)
    if m == 1:
        s = poly[0]
        dd = dx * dx + dy * dy
        if dd == 0.0:
            return (0.0, 0.0) if _d2(a, s) <= tol * tol else None
        t = ((s[0] - ax) * dx + (s[1] - ay) * dy) / dd
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        qx = ax + t * dx
        qy = ay + t * dy
        ex = s[0] - qx
        ey = s[1] - qy
        if ex * ex + ey * ey <= tol * tol:
            return (t, t)
        return None
    if m == 2:
        u, v = poly
        ex = v[0] - u[0]
        ey = v[1] - u[1]
        nx = ey
        ny = -ex
        cu = nx * u[0] + ny * u[1]
        constraints = [
            (nx, ny, cu),
            (-nx, -ny, -cu),
            (-ex, -ey, -(ex * u[0] + ey * u[1])),
            (ex, ey, ex * v[0] + ey * v[1]),
        ]
    else:
        constraints = [
            _edge_halfplane(poly[i], poly[(i + 1) % m]) for i in range(m)
        ]
    lo = 0.0
    hi = 1.0
    for nx, ny, c in constraints:
        nn = math.sqrt(nx * nx + ny * ny)
        slack = tol * nn
        den = nx * dx + ny * dy
        num = c + slack - (nx * ax + ny * ay)
        if den == 0.0:
            if num < 0.0:
                return None
            continue
        t = num / den
        if den > 0.0:
            if t < hi:
                hi = t
        else:
            if t > lo:
                lo = t
    if lo > hi:
        return None
    return (lo, hi)


def stabs_in_order(a, b, polys, tol=None):
    """True when the segment ab meets every polygon in ``polys`` at parameters
    that can be chosen monotonically nondecreasing."""
    t = 0.0
    for poly in polys:
        iv = segment_polygon_interval(a, b, poly, tol)
        if iv is None:
            return False
        lo, hi = iv
        if lo > t:
            t = lo
        if t > hi:
            return False
    return True
