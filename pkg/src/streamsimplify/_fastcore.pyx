# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the per-anchor frontier advance and the two Fréchet
decision loops.

Every routine here is an operation-for-operation mirror of the pure Python
code in geom.py, stabber.py and frechet.py.  The build disables
floating-point contraction, so results are bit-identical to the Python path;
any change to the mirrored Python code must be replicated here in the same
operation order.
"""

from libc.math cimport INFINITY, fabs, sqrt
from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy


cdef inline double d2(double ax, double ay, double bx, double by) nogil:
    cdef double dx = bx - ax
    cdef double dy = by - ay
    return dx * dx + dy * dy


cdef inline int imod(int i, int m) nogil:
    # Python's floored modulo for cyclic indexing
    cdef int r = i % m
    if r < 0:
        r += m
    return r


cdef int c_orient(double ax, double ay, double bx, double by,
                  double cx, double cy, double tol) nogil:
    cdef double cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    cdef double m2 = d2(ax, ay, bx, by)
    cdef double dac = d2(ax, ay, cx, cy)
    cdef double dbc = d2(bx, by, cx, cy)
    if dac > m2:
        m2 = dac
    if dbc > m2:
        m2 = dbc
    if cross * cross <= tol * tol * m2:
        return 0
    return 1 if cross > 0.0 else -1


cdef double pseg(double px, double py, double ax, double ay,
                 double bx, double by) nogil:
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double dd = dx * dx + dy * dy
    cdef double t, qx, qy, ex, ey
    if dd == 0.0:
        return sqrt(d2(px, py, ax, ay))
    t = ((px - ax) * dx + (py - ay) * dy) / dd
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    qx = ax + t * dx
    qy = ay + t * dy
    ex = px - qx
    ey = py - qy
    return sqrt(ex * ex + ey * ey)


cdef inline bint lex_le(double ax, double ay, double bx, double by) nogil:
    if ax < bx:
        return True
    if ax > bx:
        return False
    return ay <= by


cdef inline bint lex_lt(double ax, double ay, double bx, double by) nogil:
    if ax < bx:
        return True
    if ax > bx:
        return False
    return ay < by


cdef int canon(double* buf, int n, double tol, double* tmp) nogil:
    # mirrors geom._canonicalize; result stays in buf
    cdef double t2 = tol * tol
    cdef int m = 0
    cdef int i, j, far, far2, k, kept, changed
    cdef double best, d, ax, ay, bx, by, lox, loy
    for i in range(n):
        if m == 0 or d2(buf[2 * i], buf[2 * i + 1],
                        buf[2 * (m - 1)], buf[2 * (m - 1) + 1]) > t2:
            buf[2 * m] = buf[2 * i]
            buf[2 * m + 1] = buf[2 * i + 1]
            m += 1
    while m >= 2 and d2(buf[0], buf[1], buf[2 * (m - 1)], buf[2 * (m - 1) + 1]) <= t2:
        m -= 1
    if m <= 1:
        return m
    if m == 2:
        if not lex_le(buf[0], buf[1], buf[2], buf[3]):
            ax = buf[0]
            ay = buf[1]
            buf[0] = buf[2]
            buf[1] = buf[3]
            buf[2] = ax
            buf[3] = ay
        return 2
    far = 0
    best = 0.0
    for i in range(1, m):
        d = d2(buf[0], buf[1], buf[2 * i], buf[2 * i + 1])
        if d > best:
            best = d
            far = i
    far2 = far
    best = 0.0
    for i in range(m):
        d = d2(buf[2 * far], buf[2 * far + 1], buf[2 * i], buf[2 * i + 1])
        if d > best:
            best = d
            far2 = i
    ax = buf[2 * far]
    ay = buf[2 * far + 1]
    bx = buf[2 * far2]
    by = buf[2 * far2 + 1]
    cdef bint flat = True
    for i in range(m):
        if pseg(buf[2 * i], buf[2 * i + 1], ax, ay, bx, by) > tol:
            flat = False
            break
    if flat:
        if d2(ax, ay, bx, by) <= t2:
            lox = buf[0]
            loy = buf[1]
            for i in range(m):
                if lex_lt(buf[2 * i], buf[2 * i + 1], lox, loy):
                    lox = buf[2 * i]
                    loy = buf[2 * i + 1]
            buf[0] = lox
            buf[1] = loy
            return 1
        if lex_le(ax, ay, bx, by):
            buf[0] = ax
            buf[1] = ay
            buf[2] = bx
            buf[3] = by
        else:
            buf[0] = bx
            buf[1] = by
            buf[2] = ax
            buf[3] = ay
        return 2
    changed = 1
    while changed and m >= 3:
        changed = 0
        kept = 0
        for i in range(m):
            j = imod(i - 1, m)
            ax = buf[2 * j]
            ay = buf[2 * j + 1]
            bx = buf[2 * ((i + 1) % m)]
            by = buf[2 * ((i + 1) % m) + 1]
            if pseg(buf[2 * i], buf[2 * i + 1], ax, ay, bx, by) <= tol:
                changed = 1
            else:
                tmp[2 * kept] = buf[2 * i]
                tmp[2 * kept + 1] = buf[2 * i + 1]
                kept += 1
        memcpy(buf, tmp, 2 * kept * sizeof(double))
        m = kept
    if m <= 2:
        return canon(buf, m, tol, tmp)
    k = 0
    for i in range(1, m):
        if lex_lt(buf[2 * i], buf[2 * i + 1], buf[2 * k], buf[2 * k + 1]):
            k = i
    if k:
        memcpy(tmp, buf, 2 * m * sizeof(double))
        for i in range(m):
            j = (k + i) % m
            buf[2 * i] = tmp[2 * j]
            buf[2 * i + 1] = tmp[2 * j + 1]
    return m


cdef bint in_convex(double* poly, int m, double zx, double zy, double tol) nogil:
    cdef int i, j
    cdef double ax, ay, bx, by, ex, ey, cross
    if m == 0:
        return False
    if m == 1:
        return d2(zx, zy, poly[0], poly[1]) <= tol * tol
    if m == 2:
        return pseg(zx, zy, poly[0], poly[1], poly[2], poly[3]) <= tol
    for i in range(m):
        j = (i + 1) % m
        ax = poly[2 * i]
        ay = poly[2 * i + 1]
        bx = poly[2 * j]
        by = poly[2 * j + 1]
        ex = bx - ax
        ey = by - ay
        cross = ex * (zy - ay) - ey * (zx - ax)
        if cross < -tol * sqrt(ex * ex + ey * ey):
            return False
    return True


cdef int clip_halfplane(double* poly, int m, double nx, double ny, double c,
                        double tol, double* out, double* ds, double* tmp) nogil:
    # mirrors geom.clip; returns new size written into out (can alias nothing)
    cdef double nn, slack, da, db, t, midx, midy, keptx, kepty
    cdef int i, j, inside, k
    cdef bint ain, bin_
    if m == 0:
        return 0
    nn = sqrt(nx * nx + ny * ny)
    if nn == 0.0:
        return -1
    slack = tol * nn
    inside = 0
    for i in range(m):
        ds[i] = nx * poly[2 * i] + ny * poly[2 * i + 1] - c
        if ds[i] <= slack:
            inside += 1
    if inside == m:
        memcpy(out, poly, 2 * m * sizeof(double))
        return m
    if inside == 0:
        return 0
    if m == 2:
        da = ds[0]
        db = ds[1]
        t = da / (da - db)
        midx = poly[0] + t * (poly[2] - poly[0])
        midy = poly[1] + t * (poly[3] - poly[1])
        if da <= slack:
            keptx = poly[0]
            kepty = poly[1]
        else:
            keptx = poly[2]
            kepty = poly[3]
        out[0] = keptx
        out[1] = kepty
        out[2] = midx
        out[3] = midy
        return canon(out, 2, tol, tmp)
    k = 0
    for i in range(m):
        j = (i + 1) % m
        da = ds[i]
        db = ds[j]
        ain = da <= slack
        bin_ = db <= slack
        if ain:
            out[2 * k] = poly[2 * i]
            out[2 * k + 1] = poly[2 * i + 1]
            k += 1
        if ain != bin_:
            t = da / (da - db)
            out[2 * k] = poly[2 * i] + t * (poly[2 * j] - poly[2 * i])
            out[2 * k + 1] = poly[2 * i + 1] + t * (poly[2 * j + 1] - poly[2 * i + 1])
            k += 1
    return canon(out, k, tol, tmp)


cdef inline bint edge_visible(double* poly, int m, int i, double px, double py,
                              double tol) nogil:
    cdef int j = (i + 1) % m
    cdef double ax = poly[2 * i]
    cdef double ay = poly[2 * i + 1]
    cdef double ex = poly[2 * j] - ax
    cdef double ey = poly[2 * j + 1] - ay
    cdef double cross = ex * (py - ay) - ey * (px - ax)
    return cross < -tol * sqrt(ex * ex + ey * ey)


cdef inline int vis_get(double* poly, int m, double px, double py, double tol,
                        signed char* cache, int i) nogil:
    i = imod(i, m)
    if cache[i] < 0:
        cache[i] = 1 if edge_visible(poly, m, i, px, py, tol) else 0
    return cache[i]


cdef int first_flip(double* poly, int m, double px, double py, double tol,
                    signed char* cache, int start, int want) nogil:
    # mirrors geom._first_flip
    cdef int k = 1
    cdef int lo, hi, mid
    while k < m and vis_get(poly, m, px, py, tol, cache, start + k) != want:
        k <<= 1
    if k >= m:
        return -1
    lo = k >> 1
    hi = k
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if vis_get(poly, m, px, py, tol, cache, start + mid) == want:
            hi = mid
        else:
            lo = mid
    return hi


cdef int tangents_linear(double* poly, int m, double px, double py, double tol,
                         signed char* vis, int* left, int* right) nogil:
    cdef int i, s, e
    cdef bint anyv = False
    cdef bint allv = True
    for i in range(m):
        vis[i] = 1 if edge_visible(poly, m, i, px, py, tol) else 0
        if vis[i]:
            anyv = True
        else:
            allv = False
    if not anyv:
        return -1
    if allv:
        return -2
    if vis[0]:
        s = 0
        while vis[imod(s - 1, m)]:
            s -= 1
        s = imod(s, m)
    else:
        s = 1
        while not vis[s]:
            s += 1
    e = s
    while vis[(e + 1) % m]:
        e += 1
    e = e % m
    left[0] = s
    right[0] = (e + 1) % m
    return 0


cdef int tangent_points_c(double* poly, int m, double px, double py, double tol,
                          signed char* cache, int* left, int* right) nogil:
    # mirrors geom.tangent_points for m >= 1; error codes: -1 inside, -2 degenerate
    cdef int a, x, y, s, e, i, side, near
    if m == 0:
        return -2
    if m == 1:
        if d2(px, py, poly[0], poly[1]) <= tol * tol:
            return -1
        left[0] = 0
        right[0] = 0
        return 0
    if m == 2:
        if pseg(px, py, poly[0], poly[1], poly[2], poly[3]) <= tol:
            return -1
        side = c_orient(px, py, poly[0], poly[1], poly[2], poly[3], tol)
        if side == 0:
            near = 0 if d2(px, py, poly[0], poly[1]) <= d2(px, py, poly[2], poly[3]) else 1
            left[0] = near
            right[0] = near
            return 0
        if side > 0:
            left[0] = 1
            right[0] = 0
        else:
            left[0] = 0
            right[0] = 1
        return 0
    for i in range(m):
        cache[i] = -1
    # probe failures fall back to the linear scan, as in geom.tangent_points
    if vis_get(poly, m, px, py, tol, cache, 0):
        a = 0
    else:
        a = first_flip(poly, m, px, py, tol, cache, 0, 1)
        if a == -1:
            return tangents_linear(poly, m, px, py, tol, cache, left, right)
    x = first_flip(poly, m, px, py, tol, cache, a, 0)
    if x == -1:
        return tangents_linear(poly, m, px, py, tol, cache, left, right)
    y = first_flip(poly, m, px, py, tol, cache, a + x, 1)
    if y == -1:
        return tangents_linear(poly, m, px, py, tol, cache, left, right)
    s = (a + x + y) % m
    e = imod(a + x - 1, m)
    if (not (vis_get(poly, m, px, py, tol, cache, s)
             and vis_get(poly, m, px, py, tol, cache, e))
            or vis_get(poly, m, px, py, tol, cache, e + 1)
            or vis_get(poly, m, px, py, tol, cache, s - 1)):
        return tangents_linear(poly, m, px, py, tol, cache, left, right)
    left[0] = s
    right[0] = (e + 1) % m
    return 0


# shadow kinds
cdef enum:
    SH_ALL = 0
    SH_EMPTY = 1
    SH_CONE = 2


cdef int build_shadow(double* s_poly, int m, double px, double py, double tol,
                      signed char* cache, double* pivot, double* inner,
                      int* n_inner, int* kind) nogil:
    # mirrors geom.shadow_region; pivot holds 2 halfplanes (6 doubles),
    # inner up to m halfplanes (3 doubles each)
    cdef int left = 0
    cdef int right = 0
    cdef int rc, i, j, n
    cdef double dx, dy, dxr, dyr, dxl, dyl, ax, ay, bx, by, nx, ny
    cdef double sx, sy
    if m == 0:
        kind[0] = SH_EMPTY
        return 0
    if in_convex(s_poly, m, px, py, tol):
        kind[0] = SH_ALL
        return 0
    if m == 1 or (m == 2 and c_orient(px, py, s_poly[0], s_poly[1],
                                      s_poly[2], s_poly[3], tol) == 0):
        if m == 1:
            sx = s_poly[0]
            sy = s_poly[1]
        else:
            if d2(px, py, s_poly[0], s_poly[1]) <= d2(px, py, s_poly[2], s_poly[3]):
                sx = s_poly[0]
                sy = s_poly[1]
            else:
                sx = s_poly[2]
                sy = s_poly[3]
        dx = sx - px
        dy = sy - py
        pivot[0] = dy
        pivot[1] = -dx
        pivot[2] = dy * px - dx * py
        pivot[3] = -dy
        pivot[4] = dx
        pivot[5] = -dy * px + dx * py
        inner[0] = -dx
        inner[1] = -dy
        inner[2] = -dx * sx - dy * sy
        n_inner[0] = 1
        kind[0] = SH_CONE
        return 0
    rc = tangent_points_c(s_poly, m, px, py, tol, cache, &left, &right)
    if rc < 0:
        return rc
    dxr = s_poly[2 * right] - px
    dyr = s_poly[2 * right + 1] - py
    dxl = s_poly[2 * left] - px
    dyl = s_poly[2 * left + 1] - py
    pivot[0] = dyr
    pivot[1] = -dxr
    pivot[2] = dyr * px - dxr * py
    pivot[3] = -dyl
    pivot[4] = dxl
    pivot[5] = -dyl * px + dxl * py
    n = 0
    i = left
    while i != right:
        j = (i + 1) % m
        ax = s_poly[2 * i]
        ay = s_poly[2 * i + 1]
        bx = s_poly[2 * j]
        by = s_poly[2 * j + 1]
        nx = by - ay
        ny = -(bx - ax)
        inner[3 * n] = nx
        inner[3 * n + 1] = ny
        inner[3 * n + 2] = nx * ax + ny * ay
        n += 1
        i = j
    n_inner[0] = n
    kind[0] = SH_CONE
    return 0


cdef class FastCore:
    """Compiled frontier kernel; see stabber._PyCore for the reference."""

    cdef double* _anchors
    cdef double** _cells
    cdef int* _cell_n
    cdef int* _cell_cap
    cdef int _n
    cdef double _factor
    cdef double _scale
    cdef int _nonempty
    cdef long _total
    cdef double* _buf_a
    cdef double* _buf_b
    cdef double* _ds
    cdef double* _tmp
    cdef double* _inner
    cdef double* _hullbuf
    cdef signed char* _viscache
    cdef int _scratch_pts
    cdef int _hull_cap

    def __cinit__(self):
        self._anchors = NULL
        self._cells = NULL
        self._cell_n = NULL
        self._cell_cap = NULL
        self._n = 0
        self._buf_a = NULL
        self._buf_b = NULL
        self._ds = NULL
        self._tmp = NULL
        self._inner = NULL
        self._hullbuf = NULL
        self._viscache = NULL
        self._scratch_pts = 0
        self._hull_cap = 0

    def __init__(self, double[:, ::1] anchors, double factor):
        self._setup(anchors, 0.0, 0.0, factor, 0)

    @staticmethod
    def translated(double[:, ::1] offsets, double cx, double cy, double factor):
        cdef FastCore core = FastCore.__new__(FastCore)
        core._setup(offsets, cx, cy, factor, 1)
        return core

    cdef _setup(self, double[:, ::1] pts, double cx, double cy, double factor,
                int translate):
        cdef int n = pts.shape[0]
        cdef int i
        cdef double x, y, ax, ay, s
        if n < 1:
            raise ValueError("frontier needs at least one anchor")
        self._n = n
        self._factor = factor
        self._anchors = <double*> malloc(2 * n * sizeof(double))
        self._cells = <double**> malloc(n * sizeof(double*))
        self._cell_n = <int*> malloc(n * sizeof(int))
        self._cell_cap = <int*> malloc(n * sizeof(int))
        if (self._anchors == NULL or self._cells == NULL
                or self._cell_n == NULL or self._cell_cap == NULL):
            raise MemoryError()
        for i in range(n):
            self._cells[i] = NULL
        s = 1.0
        for i in range(n):
            if translate:
                x = pts[i, 0] + cx
                y = pts[i, 1] + cy
            else:
                x = pts[i, 0]
                y = pts[i, 1]
            self._anchors[2 * i] = x
            self._anchors[2 * i + 1] = y
            ax = fabs(x)
            ay = fabs(y)
            if ax > s:
                s = ax
            if ay > s:
                s = ay
        self._scale = s
        for i in range(n):
            self._cells[i] = <double*> malloc(2 * sizeof(double))
            if self._cells[i] == NULL:
                raise MemoryError()
            self._cells[i][0] = self._anchors[2 * i]
            self._cells[i][1] = self._anchors[2 * i + 1]
            self._cell_n[i] = 1
            self._cell_cap[i] = 1
        self._nonempty = n
        self._total = n

    def __dealloc__(self):
        cdef int i
        if self._cells != NULL:
            for i in range(self._n):
                if self._cells[i] != NULL:
                    free(self._cells[i])
            free(self._cells)
        free(self._anchors)
        free(self._cell_n)
        free(self._cell_cap)
        free(self._buf_a)
        free(self._buf_b)
        free(self._ds)
        free(self._tmp)
        free(self._inner)
        free(self._hullbuf)
        free(self._viscache)

    cdef int _ensure_scratch(self, int pts) except -1:
        if pts <= self._scratch_pts:
            return 0
        pts = pts * 2
        self._buf_a = <double*> realloc(self._buf_a, 2 * pts * sizeof(double))
        self._buf_b = <double*> realloc(self._buf_b, 2 * pts * sizeof(double))
        self._ds = <double*> realloc(self._ds, pts * sizeof(double))
        self._tmp = <double*> realloc(self._tmp, 2 * pts * sizeof(double))
        self._inner = <double*> realloc(self._inner, 3 * pts * sizeof(double))
        self._viscache = <signed char*> realloc(self._viscache, pts)
        if (self._buf_a == NULL or self._buf_b == NULL or self._ds == NULL
                or self._tmp == NULL or self._inner == NULL
                or self._viscache == NULL):
            raise MemoryError()
        self._scratch_pts = pts
        return 0

    @property
    def nonempty(self):
        return self._nonempty

    @property
    def total(self):
        return self._total

    def anchor_count(self):
        return self._n

    def anchor(self, int i):
        if i < 0 or i >= self._n:
            raise IndexError("anchor index out of range")
        return (self._anchors[2 * i], self._anchors[2 * i + 1])

    def cell(self, int i):
        if i < 0 or i >= self._n:
            raise IndexError("anchor index out of range")
        cdef int j
        return [
            (self._cells[i][2 * j], self._cells[i][2 * j + 1])
            for j in range(self._cell_n[i])
        ]

    def max_cell(self):
        cdef int i
        cdef int m = 0
        for i in range(self._n):
            if self._cell_n[i] > m:
                m = self._cell_n[i]
        return m

    def witness(self):
        cdef int i, j
        cdef double px, py, best, d, dx, dy, bx, by
        for i in range(self._n):
            if self._cell_n[i] > 0:
                px = self._anchors[2 * i]
                py = self._anchors[2 * i + 1]
                best = -1.0
                bx = 0.0
                by = 0.0
                for j in range(self._cell_n[i]):
                    dx = self._cells[i][2 * j] - px
                    dy = self._cells[i][2 * j + 1] - py
                    d = dx * dx + dy * dy
                    if d > best:
                        best = d
                        bx = self._cells[i][2 * j]
                        by = self._cells[i][2 * j + 1]
                return (px, py), (bx, by)
        raise ValueError("witness of an all-empty frontier")

    def advance(self, double[:, ::1] hull):
        cdef int hn = hull.shape[0]
        if hn < 1:
            raise ValueError("advance needs a nonempty hull")
        if self._hull_cap < hn:
            self._hullbuf = <double*> realloc(
                self._hullbuf, 2 * hn * sizeof(double))
            if self._hullbuf == NULL:
                raise MemoryError()
            self._hull_cap = hn
        memcpy(self._hullbuf, &hull[0, 0], 2 * hn * sizeof(double))
        return self._advance(hn)

    def advance_translated(self, double[:, ::1] hull_offsets, double cx, double cy):
        cdef int hn = hull_offsets.shape[0]
        cdef int i
        if hn < 1:
            raise ValueError("advance needs a nonempty hull")
        if self._hull_cap < hn:
            self._hullbuf = <double*> realloc(
                self._hullbuf, 2 * hn * sizeof(double))
            if self._hullbuf == NULL:
                raise MemoryError()
            self._hull_cap = hn
        for i in range(hn):
            self._hullbuf[2 * i] = hull_offsets[i, 0] + cx
            self._hullbuf[2 * i + 1] = hull_offsets[i, 1] + cy
        return self._advance(hn)

    cdef int _advance(self, int hn) except -1:
        cdef double* hull = self._hullbuf
        cdef double s = self._scale
        cdef double ax, ay, tol
        cdef int i, j, cn, rc, kind, n_inner, cur_n, out_n
        cdef double pivot[6]
        cdef double* cur
        cdef double* src
        cdef double* dst
        cdef double* swp
        cdef int nonempty = 0
        cdef long total = 0
        for i in range(hn):
            ax = fabs(hull[2 * i])
            ay = fabs(hull[2 * i + 1])
            if ax > s:
                s = ax
            if ay > s:
                s = ay
        self._scale = s
        tol = self._factor * s
        for i in range(self._n):
            cn = self._cell_n[i]
            if cn == 0:
                continue
            self._ensure_scratch(hn + cn + 8)
            cur = self._cells[i]
            rc = build_shadow(
                cur, cn, self._anchors[2 * i], self._anchors[2 * i + 1], tol,
                self._viscache, pivot, self._inner, &n_inner, &kind)
            if rc < 0:
                raise RuntimeError("shadow construction failed (tangents)")
            if kind == SH_ALL:
                out_n = hn
                memcpy(self._buf_a, hull, 2 * hn * sizeof(double))
                src = self._buf_a
            elif kind == SH_EMPTY:
                out_n = 0
                src = self._buf_a
            else:
                # clip hull by the two pivots then the inner halfplanes,
                # mirroring geom.clip_by_shadow
                memcpy(self._buf_a, hull, 2 * hn * sizeof(double))
                src = self._buf_a
                dst = self._buf_b
                out_n = hn
                for j in range(2):
                    out_n = clip_halfplane(
                        src, out_n, pivot[3 * j], pivot[3 * j + 1],
                        pivot[3 * j + 2], tol, dst, self._ds, self._tmp)
                    if out_n < 0:
                        raise ValueError("halfplane normal must be nonzero")
                    swp = src
                    src = dst
                    dst = swp
                    if out_n == 0:
                        break
                if out_n > 0:
                    for j in range(n_inner):
                        out_n = clip_halfplane(
                            src, out_n, self._inner[3 * j],
                            self._inner[3 * j + 1], self._inner[3 * j + 2],
                            tol, dst, self._ds, self._tmp)
                        if out_n < 0:
                            raise ValueError("halfplane normal must be nonzero")
                        swp = src
                        src = dst
                        dst = swp
                        if out_n == 0:
                            break
            if out_n > self._cell_cap[i]:
                self._cells[i] = <double*> realloc(
                    self._cells[i], 2 * out_n * sizeof(double))
                if self._cells[i] == NULL:
                    raise MemoryError()
                self._cell_cap[i] = out_n
            if out_n > 0:
                memcpy(self._cells[i], src, 2 * out_n * sizeof(double))
                nonempty += 1
                total += out_n
            self._cell_n[i] = out_n
        self._nonempty = nonempty
        self._total = total
        return 1 if nonempty == 0 else 0


def fs_decide(double[:, ::1] a, double[:, ::1] b, double eff):
    """Free-space reachability decision, mirroring frechet._decide_py for
    curves with at least two vertices each."""
    cdef int n = a.shape[0]
    cdef int m = b.shape[0]
    cdef int i, j
    cdef double lo, hi, blo, bhi, llo, lhi, rlo, rhi, tlo, thi
    cdef bint has, bhas, lhas, rhas, thas, reach
    if sqrt(d2(a[0, 0], a[0, 1], b[0, 0], b[0, 1])) > eff:
        return False
    if sqrt(d2(a[n - 1, 0], a[n - 1, 1], b[m - 1, 0], b[m - 1, 1])) > eff:
        return False
    cdef double* bot_lo = <double*> malloc((m - 1) * sizeof(double))
    cdef double* bot_hi = <double*> malloc((m - 1) * sizeof(double))
    cdef signed char* bot_has = <signed char*> malloc(m - 1)
    if bot_lo == NULL or bot_hi == NULL or bot_has == NULL:
        free(bot_lo)
        free(bot_hi)
        free(bot_has)
        raise MemoryError()
    try:
        reach = True
        for j in range(m - 1):
            has = interval(a[0, 0], a[0, 1], b[j, 0], b[j, 1],
                           b[j + 1, 0], b[j + 1, 1], eff, &lo, &hi)
            if reach and has and lo <= 0.0 and hi >= 0.0:
                bot_lo[j] = 0.0
                bot_hi[j] = hi if hi < 1.0 else 1.0
                bot_has[j] = 1
                if hi < 1.0:
                    reach = False
            else:
                bot_has[j] = 0
                reach = False
        reach = True  # left boundary contiguity
        for i in range(n - 1):
            has = interval(b[0, 0], b[0, 1], a[i, 0], a[i, 1],
                           a[i + 1, 0], a[i + 1, 1], eff, &lo, &hi)
            if reach and has and lo <= 0.0 and hi >= 0.0:
                llo = 0.0
                lhi = hi if hi < 1.0 else 1.0
                lhas = True
                if hi < 1.0:
                    reach = False
            else:
                lhas = False
                reach = False
            for j in range(m - 1):
                bhas = bot_has[j] != 0
                if bhas:
                    blo = bot_lo[j]
                    bhi = bot_hi[j]
                if not bhas and not lhas:
                    lhas = False
                    bot_has[j] = 0
                    continue
                rhas = interval(b[j + 1, 0], b[j + 1, 1], a[i, 0], a[i, 1],
                                a[i + 1, 0], a[i + 1, 1], eff, &rlo, &rhi)
                thas = interval(a[i + 1, 0], a[i + 1, 1], b[j, 0], b[j, 1],
                                b[j + 1, 0], b[j + 1, 1], eff, &tlo, &thi)
                if bhas:
                    rhas = clip_iv(rhas, &rlo, &rhi, 0.0)
                else:
                    rhas = clip_iv(rhas, &rlo, &rhi, llo)
                if lhas:
                    thas = clip_iv(thas, &tlo, &thi, 0.0)
                else:
                    thas = clip_iv(thas, &tlo, &thi, blo)
                if thas:
                    bot_lo[j] = tlo
                    bot_hi[j] = thi
                    bot_has[j] = 1
                else:
                    bot_has[j] = 0
                lhas = rhas
                if rhas:
                    llo = rlo
                    lhi = rhi
        if bot_has[m - 2] and bot_hi[m - 2] >= 1.0:
            return True
        return False
    finally:
        free(bot_lo)
        free(bot_hi)
        free(bot_has)


cdef bint interval(double cx, double cy, double ax, double ay,
                   double bx, double by, double r,
                   double* lo, double* hi) nogil:
    # mirrors frechet._interval
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double fx = ax - cx
    cdef double fy = ay - cy
    cdef double aa = dx * dx + dy * dy
    cdef double bb, cc, disc, sq
    if aa == 0.0:
        if fx * fx + fy * fy <= r * r:
            lo[0] = -INFINITY
            hi[0] = INFINITY
            return True
        return False
    bb = fx * dx + fy * dy
    cc = fx * fx + fy * fy - r * r
    disc = bb * bb - aa * cc
    if disc < 0.0:
        return False
    sq = sqrt(disc)
    lo[0] = (-bb - sq) / aa
    hi[0] = (-bb + sq) / aa
    return True


cdef bint clip_iv(bint has, double* lo, double* hi, double lo_bound) nogil:
    # mirrors frechet._clip_iv
    if not has:
        return False
    if lo[0] < lo_bound:
        lo[0] = lo_bound
    if hi[0] > 1.0:
        hi[0] = 1.0
    return lo[0] <= hi[0]


def seg_decide(double ax, double ay, double bx, double by,
               double[:, ::1] curve, double eff):
    """Greedy interval walk for segment-vs-curve decisions, mirroring the
    interior loop of frechet.segment_curve_decide."""
    cdef int m = curve.shape[0]
    cdef int j
    cdef double t = 0.0
    cdef double lo, hi
    for j in range(1, m - 1):
        if not interval(curve[j, 0], curve[j, 1], ax, ay, bx, by, eff, &lo, &hi):
            return False
        if hi < 0.0 or lo > 1.0:
            return False
        if lo > t:
            t = lo
        if t > hi:
            return False
    return t <= 1.0
