# distutils: language = c++
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled distance kernels; hyperspace._kernels_py documents the semantics.

Cells and piece arrays are kept in flat C++ vectors; the per-level flow of
the certified supremum search mirrors the numpy fallback exactly (whole
level evaluated, lower bound updated, then prune and split), with matching
operation order in every bound, so the two backends return the same
enclosures bit for bit.
"""

from libc.math cimport INFINITY, sqrt
from libcpp.vector cimport vector

import numpy as np

cdef double OPPOSING = 0.9  # max cosine for a partner piece as a distinct side


cdef inline double _d2_box(const double* x, const double* lo,
                           const double* hi, Py_ssize_t n) noexcept nogil:
    cdef double acc = 0.0, r
    cdef Py_ssize_t i
    for i in range(n):
        r = 0.0
        if x[i] < lo[i]:
            r = lo[i] - x[i]
        elif x[i] > hi[i]:
            r = x[i] - hi[i]
        acc += r * r
    return acc


cdef inline double _d2_seg(const double* x, const double* p,
                           const double* q, Py_ssize_t n) noexcept nogil:
    cdef double ww = 0.0, num = 0.0, t = 0.0, acc = 0.0, w, diff
    cdef Py_ssize_t i
    for i in range(n):
        w = q[i] - p[i]
        ww += w * w
        num += (x[i] - p[i]) * w
    if ww > 0.0:
        t = num / ww
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
    for i in range(n):
        diff = x[i] - (p[i] + t * (q[i] - p[i]))
        acc += diff * diff
    return acc


cdef inline double _d2_pt(const double* x, const double* p,
                          Py_ssize_t n) noexcept nogil:
    cdef double acc = 0.0, diff
    cdef Py_ssize_t i
    for i in range(n):
        diff = x[i] - p[i]
        acc += diff * diff
    return acc


cdef struct PieceArrays:
    const double* box_lo
    const double* box_hi
    const double* seg_p
    const double* seg_q
    const double* pts
    Py_ssize_t n_box
    Py_ssize_t n_seg
    Py_ssize_t n_pt
    Py_ssize_t n


cdef inline Py_ssize_t _piece_total(const PieceArrays* ps) noexcept nogil:
    return ps.n_box + ps.n_seg + ps.n_pt


cdef inline double _d2_piece(const double* x, const PieceArrays* ps,
                             Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t n = ps.n
    if j < ps.n_box:
        return _d2_box(x, ps.box_lo + j * n, ps.box_hi + j * n, n)
    j -= ps.n_box
    if j < ps.n_seg:
        return _d2_seg(x, ps.seg_p + j * n, ps.seg_q + j * n, n)
    return _d2_pt(x, ps.pts + (j - ps.n_seg) * n, n)


cdef inline void _project_piece(const double* x, const PieceArrays* ps,
                                Py_ssize_t j, double* out) noexcept nogil:
    """Nearest point to x on piece j (pieces ordered boxes, segments, points)."""
    cdef Py_ssize_t i, n = ps.n
    cdef const double* lo
    cdef const double* hi
    cdef const double* p
    cdef const double* q
    cdef double ww = 0.0, num = 0.0, t = 0.0, w
    if j < ps.n_box:
        lo = ps.box_lo + j * n
        hi = ps.box_hi + j * n
        for i in range(n):
            out[i] = x[i]
            if out[i] < lo[i]:
                out[i] = lo[i]
            if out[i] > hi[i]:
                out[i] = hi[i]
        return
    j -= ps.n_box
    if j < ps.n_seg:
        p = ps.seg_p + j * n
        q = ps.seg_q + j * n
        for i in range(n):
            w = q[i] - p[i]
            ww += w * w
            num += (x[i] - p[i]) * w
        if ww > 0.0:
            t = num / ww
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
        for i in range(n):
            out[i] = p[i] + t * (q[i] - p[i])
        return
    p = ps.pts + (j - ps.n_seg) * n
    for i in range(n):
        out[i] = p[i]


cdef inline double _min_d2(const double* x, const PieceArrays* ps) noexcept nogil:
    cdef double best = INFINITY, d2
    cdef Py_ssize_t j, n = ps.n
    for j in range(ps.n_box):
        d2 = _d2_box(x, ps.box_lo + j * n, ps.box_hi + j * n, n)
        if d2 < best:
            best = d2
    for j in range(ps.n_seg):
        d2 = _d2_seg(x, ps.seg_p + j * n, ps.seg_q + j * n, n)
        if d2 < best:
            best = d2
    for j in range(ps.n_pt):
        d2 = _d2_pt(x, ps.pts + j * n, n)
        if d2 < best:
            best = d2
    return best


cdef inline double _eval_pieces(const double* x, const PieceArrays* ps,
                                double* piece_max2) noexcept nogil:
    """Fold one eval point into the per-piece maxima; return min d2."""
    cdef double best = INFINITY, d2
    cdef Py_ssize_t j, off = 0, n = ps.n
    for j in range(ps.n_box):
        d2 = _d2_box(x, ps.box_lo + j * n, ps.box_hi + j * n, n)
        if d2 > piece_max2[off + j]:
            piece_max2[off + j] = d2
        if d2 < best:
            best = d2
    off += ps.n_box
    for j in range(ps.n_seg):
        d2 = _d2_seg(x, ps.seg_p + j * n, ps.seg_q + j * n, n)
        if d2 > piece_max2[off + j]:
            piece_max2[off + j] = d2
        if d2 < best:
            best = d2
    off += ps.n_seg
    for j in range(ps.n_pt):
        d2 = _d2_pt(x, ps.pts + j * n, n)
        if d2 > piece_max2[off + j]:
            piece_max2[off + j] = d2
        if d2 < best:
            best = d2
    return best


cdef int _fill_pieces(PieceArrays* ps,
                      double[:, ::1] box_lo, double[:, ::1] box_hi,
                      double[:, ::1] seg_p, double[:, ::1] seg_q,
                      double[:, ::1] pts, Py_ssize_t n) except -1:
    ps.n = n
    ps.n_box = box_lo.shape[0]
    ps.n_seg = seg_p.shape[0]
    ps.n_pt = pts.shape[0]
    ps.box_lo = &box_lo[0, 0] if ps.n_box else NULL
    ps.box_hi = &box_hi[0, 0] if ps.n_box else NULL
    ps.seg_p = &seg_p[0, 0] if ps.n_seg else NULL
    ps.seg_q = &seg_q[0, 0] if ps.n_seg else NULL
    ps.pts = &pts[0, 0] if ps.n_pt else NULL
    return 0


cdef bint _cover_rec(const double* cl, const double* ch, const PieceArrays* ps,
                     const Py_ssize_t* cand, int count, int depth):
    """Exact peel test: is [cl, ch] covered by the union of cand[depth:]?"""
    if depth >= count:
        return False
    cdef Py_ssize_t n = ps.n, i
    cdef const double* blo = ps.box_lo + cand[depth] * n
    cdef const double* bhi = ps.box_hi + cand[depth] * n
    cdef bint inside = True
    for i in range(n):
        if not (blo[i] <= cl[i] and ch[i] <= bhi[i]):
            inside = False
            break
    if inside:
        return True
    cdef vector[double] core_lo, core_hi, slab_lo, slab_hi
    core_lo.resize(n)
    core_hi.resize(n)
    slab_lo.resize(n)
    slab_hi.resize(n)
    for i in range(n):
        core_lo[i] = cl[i]
        core_hi[i] = ch[i]
    cdef Py_ssize_t a
    for i in range(n):
        if core_lo[i] < blo[i]:
            for a in range(n):
                slab_lo[a] = core_lo[a]
                slab_hi[a] = core_hi[a]
            if blo[i] < slab_hi[i]:
                slab_hi[i] = blo[i]
            if not _cover_rec(slab_lo.data(), slab_hi.data(), ps,
                              cand, count, depth + 1):
                return False
        if core_hi[i] > bhi[i]:
            for a in range(n):
                slab_lo[a] = core_lo[a]
                slab_hi[a] = core_hi[a]
            if bhi[i] > slab_lo[i]:
                slab_lo[i] = bhi[i]
            if not _cover_rec(slab_lo.data(), slab_hi.data(), ps,
                              cand, count, depth + 1):
                return False
        if blo[i] > core_lo[i]:
            core_lo[i] = blo[i]
        if bhi[i] < core_hi[i]:
            core_hi[i] = bhi[i]
        if core_lo[i] > core_hi[i]:
            return True
    return True


cdef double _split_bound(const double* verts, const double* svals,
                         Py_ssize_t nverts, Py_ssize_t n,
                         const PieceArrays* ps, Py_ssize_t j1, Py_ssize_t j2,
                         const Py_ssize_t* edge_a, const Py_ssize_t* edge_b,
                         Py_ssize_t nedges, double* buf,
                         double* cross, int* has_cross):
    """Vertex bound applied per side of the linearized tie plane.

    min(d1, d2) <= d1 on one side of any hyperplane and <= d2 on the other,
    and each d is convex, so the sup over the cell is bounded by the vertex
    maxima of the clipped polytopes (cell vertices plus edge crossings).

    Also fills cross with the edge crossing maximizing min(d1, d2) and sets
    has_cross, for use as a probe: the crossings track the tie surface to
    second order, so the probe lands within O(cell^2) of the cell maximizer
    when the tie value itself varies across the cell.
    """
    cdef double side1 = -INFINITY, side2 = -INFINITY, best = -INFINITY
    cdef double d1, d2, m, t, sa, sb
    cdef Py_ssize_t v, e, i
    has_cross[0] = 0
    for v in range(nverts):
        if svals[v] <= 0.0:
            d1 = sqrt(_d2_piece(verts + v * n, ps, j1))
            if d1 > side1:
                side1 = d1
        if svals[v] >= 0.0:
            d2 = sqrt(_d2_piece(verts + v * n, ps, j2))
            if d2 > side2:
                side2 = d2
    for e in range(nedges):
        sa = svals[edge_a[e]]
        sb = svals[edge_b[e]]
        if (sa < 0.0 and sb > 0.0) or (sa > 0.0 and sb < 0.0):
            t = sa / (sa - sb)
            for i in range(n):
                buf[i] = verts[edge_a[e] * n + i] + t * (
                    verts[edge_b[e] * n + i] - verts[edge_a[e] * n + i])
            d1 = sqrt(_d2_piece(buf, ps, j1))
            if d1 > side1:
                side1 = d1
            d2 = sqrt(_d2_piece(buf, ps, j2))
            if d2 > side2:
                side2 = d2
            m = d1 if d1 < d2 else d2
            if m > best:
                best = m
                has_cross[0] = 1
                for i in range(n):
                    cross[i] = buf[i]
    return side1 if side1 > side2 else side2


cdef inline Py_ssize_t _next_by_distance(const double* row, Py_ssize_t total,
                                         double last_d, Py_ssize_t last_j) noexcept nogil:
    """Next piece in (distance, index) lexicographic order after (last_d, last_j)."""
    cdef double best_d = INFINITY
    cdef Py_ssize_t best_j = -1, j
    for j in range(total):
        if row[j] < last_d or (row[j] == last_d and j <= last_j):
            continue
        if row[j] < best_d:
            best_d = row[j]
            best_j = j
    return best_j


cdef Py_ssize_t _tie_partners(const double* c, const double* row,
                              const PieceArrays* ps, Py_ssize_t j1,
                              double* proj1, double* u1,
                              Py_ssize_t* j2s, double* proj2s, double* u2s):
    """Up to two tie partners for the nearest piece j1, nearest first.

    The runner-up in (distance, index) order is kept whenever its unit
    direction from c differs from piece j1's at all: when the two nearest
    pieces approach from almost but not quite the same side, their ridge
    is the binding one and a cosine cut would skip it.  Overlapping pieces
    of a sampled set tie at equal distance in the exact same direction,
    which tells a ridge bound nothing, so the first piece whose direction
    clears the cosine cut is kept as well.  Falls back to the plain
    runner-up so a probe always exists.  Any pair gives a sound bound
    (min over all pieces <= min over the pair pointwise), so the caller
    may take the best of several.  Fills proj1/u1 for j1 and one slot of
    j2s/proj2s/u2s per partner; returns the partner count.
    """
    cdef Py_ssize_t n = ps.n, total = _piece_total(ps)
    cdef Py_ssize_t j, i, npairs = 0, runner = -1
    cdef double dot
    cdef int differs, first = 1
    _project_piece(c, ps, j1, proj1)
    for i in range(n):
        u1[i] = (c[i] - proj1[i]) / row[j1]
    cdef double last_d = row[j1]
    cdef Py_ssize_t last_j = j1
    while True:
        j = _next_by_distance(row, total, last_d, last_j)
        if j < 0:
            break
        if runner < 0:
            runner = j
        _project_piece(c, ps, j, proj2s + npairs * n)
        dot = 0.0
        differs = 0
        for i in range(n):
            u2s[npairs * n + i] = (c[i] - proj2s[npairs * n + i]) / row[j]
            dot += u1[i] * u2s[npairs * n + i]
            if u2s[npairs * n + i] != u1[i]:
                differs = 1
        if first and differs:
            j2s[npairs] = j
            npairs += 1
        first = 0
        if dot <= OPPOSING:
            if npairs == 0 or j2s[npairs - 1] != j:
                j2s[npairs] = j
                npairs += 1
            return npairs
        last_d = row[j]
        last_j = j
    if npairs > 0:
        return npairs
    _project_piece(c, ps, runner, proj2s)
    for i in range(n):
        u2s[i] = (c[i] - proj2s[i]) / row[runner]
    j2s[0] = runner
    return 1


cdef void _tie_point(const double* c, const double* proj2, Py_ssize_t n,
                     const PieceArrays* ps, Py_ssize_t j1, Py_ssize_t j2,
                     double* out):
    """Point on the d1 = d2 tie surface between the center and proj2.

    d1 - d2 is <= 0 at the center (piece 1 is the nearer one) and >= 0 at
    proj2 (where d2 = 0), so a sign change is bracketed on a segment that
    passes through the cell; 50 bisection steps pin it to the last bit.
    Anchoring the split plane at a tie point near the cell matters: for
    curved ties an off-cell anchor leaves a constant gap in the bounds.
    """
    cdef double a = 0.0, b = 1.0, m
    cdef Py_ssize_t i, it
    for it in range(50):
        m = 0.5 * (a + b)
        for i in range(n):
            out[i] = c[i] + m * (proj2[i] - c[i])
        if sqrt(_d2_piece(out, ps, j1)) - sqrt(_d2_piece(out, ps, j2)) <= 0.0:
            a = m
        else:
            b = m
    m = 0.5 * (a + b)
    for i in range(n):
        out[i] = c[i] + m * (proj2[i] - c[i])


cdef void _clamp_to_segment(const double* x, const double* p,
                            const double* direction, double dd,
                            Py_ssize_t n, double* out):
    """Nearest point to x on the segment p + t*direction, t in [0, 1]."""
    cdef double t = 0.0
    cdef Py_ssize_t i
    if dd == 0.0:
        for i in range(n):
            out[i] = p[i]
        return
    for i in range(n):
        t += (x[i] - p[i]) * direction[i]
    t = t / dd
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    for i in range(n):
        out[i] = p[i] + t * direction[i]


def maxmin_points(double[:, ::1] a, double[:, ::1] b):
    """max over rows of a of the min distance to rows of b, naively."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0], n = a.shape[1]
    cdef double cur2 = 0.0, best2, d2, diff
    cdef Py_ssize_t i, j, k
    with nogil:
        for i in range(na):
            best2 = INFINITY
            for j in range(nb):
                d2 = 0.0
                for k in range(n):
                    diff = a[i, k] - b[j, k]
                    d2 += diff * diff
                if d2 < best2:
                    best2 = d2
                    if best2 <= cur2:
                        break
            if best2 > cur2:
                cur2 = best2
    return sqrt(cur2)


def min_dists(double[:, ::1] x,
              double[:, ::1] box_lo, double[:, ::1] box_hi,
              double[:, ::1] seg_p, double[:, ::1] seg_q,
              double[:, ::1] pts):
    """Distance from each row of x to the union of the pieces."""
    cdef Py_ssize_t rows = x.shape[0], n = x.shape[1], i
    cdef PieceArrays ps
    _fill_pieces(&ps, box_lo, box_hi, seg_p, seg_q, pts, n)
    out = np.empty(rows, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(rows):
            res[i] = sqrt(_min_d2(&x[i, 0], &ps))
    return out


cdef tuple _finish(double lower, double pruned_max):
    cdef double upper = pruned_max if pruned_max > lower else lower
    return (0.5 * (lower + upper), 0.5 * (upper - lower))


def sup_dist_box(double[::1] lo, double[::1] hi,
                 double[:, ::1] box_lo, double[:, ::1] box_hi,
                 double[:, ::1] seg_p, double[:, ::1] seg_q,
                 double[:, ::1] pts, double tol, long max_cells):
    """Certified sup of the piece-union distance over the box [lo, hi]."""
    cdef Py_ssize_t n = lo.shape[0]
    cdef Py_ssize_t nv = 1 << n
    cdef PieceArrays ps
    _fill_pieces(&ps, box_lo, box_hi, seg_p, seg_q, pts, n)
    cdef Py_ssize_t total = _piece_total(&ps)

    cdef vector[double] cur, nxt, uppers, piece_max2, evalbuf, row
    cdef vector[double] probes, proj1, proj2, u1, u2, xstar, g, svals, pbuf
    cdef vector[double] crossbuf
    cdef vector[Py_ssize_t] cand, edge_a, edge_b, j2s
    cdef vector[int] nprobes
    cdef double lower = -INFINITY, pruned_max = -INFINITY
    cdef double lower2 = -INFINITY, level_best2, f2, fc2, radius, up, ext, w, mid
    cdef double split
    cdef int has_cross
    cdef Py_ssize_t processed = 0, k, cells, idx, i, axis, j1, j2, ncand, v
    cdef Py_ssize_t npairs, pi
    cdef double last_d
    cdef Py_ssize_t last_j
    cdef const double* clo
    cdef const double* chi
    cdef double* center

    piece_max2.resize(total)
    evalbuf.resize((nv + 1) * n)
    row.resize(total)
    proj1.resize(n)
    proj2.resize(2 * n)
    u1.resize(n)
    u2.resize(2 * n)
    j2s.resize(2)
    xstar.resize(n)
    g.resize(n)
    svals.resize(nv)
    pbuf.resize(n)
    crossbuf.resize(n)
    cand.resize(4)
    for i in range(n):
        for v in range(nv):
            if not (v >> i) & 1:
                edge_a.push_back(v)
                edge_b.push_back(v | (1 << i))
    cur.reserve(2 * n)
    for i in range(n):
        cur.push_back(lo[i])
    for i in range(n):
        cur.push_back(hi[i])

    while cur.size() > 0:
        cells = <Py_ssize_t>(cur.size() // (2 * n))
        processed += cells
        if processed > max_cells:
            raise RuntimeError(f"subdivision exceeded {max_cells} cells")
        uppers.clear()
        uppers.resize(cells)
        probes.clear()
        probes.resize(4 * cells * n)
        nprobes.clear()
        nprobes.resize(cells)
        level_best2 = lower2
        for k in range(cells):
            clo = cur.data() + k * 2 * n
            chi = clo + n
            for i in range(total):
                piece_max2[i] = 0.0
            fc2 = 0.0
            for idx in range(nv + 1):
                if idx < nv:
                    for i in range(n):
                        evalbuf[idx * n + i] = chi[i] if (idx >> i) & 1 else clo[i]
                else:
                    for i in range(n):
                        evalbuf[idx * n + i] = 0.5 * (clo[i] + chi[i])
                f2 = _eval_pieces(evalbuf.data() + idx * n, &ps, piece_max2.data())
                if f2 > level_best2:
                    level_best2 = f2
                if idx == nv:
                    fc2 = f2
            radius = 0.0
            for i in range(n):
                w = chi[i] - clo[i]
                radius += w * w
            radius = 0.5 * sqrt(radius)
            up = INFINITY
            for i in range(total):
                if piece_max2[i] < up:
                    up = piece_max2[i]
            up = sqrt(up)
            if sqrt(fc2) + radius < up:
                up = sqrt(fc2) + radius
            nprobes[k] = 0
            if total >= 2:
                center = evalbuf.data() + nv * n
                if fc2 == 0.0:
                    if ps.n_box >= 2:
                        # boxes within the cell radius, nearest (then lowest
                        # index) first, are the only ones that can cover it
                        ncand = 0
                        last_d = -INFINITY
                        last_j = -1
                        for i in range(ps.n_box):
                            row[i] = sqrt(_d2_box(center, ps.box_lo + i * n,
                                                  ps.box_hi + i * n, n))
                        while ncand < 4:
                            j1 = _next_by_distance(row.data(), ps.n_box,
                                                   last_d, last_j)
                            if j1 < 0 or row[j1] > radius:
                                break
                            cand[ncand] = j1
                            ncand += 1
                            last_d = row[j1]
                            last_j = j1
                        if ncand >= 2 and _cover_rec(clo, chi, &ps,
                                                     cand.data(), <int>ncand, 0):
                            up = 0.0
                else:
                    for i in range(total):
                        row[i] = sqrt(_d2_piece(center, &ps, i))
                    j1 = _next_by_distance(row.data(), total, -INFINITY, -1)
                    npairs = _tie_partners(center, row.data(), &ps, j1,
                                           proj1.data(), u1.data(),
                                           j2s.data(), proj2.data(),
                                           u2.data())
                    for pi in range(npairs):
                        j2 = j2s[pi]
                        _tie_point(center, proj2.data() + pi * n, n, &ps,
                                   j1, j2, xstar.data())
                        for i in range(n):
                            g[i] = u1[i] - u2[pi * n + i]
                        for v in range(nv):
                            w = 0.0
                            for i in range(n):
                                w += (evalbuf[v * n + i] - xstar[i]) * g[i]
                            svals[v] = w
                        split = _split_bound(evalbuf.data(), svals.data(),
                                             nv, n, &ps, j1, j2,
                                             edge_a.data(), edge_b.data(),
                                             <Py_ssize_t>edge_a.size(),
                                             pbuf.data(), crossbuf.data(),
                                             &has_cross)
                        if split < up:
                            up = split
                        for i in range(n):
                            mid = xstar[i]
                            if mid < lo[i]:
                                mid = lo[i]
                            if mid > hi[i]:
                                mid = hi[i]
                            probes[(4 * k + nprobes[k]) * n + i] = mid
                        nprobes[k] += 1
                        if has_cross:
                            for i in range(n):
                                mid = crossbuf[i]
                                if mid < lo[i]:
                                    mid = lo[i]
                                if mid > hi[i]:
                                    mid = hi[i]
                                probes[(4 * k + nprobes[k]) * n + i] = mid
                            nprobes[k] += 1
            uppers[k] = up
        for k in range(cells):
            for v in range(nprobes[k]):
                f2 = _min_d2(probes.data() + (4 * k + v) * n, &ps)
                if f2 > level_best2:
                    level_best2 = f2
        lower2 = level_best2
        lower = sqrt(lower2) if lower2 >= 0.0 else -INFINITY
        nxt.clear()
        for k in range(cells):
            up = uppers[k]
            if up > lower + 2.0 * tol:
                clo = cur.data() + k * 2 * n
                chi = clo + n
                axis = 0
                ext = chi[0] - clo[0]
                for i in range(1, n):
                    w = chi[i] - clo[i]
                    if w > ext:
                        ext = w
                        axis = i
                mid = 0.5 * (clo[axis] + chi[axis])
                for i in range(n):
                    nxt.push_back(clo[i])
                for i in range(n):
                    nxt.push_back(mid if i == axis else chi[i])
                for i in range(n):
                    nxt.push_back(mid if i == axis else clo[i])
                for i in range(n):
                    nxt.push_back(chi[i])
            elif up > pruned_max:
                pruned_max = up
        cur.swap(nxt)
    return _finish(lower, pruned_max)


def sup_dist_segment(double[::1] p, double[::1] q,
                     double[:, ::1] box_lo, double[:, ::1] box_hi,
                     double[:, ::1] seg_p, double[:, ::1] seg_q,
                     double[:, ::1] pts, double tol, long max_cells):
    """Certified sup of the piece-union distance over the segment p-q."""
    cdef Py_ssize_t n = p.shape[0]
    cdef PieceArrays ps
    _fill_pieces(&ps, box_lo, box_hi, seg_p, seg_q, pts, n)
    cdef Py_ssize_t total = _piece_total(&ps)

    cdef vector[double] cur, nxt, uppers, piece_max2, evalbuf, direction, row
    cdef vector[double] probes, proj1, proj2, u1, u2, xstar, g, svals, pbuf
    cdef vector[double] crossbuf
    cdef vector[Py_ssize_t] edge_a, edge_b, j2s
    cdef vector[int] nprobes
    cdef double lower = -INFINITY, pruned_max = -INFINITY
    cdef double lower2 = -INFINITY, level_best2, f2, fc2, radius, up
    cdef double length = 0.0, dd = 0.0, w, t, ta, tb, mid, split
    cdef int has_cross
    cdef Py_ssize_t processed = 0, k, cells, idx, i, j1, j2, v
    cdef Py_ssize_t npairs, pi
    cdef double* center

    piece_max2.resize(total)
    evalbuf.resize(3 * n)
    direction.resize(n)
    row.resize(total)
    proj1.resize(n)
    proj2.resize(2 * n)
    u1.resize(n)
    u2.resize(2 * n)
    j2s.resize(2)
    xstar.resize(n)
    g.resize(n)
    svals.resize(2)
    pbuf.resize(n)
    crossbuf.resize(n)
    edge_a.push_back(0)
    edge_b.push_back(1)
    for i in range(n):
        w = q[i] - p[i]
        direction[i] = w
        dd += w * w
    length = sqrt(dd)
    cur.push_back(0.0)
    cur.push_back(1.0)

    while cur.size() > 0:
        cells = <Py_ssize_t>(cur.size() // 2)
        processed += cells
        if processed > max_cells:
            raise RuntimeError(f"subdivision exceeded {max_cells} cells")
        uppers.clear()
        uppers.resize(cells)
        probes.clear()
        probes.resize(4 * cells * n)
        nprobes.clear()
        nprobes.resize(cells)
        level_best2 = lower2
        for k in range(cells):
            ta = cur[2 * k]
            tb = cur[2 * k + 1]
            for i in range(total):
                piece_max2[i] = 0.0
            fc2 = 0.0
            for idx in range(3):
                t = ta if idx == 0 else (tb if idx == 1 else 0.5 * (ta + tb))
                for i in range(n):
                    evalbuf[idx * n + i] = p[i] + t * direction[i]
                f2 = _eval_pieces(evalbuf.data() + idx * n, &ps, piece_max2.data())
                if f2 > level_best2:
                    level_best2 = f2
                if idx == 2:
                    fc2 = f2
            radius = 0.5 * (tb - ta) * length
            up = INFINITY
            for i in range(total):
                if piece_max2[i] < up:
                    up = piece_max2[i]
            up = sqrt(up)
            if sqrt(fc2) + radius < up:
                up = sqrt(fc2) + radius
            nprobes[k] = 0
            if total >= 2 and fc2 > 0.0:
                center = evalbuf.data() + 2 * n
                for i in range(total):
                    row[i] = sqrt(_d2_piece(center, &ps, i))
                j1 = _next_by_distance(row.data(), total, -INFINITY, -1)
                npairs = _tie_partners(center, row.data(), &ps, j1,
                                       proj1.data(), u1.data(), j2s.data(),
                                       proj2.data(), u2.data())
                for pi in range(npairs):
                    j2 = j2s[pi]
                    _tie_point(center, proj2.data() + pi * n, n, &ps,
                               j1, j2, xstar.data())
                    for i in range(n):
                        g[i] = u1[i] - u2[pi * n + i]
                    for v in range(2):
                        w = 0.0
                        for i in range(n):
                            w += (evalbuf[v * n + i] - xstar[i]) * g[i]
                        svals[v] = w
                    split = _split_bound(evalbuf.data(), svals.data(), 2, n,
                                         &ps, j1, j2, edge_a.data(),
                                         edge_b.data(), 1, pbuf.data(),
                                         crossbuf.data(), &has_cross)
                    if split < up:
                        up = split
                    # clamp the tie probes back onto the domain segment
                    _clamp_to_segment(xstar.data(), &p[0], direction.data(),
                                      dd, n,
                                      probes.data() + (4 * k + nprobes[k]) * n)
                    nprobes[k] += 1
                    if has_cross:
                        _clamp_to_segment(crossbuf.data(), &p[0],
                                          direction.data(), dd, n,
                                          probes.data()
                                          + (4 * k + nprobes[k]) * n)
                        nprobes[k] += 1
            uppers[k] = up
        for k in range(cells):
            for v in range(nprobes[k]):
                f2 = _min_d2(probes.data() + (4 * k + v) * n, &ps)
                if f2 > level_best2:
                    level_best2 = f2
        lower2 = level_best2
        lower = sqrt(lower2) if lower2 >= 0.0 else -INFINITY
        nxt.clear()
        for k in range(cells):
            up = uppers[k]
            if up > lower + 2.0 * tol:
                ta = cur[2 * k]
                tb = cur[2 * k + 1]
                mid = 0.5 * (ta + tb)
                nxt.push_back(ta)
                nxt.push_back(mid)
                nxt.push_back(mid)
                nxt.push_back(tb)
            elif up > pruned_max:
                pruned_max = up
        cur.swap(nxt)
    return _finish(lower, pruned_max)
