"""Numpy implementations of the distance kernels.

This is the fallback backend; hyperspace._kernels is the compiled twin with
the same four entry points.  Both operate on float64 C-contiguous arrays.

A target set is always passed flattened into convex pieces: boxes
(box_lo/box_hi), segments (seg_p/seg_q) and single points (pts).  Distance
to a convex piece is a convex function, so its supremum over a convex cell
is attained at a cell vertex; the certified supremum routines exploit that
and the 1-Lipschitz bound f(center) + radius to shrink the enclosure
[best value seen, best upper bound] below the requested tolerance.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial.distance import cdist

_CHUNK = 4_000_000  # pairwise-distance entries per block


def maxmin_points(a: np.ndarray, b: np.ndarray) -> float:
    """max over rows of a of the min distance to rows of b, naively."""
    rows = max(1, _CHUNK // max(1, b.shape[0]))
    best = 0.0
    for i in range(0, a.shape[0], rows):
        mins = cdist(a[i:i + rows], b).min(axis=1)
        best = max(best, float(mins.max()))
    return best


def _dist_matrix(x, box_lo, box_hi, seg_p, seg_q, pts):
    """Distances from each row of x to each convex piece, shape (N, P)."""
    cols = []
    if box_lo.shape[0]:
        below = np.clip(box_lo[None, :, :] - x[:, None, :], 0.0, None)
        above = np.clip(x[:, None, :] - box_hi[None, :, :], 0.0, None)
        cols.append(np.sqrt(((below + above) ** 2).sum(axis=2)))
    if seg_p.shape[0]:
        w = seg_q - seg_p
        ww = (w * w).sum(axis=1)
        num = ((x[:, None, :] - seg_p[None, :, :]) * w[None, :, :]).sum(axis=2)
        t = np.divide(num, ww[None, :], out=np.zeros_like(num),
                      where=ww[None, :] > 0.0)
        np.clip(t, 0.0, 1.0, out=t)
        proj = seg_p[None, :, :] + t[:, :, None] * w[None, :, :]
        diff = x[:, None, :] - proj
        cols.append(np.sqrt((diff * diff).sum(axis=2)))
    if pts.shape[0]:
        cols.append(cdist(x, pts))
    return np.concatenate(cols, axis=1)


def min_dists(x, box_lo, box_hi, seg_p, seg_q, pts) -> np.ndarray:
    """Distance from each row of x to the union of the pieces."""
    return _dist_matrix(x, box_lo, box_hi, seg_p, seg_q, pts).min(axis=1)


def _finish(lower, upper_candidate):
    upper = max(lower, upper_candidate)
    return 0.5 * (lower + upper), 0.5 * (upper - lower)


def _project(c, j, box_lo, box_hi, seg_p, seg_q, pts):
    """Nearest point to c on piece j (pieces ordered boxes, segments, points)."""
    nb, ns = box_lo.shape[0], seg_p.shape[0]
    if j < nb:
        return np.minimum(np.maximum(c, box_lo[j]), box_hi[j])
    j -= nb
    if j < ns:
        w = seg_q[j] - seg_p[j]
        ww = float((w * w).sum())
        if ww > 0.0:
            t = min(max(float(((c - seg_p[j]) * w).sum()) / ww, 0.0), 1.0)
        else:
            t = 0.0
        return seg_p[j] + t * w
    return pts[j - ns]


_OPPOSING = 0.9  # max cosine for a partner piece to count as a distinct side


def _piece_dist(x, j, box_lo, box_hi, seg_p, seg_q, pts):
    """Distance from a single point to piece j, matching _dist_matrix."""
    nb, ns = box_lo.shape[0], seg_p.shape[0]
    if j < nb:
        below = np.clip(box_lo[j] - x, 0.0, None)
        above = np.clip(x - box_hi[j], 0.0, None)
        return math.sqrt(float(((below + above) ** 2).sum()))
    diff = x - _project(x, j, box_lo, box_hi, seg_p, seg_q, pts)
    return math.sqrt(float((diff * diff).sum()))


def _tie_pairs(row, c, pieces):
    """Nearest piece paired with up to two tie partners, nearest first.

    The runner-up in (distance, index) order is kept whenever its unit
    direction from c differs from the nearest piece's at all: when the two
    nearest pieces approach from almost but not quite the same side, their
    ridge is the binding one and a cosine cut would skip it.  Overlapping
    pieces of a sampled set tie at equal distance in the exact same
    direction, which tells a ridge bound nothing, so the first piece whose
    direction clears the cosine cut is kept as well.  Falls back to the
    plain runner-up so a probe always exists.  Any pair gives a sound
    bound (min over all pieces <= min over the pair pointwise), so the
    caller may take the best of several.  Returns a list of tuples
    (j1, j2, proj1, proj2, u1, u2).
    """
    order = np.argsort(row, kind="stable")
    j1 = int(order[0])
    proj1 = _project(c, j1, *pieces)
    u1 = (c - proj1) / row[j1]
    pairs = []
    for rank, j in enumerate(order[1:]):
        j = int(j)
        proj2 = _project(c, j, *pieces)
        u2 = (c - proj2) / row[j]
        if rank == 0 and not np.array_equal(u1, u2):
            pairs.append((j1, j, proj1, proj2, u1, u2))
        if float((u1 * u2).sum()) <= _OPPOSING:
            if not pairs or pairs[-1][1] != j:
                pairs.append((j1, j, proj1, proj2, u1, u2))
            break
    if not pairs:
        j2 = int(order[1])
        proj2 = _project(c, j2, *pieces)
        u2 = (c - proj2) / row[j2]
        pairs.append((j1, j2, proj1, proj2, u1, u2))
    return pairs


def _piece_dist_rows(xs, js, box_lo, box_hi, seg_p, seg_q, pts):
    """Rowwise distances from xs[i] to piece js[i], matching _piece_dist."""
    nb, ns = box_lo.shape[0], seg_p.shape[0]
    out = np.empty(xs.shape[0])
    sel = js < nb
    if sel.any():
        x = xs[sel]
        idx = js[sel]
        base = (np.clip(box_lo[idx] - x, 0.0, None)
                + np.clip(x - box_hi[idx], 0.0, None))
        out[sel] = np.sqrt((base ** 2).sum(axis=1))
    sel = (js >= nb) & (js < nb + ns)
    if sel.any():
        x = xs[sel]
        idx = js[sel] - nb
        w = seg_q[idx] - seg_p[idx]
        ww = (w * w).sum(axis=1)
        num = ((x - seg_p[idx]) * w).sum(axis=1)
        t = np.divide(num, ww, out=np.zeros_like(num), where=ww > 0.0)
        np.clip(t, 0.0, 1.0, out=t)
        diff = x - (seg_p[idx] + t[:, None] * w)
        out[sel] = np.sqrt((diff * diff).sum(axis=1))
    sel = js >= nb + ns
    if sel.any():
        diff = xs[sel] - pts[js[sel] - nb - ns]
        out[sel] = np.sqrt((diff * diff).sum(axis=1))
    return out


def _tie_points(cs, proj2s, j1s, j2s, pieces):
    """Points on the d1 = d2 tie surface between each center and proj2.

    d1 - d2 is <= 0 at the center (piece 1 is the nearer one) and >= 0 at
    proj2 (where d2 = 0), so a sign change is bracketed on a segment that
    passes through the cell; 50 bisection steps pin it to the last bit.
    Anchoring the split plane at a tie point near the cell matters: for
    curved ties an off-cell anchor leaves a constant gap in the bounds.
    All rows are bisected in lockstep; each row's iterates match what a
    one-point bisection would produce.
    """
    a = np.zeros(cs.shape[0])
    b = np.ones(cs.shape[0])
    diff = proj2s - cs
    for _ in range(50):
        m = 0.5 * (a + b)
        x = cs + m[:, None] * diff
        le = (_piece_dist_rows(x, j1s, *pieces)
              - _piece_dist_rows(x, j2s, *pieces)) <= 0.0
        a = np.where(le, m, a)
        b = np.where(le, b, m)
    return cs + (0.5 * (a + b))[:, None] * diff


def _split_bound(vert_xy, vert_d1, vert_d2, edges, g, xstar, j1, j2, pieces):
    """Vertex bound applied per side of the linearized tie plane.

    min(d1, d2) <= d1 on one side of any hyperplane and <= d2 on the other,
    and each d is convex, so the sup over the cell is bounded by the vertex
    maxima of the clipped polytopes (cell vertices plus edge crossings).
    With the plane through the tie point, normal g = u1 - u2, both bounds
    are exact where the distance fields are affine, which is what kills
    flat ridges between non-parallel faces.

    Also returns the edge crossing maximizing min(d1, d2), or None.
    Probing it closes the remaining gap when the tie value itself varies
    across the cell (curved ties peaking on a cell face): the crossings
    track the tie surface to second order, so the probe lands within
    O(cell^2) of the cell maximizer while the plain center tie point is
    O(cell) away.
    """
    s = ((vert_xy - xstar) * g).sum(axis=1)
    side1 = -np.inf
    side2 = -np.inf
    best = -np.inf
    best_pt = None
    for v in range(vert_xy.shape[0]):
        if s[v] <= 0.0 and vert_d1[v] > side1:
            side1 = float(vert_d1[v])
        if s[v] >= 0.0 and vert_d2[v] > side2:
            side2 = float(vert_d2[v])
    for a, b in edges:
        if (s[a] < 0.0 and s[b] > 0.0) or (s[a] > 0.0 and s[b] < 0.0):
            t = s[a] / (s[a] - s[b])
            pt = vert_xy[a] + t * (vert_xy[b] - vert_xy[a])
            d1 = _piece_dist(pt, j1, *pieces)
            d2 = _piece_dist(pt, j2, *pieces)
            if d1 > side1:
                side1 = d1
            if d2 > side2:
                side2 = d2
            m = d1 if d1 < d2 else d2
            if m > best:
                best = m
                best_pt = pt
    return max(side1, side2), best_pt


def _boxes_cover(cell_lo, cell_hi, covers):
    """Exact test: is the cell covered by the union of the listed boxes?

    Peels the cell by the first box and recurses on the outside slabs, so
    only comparisons are involved.
    """
    if not covers:
        return False
    b_lo, b_hi = covers[0]
    if np.all(b_lo <= cell_lo) and np.all(cell_hi <= b_hi):
        return True
    core_lo, core_hi = cell_lo.copy(), cell_hi.copy()
    for i in range(cell_lo.shape[0]):
        if core_lo[i] < b_lo[i]:
            slab_hi = core_hi.copy()
            slab_hi[i] = min(core_hi[i], b_lo[i])
            if not _boxes_cover(core_lo.copy(), slab_hi, covers[1:]):
                return False
        if core_hi[i] > b_hi[i]:
            slab_lo = core_lo.copy()
            slab_lo[i] = max(core_lo[i], b_hi[i])
            if not _boxes_cover(slab_lo, core_hi.copy(), covers[1:]):
                return False
        core_lo[i] = max(core_lo[i], b_lo[i])
        core_hi[i] = min(core_hi[i], b_hi[i])
        if core_lo[i] > core_hi[i]:
            return True
    return True


def _cell_extras(bounds, verts_xy, edges, centers, radius, dmat, fvals,
                 upper, clamp, pieces):
    """Sharpen upper bounds at piece ties and collect tie-point probes.

    Near a ridge where two pieces are equally close, the per-piece vertex
    bound converges only linearly, so: (a) bound the cell via _split_bound
    across the linearized tie plane of each pair from _tie_pairs, keeping
    the best, (b) when the center sits inside a piece box, prove the whole
    cell is covered (sup 0 there) by an exact peeling test over the nearby
    boxes, and (c) probe the bisected tie point between the projections
    onto the paired pieces, which lands on the ridge and lifts the lower
    bound to the tie value.
    """
    box_lo, box_hi, seg_p, seg_q, pts = pieces
    nb = box_lo.shape[0]
    total = dmat.shape[1]
    probes = []
    if total < 2:
        return probes
    rows = dmat.reshape(fvals.shape[0], fvals.shape[1], total)
    work = []
    for cell in range(fvals.shape[0]):
        center_row = rows[cell, -1]
        if fvals[cell, -1] == 0.0:
            if nb >= 2 and bounds[cell] is not None:
                near = np.flatnonzero(center_row[:nb] <= radius[cell])
                if near.size >= 2:
                    order = np.argsort(center_row[near], kind="stable")[:4]
                    covers = [(box_lo[j], box_hi[j]) for j in near[order]]
                    if _boxes_cover(*bounds[cell], covers):
                        upper[cell] = 0.0
            continue
        for pair in _tie_pairs(center_row, centers[cell], pieces):
            work.append((cell, *pair))
    if not work:
        return probes
    sel = np.array([w[0] for w in work])
    xstars = _tie_points(centers[sel], np.array([w[4] for w in work]),
                         np.array([w[1] for w in work]),
                         np.array([w[2] for w in work]), pieces)
    for i, (cell, j1, j2, proj1, proj2, u1, u2) in enumerate(work):
        xstar = xstars[i]
        ub, cross = _split_bound(verts_xy[cell], rows[cell, :-1, j1],
                                 rows[cell, :-1, j2], edges, u1 - u2, xstar,
                                 j1, j2, pieces)
        if ub < upper[cell]:
            upper[cell] = ub
        probes.append(clamp(xstar))
        if cross is not None:
            probes.append(clamp(cross))
    return probes


def sup_dist_box(lo, hi, box_lo, box_hi, seg_p, seg_q, pts,
                 tol: float, max_cells: int):
    """Certified sup of the piece-union distance over the box [lo, hi].

    Returns (value, err) with |value - sup| <= err and err <= tol.
    """
    n = lo.shape[0]
    nv = 1 << n
    pieces = (box_lo, box_hi, seg_p, seg_q, pts)
    masks = (np.arange(nv)[:, None] >> np.arange(n)[None, :] & 1).astype(bool)
    edges = [(a, a | (1 << i)) for i in range(n)
             for a in range(nv) if not (a >> i) & 1]
    los = lo[None, :].copy()
    his = hi[None, :].copy()
    lower = -np.inf
    pruned_max = -np.inf
    processed = 0

    def clamp(x):
        return np.minimum(np.maximum(x, lo), hi)

    while los.shape[0]:
        k = los.shape[0]
        processed += k
        if processed > max_cells:
            raise RuntimeError(f"subdivision exceeded {max_cells} cells")
        verts = np.where(masks[None, :, :], his[:, None, :], los[:, None, :])
        centers = 0.5 * (los + his)
        evals = np.concatenate([verts, centers[:, None, :]], axis=1)
        dmat = _dist_matrix(evals.reshape(-1, n), *pieces)
        fvals = dmat.min(axis=1).reshape(k, -1)
        lower = max(lower, float(fvals.max()))
        radius = 0.5 * np.sqrt(((his - los) ** 2).sum(axis=1))
        upper_pieces = dmat.reshape(k, nv + 1, -1).max(axis=1).min(axis=1)
        upper = np.minimum(upper_pieces, fvals[:, -1] + radius)
        cells = [(los[i], his[i]) for i in range(k)]
        probes = _cell_extras(cells, verts, edges, centers, radius, dmat,
                              fvals, upper, clamp, pieces)
        if probes:
            fstar = _dist_matrix(np.array(probes), *pieces).min(axis=1)
            lower = max(lower, float(fstar.max()))
        keep = upper > lower + 2.0 * tol
        dropped = upper[~keep]
        if dropped.size:
            pruned_max = max(pruned_max, float(dropped.max()))
        los, his = los[keep], his[keep]
        if los.shape[0]:
            axis = np.argmax(his - los, axis=1)
            rows = np.arange(los.shape[0])
            mid = 0.5 * (los[rows, axis] + his[rows, axis])
            his_a = his.copy()
            his_a[rows, axis] = mid
            los_b = los.copy()
            los_b[rows, axis] = mid
            los = np.concatenate([los, los_b])
            his = np.concatenate([his_a, his])
    return _finish(lower, pruned_max)


def sup_dist_segment(p, q, box_lo, box_hi, seg_p, seg_q, pts,
                     tol: float, max_cells: int):
    """Certified sup of the piece-union distance over the segment p-q."""
    n = p.shape[0]
    pieces = (box_lo, box_hi, seg_p, seg_q, pts)
    direction = q - p
    dd = float((direction * direction).sum())
    length = math.sqrt(dd)
    cells = np.array([[0.0, 1.0]])
    lower = -np.inf
    pruned_max = -np.inf
    processed = 0

    def clamp(x):
        if dd == 0.0:
            return p
        t = min(max(float(((x - p) * direction).sum()) / dd, 0.0), 1.0)
        return p + t * direction

    while cells.shape[0]:
        k = cells.shape[0]
        processed += k
        if processed > max_cells:
            raise RuntimeError(f"subdivision exceeded {max_cells} cells")
        mid = 0.5 * (cells[:, 0] + cells[:, 1])
        ts = np.stack([cells[:, 0], cells[:, 1], mid], axis=1)
        evals = p[None, None, :] + ts[:, :, None] * direction[None, None, :]
        centers = evals[:, 2]
        dmat = _dist_matrix(evals.reshape(-1, n), *pieces)
        fvals = dmat.min(axis=1).reshape(k, 3)
        lower = max(lower, float(fvals.max()))
        radius = 0.5 * (cells[:, 1] - cells[:, 0]) * length
        upper_pieces = dmat.reshape(k, 3, -1).max(axis=1).min(axis=1)
        upper = np.minimum(upper_pieces, fvals[:, 2] + radius)
        flags = [None] * k  # no covered-cell test on a 1D domain
        probes = _cell_extras(flags, evals[:, :2], [(0, 1)], centers, radius,
                              dmat, fvals, upper, clamp, pieces)
        if probes:
            fstar = _dist_matrix(np.array(probes), *pieces).min(axis=1)
            lower = max(lower, float(fstar.max()))
        keep = upper > lower + 2.0 * tol
        dropped = upper[~keep]
        if dropped.size:
            pruned_max = max(pruned_max, float(dropped.max()))
        cells, mid = cells[keep], mid[keep]
        if cells.shape[0]:
            cells = np.concatenate([
                np.stack([cells[:, 0], mid], axis=1),
                np.stack([mid, cells[:, 1]], axis=1),
            ])
    return _finish(lower, pruned_max)
