"""Compiled depth-first enumeration kernels.

States are int64 rows.  Tuple families: the curvatures followed by the index
of the face whose flip produced the state (-1 for a root).  Grid families:
(A, B, C, E, i0, j0, orient, is_root).

Every kernel writes only the value 1 into the presence arrays, so concurrent
subtree tasks sharing them produce a schedule-independent result.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# face tables, duplicated from configs as arrays for the compiled code
OCT_FACES = np.array([[0, 1, 2], [0, 1, 3], [0, 2, 4], [0, 3, 4],
                      [1, 2, 5], [1, 3, 5], [2, 4, 5], [3, 4, 5]], dtype=np.int64)
OCT_OPP = np.array([5, 4, 3, 2, 1, 0], dtype=np.int64)
CUBE_FACES = np.array([[0, 1, 2, 3], [4, 5, 6, 7], [0, 1, 5, 4],
                       [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]], dtype=np.int64)
CUBE_OPP = np.array([6, 7, 4, 5, 2, 3, 0, 1], dtype=np.int64)
OCT_ADJ = np.array([[1, 2, 3, 4], [0, 2, 3, 5], [0, 1, 4, 5],
                    [0, 1, 4, 5], [0, 2, 3, 5], [1, 2, 3, 4]], dtype=np.int64)
CUBE_ADJ = np.array([[1, 3, 4], [0, 2, 5], [1, 3, 6], [0, 2, 7],
                     [0, 5, 7], [1, 4, 6], [2, 5, 7], [3, 4, 6]], dtype=np.int64)

STAT_STATES = 0
STAT_CIRCLES = 1
STAT_CAPPED = 2
STAT_MAXSTACK = 3
N_STATS = 4


@njit(cache=True, nogil=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _mark(pres, color, v, N):
    if 1 <= v <= N:
        pres[color, v] = 1


@njit(cache=True, nogil=True)
def _grow(stack, top):
    if top < stack.shape[0]:
        return stack
    bigger = np.empty((stack.shape[0] * 2, stack.shape[1]), dtype=np.int64)
    bigger[: stack.shape[0]] = stack
    return bigger


# ---- tuple families ---------------------------------------------------------------

@njit(cache=True, nogil=True)
def _tuple_w(v, cube):
    if cube:
        return v[0] + v[6]
    return (v[0] + v[5]) // 2


@njit(cache=True, nogil=True)
def _tuple_flip(v, f, cube, out):
    """Write the flip of state v through face f into out[:n]; return the new w."""
    n = 8 if cube else 6
    for k in range(n):
        out[k] = v[k]
    w = _tuple_w(v, cube)
    if cube:
        fc = CUBE_FACES[f]
        w2 = 4 * (v[fc[0]] + v[fc[2]]) - w
        for t in range(4):
            i = fc[t]
            out[CUBE_OPP[i]] = w2 - v[i]
    else:
        fc = OCT_FACES[f]
        w2 = 2 * (v[fc[0]] + v[fc[1]] + v[fc[2]]) - w
        for t in range(3):
            i = fc[t]
            out[OCT_OPP[i]] = 2 * w2 - v[i]
    return w2


@njit(cache=True, nogil=True)
def _tuple_visit(row, cube, N, pres, colmap, hist, track, M, stats):
    n = 8 if cube else 6
    f = row[n]
    for k in range(n):
        _mark(pres, colmap[k], row[k], N)
    if f < 0:
        for k in range(n):
            if 1 <= row[k] <= N:
                stats[STAT_CIRCLES] += 1
    else:
        nf = 4 if cube else 3
        for t in range(nf):
            i = CUBE_OPP[CUBE_FACES[f, t]] if cube else OCT_OPP[OCT_FACES[f, t]]
            if 1 <= row[i] <= N:
                stats[STAT_CIRCLES] += 1
    if track:
        # tangent pairs touching a new circle (all pairs at a root)
        for i in range(n):
            new_i = f < 0
            if not new_i:
                nf = 4 if cube else 3
                for t in range(nf):
                    j = CUBE_OPP[CUBE_FACES[f, t]] if cube else OCT_OPP[OCT_FACES[f, t]]
                    if j == i:
                        new_i = True
            if not new_i:
                continue
            deg = 3 if cube else 4
            for t in range(deg):
                j = CUBE_ADJ[i, t] if cube else OCT_ADJ[i, t]
                a = row[i]
                b = row[j]
                if a == 0 or b == 0 or a > N or b > N:
                    continue
                if _gcd(a, b) == 1:
                    hist[(a + b) % M] += 1
    stats[STAT_STATES] += 1


@njit(cache=True, nogil=True)
def tuple_children(row, cube, N, out):
    """Children of a state under the monotone rule; returns their count."""
    n = 8 if cube else 6
    nfaces = 6 if cube else 8
    w = _tuple_w(row, cube)
    buf = np.empty(n, dtype=np.int64)
    cnt = 0
    for f in range(nfaces):
        w2 = _tuple_flip(row, f, cube, buf)
        if w2 <= w:
            continue
        nf = 4 if cube else 3
        ok = False
        for t in range(nf):
            i = CUBE_OPP[CUBE_FACES[f, t]] if cube else OCT_OPP[OCT_FACES[f, t]]
            if buf[i] <= N:
                ok = True
        if not ok:
            continue
        for k in range(n):
            out[cnt, k] = buf[k]
        out[cnt, n] = f
        cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def tuple_subtrees(starts, cube, N, pres, colmap, hist, track, M, max_states, stats):
    """Depth-first enumeration of the subtrees below each start row."""
    n = 8 if cube else 6
    stack = np.empty((1024, n + 1), dtype=np.int64)
    kids = np.empty((8, n + 1), dtype=np.int64)
    for s in range(starts.shape[0]):
        top = 0
        stack[0] = starts[s]
        top = 1
        while top > 0:
            top -= 1
            row = stack[top].copy()
            _tuple_visit(row, cube, N, pres, colmap, hist, track, M, stats)
            if max_states > 0 and stats[STAT_STATES] >= max_states:
                stats[STAT_CAPPED] = 1
                return
            c = tuple_children(row, cube, N, kids)
            for k in range(c):
                stack = _grow(stack, top + 1)
                stack[top] = kids[k]
                top += 1
            if top > stats[STAT_MAXSTACK]:
                stats[STAT_MAXSTACK] = top


# ---- grid families ---------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _q(tri, i, j):
    if tri:
        return i * i + i * j + j * j
    return i * i + j * j


@njit(cache=True, nogil=True)
def _val(p, tri, i, j):
    return p[0] * _q(tri, i, j) + p[1] * i + p[2] * j + p[3]


@njit(cache=True, nogil=True)
def _polar(tri, A, B, C, E, a, b, c, e):
    if tri:
        return 4 * B * b - 2 * (B * c + C * b) + 4 * C * c - 6 * (A * e + E * a) - 3 * A * a
    return B * b + C * c - 2 * (A * e + E * a) - A * a


@njit(cache=True, nogil=True)
def _face_poly(tri, i0, j0, o, h):
    if not tri:
        h[0] = 1
        h[1] = -(2 * i0 + 1)
        h[2] = -(2 * j0 + 1)
        h[3] = i0 * (i0 + 1) + j0 * (j0 + 1)
        return
    if o == 0:
        lx = -1
        c0 = 0
    else:
        lx = -2
        c0 = 1
    h[0] = 1
    h[1] = -2 * i0 - j0 + lx
    h[2] = -2 * j0 - i0 + lx
    h[3] = i0 * i0 + i0 * j0 + j0 * j0 - lx * (i0 + j0) + c0


@njit(cache=True, nogil=True)
def _is_corner(tri, i0, j0, o, i, j):
    if not tri:
        return (i == i0 or i == i0 + 1) and (j == j0 or j == j0 + 1)
    if o == 0:
        return (i == i0 and j == j0) or (i == i0 + 1 and j == j0) or (i == i0 and j == j0 + 1)
    return (i == i0 + 1 and j == j0) or (i == i0 and j == j0 + 1) or (i == i0 + 1 and j == j0 + 1)


@njit(cache=True, nogil=True)
def _vertex(p, tri):
    A = p[0]
    if tri:
        return (-2.0 * p[1] + p[2]) / (3.0 * A), (-2.0 * p[2] + p[1]) / (3.0 * A)
    return -p[1] / (2.0 * A), -p[2] / (2.0 * A)


@njit(cache=True, nogil=True)
def _box(p, tri, N):
    """Index box containing every lattice point with value <= N (A > 0)."""
    ci, cj = _vertex(p, tri)
    # value at the vertex
    A = p[0]
    if tri:
        vmin = p[3] - (p[1] * p[1] - p[1] * p[2] + p[2] * p[2]) / (3.0 * A)
        r = np.sqrt(max(0.0, (N - vmin) / A) * 4.0 / 3.0)
    else:
        vmin = p[3] - (p[1] * p[1] + p[2] * p[2]) / (4.0 * A)
        r = np.sqrt(max(0.0, (N - vmin) / A))
    r += 2.0
    return (np.int64(np.floor(ci - r)), np.int64(np.floor(ci + r)) + 1,
            np.int64(np.floor(cj - r)), np.int64(np.floor(cj + r)) + 1)


@njit(cache=True, nogil=True)
def grid_min_near_vertex(p, tri, ring):
    ci, cj = _vertex(p, tri)
    fi = np.int64(np.floor(ci))
    fj = np.int64(np.floor(cj))
    best = _val(p, tri, fi, fj)
    for di in range(-ring, ring + 2):
        for dj in range(-ring, ring + 2):
            v = _val(p, tri, fi + di, fj + dj)
            if v < best:
                best = v
    return best


@njit(cache=True, nogil=True)
def _new_near_face(q, tri, i0, j0, o, ring, N):
    """Some non-corner point within `ring` of the face has value <= N in q."""
    for i in range(i0 - ring, i0 + ring + 2):
        for j in range(j0 - ring, j0 + ring + 2):
            if _is_corner(tri, i0, j0, o, i, j):
                continue
            if _val(q, tri, i, j) <= N:
                return True
    return False


@njit(cache=True, nogil=True)
def _grid_visit(row, tri, colored, N, pres, hist, track, M, stats):
    i_lo, i_hi, j_lo, j_hi = _box(row, tri, N)
    root = row[7] == 1
    for i in range(i_lo, i_hi + 1):
        for j in range(j_lo, j_hi + 1):
            v = _val(row, tri, i, j)
            if v > N:
                continue
            col = ((i - j) % 3) if (tri and colored) else 0
            if v >= 1:
                pres[col, v] = 1
                if root or not _is_corner(tri, row[4], row[5], row[6], i, j):
                    stats[STAT_CIRCLES] += 1
            if track and v != 0:
                nd = 3 if tri else 2
                for t in range(nd):
                    if t == 0:
                        ni, nj = i + 1, j
                    elif t == 1:
                        ni, nj = i, j + 1
                    else:
                        ni, nj = i - 1, j + 1
                    u = _val(row, tri, ni, nj)
                    if u == 0 or u > N:
                        continue
                    if not root and _is_corner(tri, row[4], row[5], row[6], i, j) and \
                            _is_corner(tri, row[4], row[5], row[6], ni, nj):
                        continue
                    if _gcd(v, u) == 1:
                        hist[(v + u) % M] += 1
    stats[STAT_STATES] += 1


@njit(cache=True, nogil=True)
def grid_children(row, tri, N, ring, out):
    """Children under the growth rule whose lattice minimum is <= N."""
    i_lo, i_hi, j_lo, j_hi = _box(row, tri, N)
    h = np.empty(4, dtype=np.int64)
    q = np.empty(8, dtype=np.int64)
    no = 2 if tri else 1
    cnt = 0
    A, B, C, E = row[0], row[1], row[2], row[3]
    for i0 in range(i_lo - 1, i_hi + 1):
        for j0 in range(j_lo - 1, j_hi + 1):
            for o in range(no):
                # a face is a candidate when one of its corners is visible
                vis = False
                for di in range(0, 2):
                    for dj in range(0, 2):
                        if _is_corner(tri, i0, j0, o, i0 + di, j0 + dj):
                            if _val(row, tri, i0 + di, j0 + dj) <= N:
                                vis = True
                if not vis:
                    continue
                _face_poly(tri, i0, j0, o, h)
                t = -2 * _polar(tri, A, B, C, E, h[0], h[1], h[2], h[3])
                if t <= 0:
                    continue
                q[0] = A + t * h[0]
                q[1] = B + t * h[1]
                q[2] = C + t * h[2]
                q[3] = E + t * h[3]
                if not _new_near_face(q, tri, i0, j0, o, ring, N):
                    continue
                if cnt >= out.shape[0]:
                    return -1
                out[cnt, 0] = q[0]
                out[cnt, 1] = q[1]
                out[cnt, 2] = q[2]
                out[cnt, 3] = q[3]
                out[cnt, 4] = i0
                out[cnt, 5] = j0
                out[cnt, 6] = o
                out[cnt, 7] = 0
                cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def grid_subtrees(starts, tri, colored, N, ring, pres, hist, track, M, max_states, stats):
    stack = np.empty((1024, 8), dtype=np.int64)
    kids = np.empty((4096, 8), dtype=np.int64)
    for s in range(starts.shape[0]):
        stack[0] = starts[s]
        top = 1
        while top > 0:
            top -= 1
            row = stack[top].copy()
            _grid_visit(row, tri, colored, N, pres, hist, track, M, stats)
            if max_states > 0 and stats[STAT_STATES] >= max_states:
                stats[STAT_CAPPED] = 1
                return
            c = grid_children(row, tri, N, ring, kids)
            while c < 0:
                kids = np.empty((kids.shape[0] * 2, 8), dtype=np.int64)
                c = grid_children(row, tri, N, ring, kids)
            for k in range(c):
                stack = _grow(stack, top + 1)
                stack[top] = kids[k]
                top += 1
            if top > stats[STAT_MAXSTACK]:
                stats[STAT_MAXSTACK] = top


@njit(cache=True, nogil=True)
def tuple_visit_rows(rows, cube, N, pres, colmap, hist, track, M, stats):
    for s in range(rows.shape[0]):
        _tuple_visit(rows[s], cube, N, pres, colmap, hist, track, M, stats)


@njit(cache=True, nogil=True)
def grid_visit_rows(rows, tri, colored, N, pres, hist, track, M, stats):
    for s in range(rows.shape[0]):
        _grid_visit(rows[s], tri, colored, N, pres, hist, track, M, stats)
