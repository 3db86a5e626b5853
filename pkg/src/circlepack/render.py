"""SVG pictures of bounded packings.

Circles are handled as vectors in R^{3,1}.  A configuration is realized
from its Gram matrix (tuples) or from the unit-circle lattice (grids); the
curvature functional of the given state is a null vector n, and a frame
(n, m, x, y) with <n, m> = -2 turns each vector into a Euclidean circle.
Generators act as reflections in the vector orthogonal to a face.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from pathlib import Path
from typing import Optional

import numpy as np

from .configs import (
    CUBE_EDGES,
    CUBE_FACES,
    CUBE_OPP,
    OCT_EDGES,
    OCT_FACES,
    OCT_OPP,
    CubeConfig,
    OctConfig,
    SquareGrid,
    TriGrid,
    apply_generator,
    color_of,
)
from .enumeration import reduce_to_root

PALETTE = ("#f2c94c", "#eb5757", "#2f80ed", "#6fcf97")


class UnboundedRequest(ValueError):
    pass


@dataclass(frozen=True)
class Disk:
    x: float
    y: float
    r: float
    curvature: int
    color: int = 0


def _gram(n, edges, opp, diag_face):
    g = np.full((n, n), float(diag_face))
    for i, j in edges:
        g[i, j] = g[j, i] = -1.0
    for i in range(n):
        g[i, opp[i]] = -5.0 if n == 8 else -3.0
        g[i, i] = 1.0
    return g


def _realize(gram):
    w, u = np.linalg.eigh(gram)
    keep = np.abs(w) > 1e-9
    vecs = u[:, keep] * np.sqrt(np.abs(w[keep]))
    return vecs, np.diag(np.sign(w[keep]))


def _reflection(d, Q):
    d = d / sqrt(abs(d @ Q @ d))
    return np.eye(len(d)) - 2.0 * np.outer(d, d @ Q)


def _orthogonal(rows, Q):
    _, _, vt = np.linalg.svd(rows @ Q)
    return vt[-1]


class _Frame:
    """Euclidean read-out of vectors, from the curvature functional n."""

    def __init__(self, n, Q, anchor):
        self.Q = Q
        self.n = n
        # m: null, <n, m> = -2; built from a circle vector `anchor` with <anchor, n> != 0
        a = anchor
        an = a @ Q @ n
        m = a - (a @ Q @ a) / (2 * an) * n
        m = m * (-2.0 / (m @ Q @ n))
        self.m = m
        # x, y: unit, orthogonal to n and m
        basis = []
        for e in np.eye(4):
            v = e - (e @ Q @ m) / (-2.0) * n - (e @ Q @ n) / (-2.0) * m
            for b in basis:
                v = v - (v @ Q @ b) * b
            nv = v @ Q @ v
            if nv > 1e-9:
                basis.append(v / sqrt(nv))
            if len(basis) == 2:
                break
        self.x, self.y = basis

    def disk(self, v, color=0) -> Optional[Disk]:
        Q = self.Q
        b = v @ Q @ self.n
        if abs(b) < 1e-12:
            return None
        return Disk((v @ Q @ self.x) / b, (v @ Q @ self.y) / b, 1.0 / abs(b), int(round(b)), color)


def _tuple_disks(config, bound, depth):
    cube = isinstance(config, CubeConfig)
    n = 8 if cube else 6
    edges, opp, faces = (CUBE_EDGES, CUBE_OPP, CUBE_FACES) if cube else (OCT_EDGES, OCT_OPP, OCT_FACES)
    V, Q = _realize(_gram(n, edges, opp, -3.0))
    k = np.array(config.values, dtype=float)
    nvec = np.linalg.lstsq(V @ Q, k, rcond=None)[0]
    frame = _Frame(nvec, Q, V[int(np.argmax(np.abs(k)))])
    colors = [color_of(config, i) for i in range(n)]
    out = {}

    def emit(vals, vecs, ids):
        for i in ids:
            if bound is None or vals[i] <= bound:
                d = frame.disk(vecs[i], colors[i])
                if d is not None:
                    key = (round(d.x, 9), round(d.y, 9), round(d.r, 9))
                    out.setdefault(key, d)

    emit(config.values, V, range(n))
    stack = [(config, V, 0)]
    while stack:
        cfg, vecs, lev = stack.pop()
        if depth is not None and lev >= depth:
            continue
        for f, face in enumerate(faces):
            nxt = apply_generator(cfg, f)
            if nxt.w <= cfg.w:
                continue
            new = [opp[i] for i in face]
            if bound is not None and min(nxt.values[i] for i in new) > bound:
                continue
            R = _reflection(_orthogonal(vecs[list(face)], Q), Q)
            nv = vecs @ R.T
            emit(nxt.values, nv, new)
            stack.append((nxt, nv, lev + 1))
    return list(out.values())


def _grid_point(tri, i, j):
    if tri:
        return 2.0 * (i + j / 2.0), 2.0 * (j * sqrt(3) / 2.0)
    return 2.0 * i, 2.0 * j


def _grid_vec(tri, i, j):
    cx, cy = _grid_point(tri, i, j)
    return np.array([cx * cx + cy * cy - 1.0, 1.0, cx, cy])


_QI = np.array([[0, -0.5, 0, 0], [-0.5, 0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]])


def _grid_disks(config, bound, depth):
    tri = isinstance(config, TriGrid)
    Q = _QI
    pts = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]
    A = np.array([_grid_vec(tri, i, j) @ Q for i, j in pts])
    k = np.array([config.curvature(p) for p in pts], dtype=float)
    nvec = np.linalg.lstsq(A, k, rcond=None)[0]
    frame = _Frame(nvec, Q, _grid_vec(tri, 0, 0) if k[0] else _grid_vec(tri, 1, 0))
    out = {}
    lim = bound if bound is not None else 10 ** 9

    def emit(state, R):
        vi, vj = state.vertex()
        rad = int(sqrt(lim / state.A + 1) * 1.2) + 3
        for i in range(int(vi) - rad, int(vi) + rad + 1):
            for j in range(int(vj) - rad, int(vj) + rad + 1):
                c = state.curvature((i, j))
                if c > lim:
                    continue
                d = frame.disk(R @ _grid_vec(tri, i, j), (i - j) % 3 if tri else 0)
                if d is not None:
                    out.setdefault((round(d.x, 9), round(d.y, 9), round(d.r, 9)), d)

    emit(config, np.eye(4))
    stack = [(config, np.eye(4), 0)]
    while stack:
        st, R, lev = stack.pop()
        if depth is not None and lev >= depth:
            continue
        for face in st.faces(3):
            t = st.flip_amount(face)
            if t <= 0:
                continue
            nxt = st.apply_generator(face)
            corners = st.face_corners(face)
            near = [(ci + di, cj + dj) for ci, cj in corners for di in (-1, 0, 1) for dj in (-1, 0, 1)]
            if min(nxt.curvature(p) for p in near if p not in corners) > lim:
                continue
            d = _orthogonal(np.array([_grid_vec(tri, *p) for p in corners]), Q)
            R2 = R @ _reflection(d, Q)
            emit(nxt, R2)
            stack.append((nxt, R2, lev + 1))
    return list(out.values())


def packing_disks(config, bound: Optional[int] = None, depth: Optional[int] = None) -> list[Disk]:
    """Circles of the bounded packing through `config` with curvature <= bound / word depth."""
    if bound is None and depth is None:
        raise UnboundedRequest("give a curvature bound or a depth")
    root = reduce_to_root(config)
    if isinstance(root, (OctConfig, CubeConfig)):
        vals = root.values
        if sum(1 for v in vals if v < 0) != 1 or 0 in vals:
            raise UnboundedRequest("only bounded packings (one negative curvature) can be drawn")
        return _tuple_disks(root, bound, depth)
    if root.A == 0 or min(root.curvature(p) for p in root.circle_ids(2)) >= 0:
        raise UnboundedRequest("only bounded packings (one negative curvature) can be drawn")
    return _grid_disks(root, bound, depth)


def render_svg(config, path, bound: Optional[int] = None, depth: Optional[int] = None,
               labels: bool = False, colors: bool = False, size: int = 800) -> int:
    """Write an SVG with one circle element per circle; returns the number of circles."""
    disks = packing_disks(config, bound, depth)
    outer = next((d for d in disks if d.curvature < 0), None)
    if outer is None:
        raise UnboundedRequest("no bounding circle found")
    # unit drawing scale: the bounding circle has radius 1/|k| around its own centre
    s = size / (2.2 * outer.r)
    cx, cy = outer.x, outer.y
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="{-size / 2:.3f} {-size / 2:.3f} {size} {size}">']
    for d in sorted(disks, key=lambda d: (d.r, d.x, d.y), reverse=True):
        fill = "none"
        if colors and d.curvature > 0:
            fill = PALETTE[d.color % len(PALETTE)]
        lines.append(f'<circle cx="{(d.x - cx) * s:.4f}" cy="{-(d.y - cy) * s:.4f}" r="{d.r * s:.4f}" '
                     f'fill="{fill}" stroke="black" stroke-width="0.6" data-k="{d.curvature}"/>')
        if labels and d.curvature > 0 and d.r * s > 8:
            lines.append(f'<text x="{(d.x - cx) * s:.3f}" y="{-(d.y - cy) * s:.3f}" font-size="{min(14, d.r * s * 0.6):.2f}" '
                         f'text-anchor="middle" dominant-baseline="central">{d.curvature}</text>')
    lines.append("</svg>")
    Path(path).write_text("\n".join(lines) + "\n")
    return len(disks)
