"""Curvature enumeration, a brute-force oracle, and coprime chains."""

from __future__ import annotations

import struct
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels as K
from .configs import (
    CubeConfig,
    OctConfig,
    SquareGrid,
    TriGrid,
    apply_generator,
    generator_ids,
    n_colors,
)
from .forms import coprime_insert
from .kinds import Family

MAGIC = b"PKCURV01"
MAX_N = 1 << 40  # keeps every intermediate of the int64 kernels far from overflow

# forbidden residues of a + b over tangent coprime pairs
FORBIDDEN_SUMS = {
    Family.OCT: (8, frozenset({5, 7})),
    Family.CUBE: (8, frozenset({5, 7})),
    Family.SQUARE: (8, frozenset({3, 6, 7})),
    Family.TRI: (12, frozenset({5, 10, 11})),
}


class ResourceLimit(RuntimeError):
    """An enumeration exceeded its configured state cap."""


class MalformedPresence(ValueError):
    pass


@dataclass
class CurvaturePresence:
    """Attained positive curvatures in [1, N].

    present[n] is True when n occurs (index 0 unused).  by_color, when
    computed, holds one such array per colour class of circle positions.
    """

    N: int
    present: np.ndarray
    stats: dict = field(default_factory=dict)
    by_color: Optional[np.ndarray] = None
    pair_sums: Optional[np.ndarray] = None  # histogram of (a + b) mod M over tangent coprime pairs

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.present[1:]))

    def values(self) -> np.ndarray:
        return np.flatnonzero(self.present)

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.N and bool(self.present[n])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvaturePresence):
            return NotImplemented
        return self.N == other.N and np.array_equal(self.present, other.present)

    def union(self, other: "CurvaturePresence") -> "CurvaturePresence":
        if self.N != other.N:
            raise ValueError("bounds differ")
        return CurvaturePresence(self.N, self.present | other.present)

    def color_values(self, color: int) -> np.ndarray:
        if self.by_color is None:
            raise ValueError("enumeration ran without colours")
        return np.flatnonzero(self.by_color[color])

    # -- persistence --

    def to_bytes(self) -> bytes:
        bits = np.packbits(self.present[1:].astype(np.uint8), bitorder="little")
        nwords = -(-self.N // 64)
        buf = np.zeros(nwords * 8, dtype=np.uint8)
        buf[: bits.size] = bits
        return MAGIC + struct.pack("<Q", self.N) + buf.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "CurvaturePresence":
        if len(data) < 16 or data[:8] != MAGIC:
            raise MalformedPresence("malformed presence file")
        (N,) = struct.unpack("<Q", data[8:16])
        nwords = -(-N // 64)
        if len(data) != 16 + 8 * nwords:
            raise MalformedPresence("malformed presence file")
        raw = np.frombuffer(data, dtype=np.uint8, offset=16)
        bits = np.unpackbits(raw, bitorder="little")[:N].astype(bool)
        present = np.zeros(N + 1, dtype=bool)
        present[1:] = bits
        return cls(N, present)

    def save(self, path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path) -> "CurvaturePresence":
        return cls.from_bytes(Path(path).read_bytes())


# ---- roots -------------------------------------------------------------------------------

def _is_grid(config) -> bool:
    return isinstance(config, (SquareGrid, TriGrid))


def reduce_to_root(config):
    """Apply shrinking generators until none shrinks the state further.

    Tuples shrink w, grids shrink A (never below 0).  Returns the root.
    """
    if not _is_grid(config):
        cur = config
        while True:
            best = None
            for f in generator_ids(cur):
                nxt = apply_generator(cur, f)
                if nxt.w < cur.w and (best is None or nxt.w < best.w):
                    best = nxt
            if best is None:
                return cur
            cur = best
    cur = config
    while cur.A > 0:
        best = None
        for face in cur.faces(4):
            t = cur.flip_amount(face)
            if t < 0 and cur.A + t >= 0 and (best is None or cur.A + t < best.A):
                best = cur.apply_generator(face)
        if best is None:
            break
        cur = best
    return cur


# ---- main enumeration ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnumOptions:
    threads: int = 1
    max_states: int = 0  # 0 means unlimited
    ring: int = 2
    colors: bool = False
    track_pairs: bool = False
    tasks_per_thread: int = 16


def _tuple_row(values, face=-1):
    return np.array([*values, face], dtype=np.int64)


def _grid_row(p, face=(0, 0, 0), root=1):
    return np.array([*p, face[0], face[1], face[2] if len(face) > 2 else 0, root], dtype=np.int64)


def _split(rows: np.ndarray, n: int) -> list:
    n = max(1, min(n, len(rows)))
    return [c for c in np.array_split(rows, n) if len(c)]


def enumerate_curvatures(config, N: int, options: EnumOptions | None = None, **kw) -> CurvaturePresence:
    """Every curvature in [1, N] of the packing generated by `config`.

    The state tree below the reduced root is split into subtree tasks that run
    on a thread pool; presence arrays only ever receive the value 1, so the
    outcome does not depend on scheduling.
    """
    opts = options or EnumOptions(**kw)
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > MAX_N:
        raise ValueError(f"N above {MAX_N} risks int64 overflow")
    fam = config.kind.family
    M = FORBIDDEN_SUMS[fam][0]
    ncol = n_colors(fam) if opts.colors else 1
    pres = np.zeros((ncol, N + 1), dtype=np.uint8)
    hist = np.zeros(M, dtype=np.int64)
    stats = np.zeros(K.N_STATS, dtype=np.int64)
    root = reduce_to_root(config)
    grid = _is_grid(root)
    target = max(1, opts.threads) * opts.tasks_per_thread

    if not grid:
        cube = isinstance(root, CubeConfig)
        if opts.colors:
            from .configs import color_of
            colmap = np.array([color_of(root, i) for i in range(root.size if hasattr(root, "size") else 8)],
                              dtype=np.int64)
        else:
            colmap = np.zeros(8, dtype=np.int64)
        frontier = _tuple_row(root.values)[None, :]
        kids = np.empty((8, frontier.shape[1]), dtype=np.int64)

        def visit(rows, st, h):
            K.tuple_visit_rows(rows, cube, N, pres, colmap, h, opts.track_pairs, M, st)

        def expand(row):
            c = K.tuple_children(row, cube, N, kids)
            return kids[:c].copy()

        def run(rows, st, h):
            K.tuple_subtrees(rows, cube, N, pres, colmap, h, opts.track_pairs, M, opts.max_states, st)
    else:
        tri = isinstance(root, TriGrid)
        if root.A == 0:
            # flat grid: one curvature, and every face flip gives a translate of the same state
            E = root.E
            if 1 <= E <= N:
                pres[:, E] = 1
            stats[K.STAT_STATES] += 1
            stats[K.STAT_CIRCLES] += 1
            first = root.apply_generator((0, 0, 0) if tri else (0, 0))
            frontier = _grid_row(first.poly(), root=1)[None, :]
            if K.grid_min_near_vertex(frontier[0], tri, opts.ring) > N:
                frontier = frontier[:0]
        else:
            frontier = _grid_row(root.poly())[None, :]
        kids = np.empty((4096, 8), dtype=np.int64)

        def visit(rows, st, h):
            K.grid_visit_rows(rows, tri, opts.colors, N, pres, h, opts.track_pairs, M, st)

        def expand(row):
            nonlocal kids
            c = K.grid_children(row, tri, N, opts.ring, kids)
            while c < 0:
                kids = np.empty((kids.shape[0] * 2, 8), dtype=np.int64)
                c = K.grid_children(row, tri, N, opts.ring, kids)
            return kids[:c].copy()

        def run(rows, st, h):
            K.grid_subtrees(rows, tri, opts.colors, N, opts.ring, pres, h, opts.track_pairs, M,
                            opts.max_states, st)

    # breadth-first expansion until there are enough independent subtrees
    for _ in range(6):
        if len(frontier) == 0 or len(frontier) >= target:
            break
        visit(frontier, stats, hist)
        nxt = [expand(r) for r in frontier]
        frontier = np.concatenate(nxt) if nxt else frontier[:0]
        if opts.max_states and stats[K.STAT_STATES] > opts.max_states:
            raise ResourceLimit(f"more than {opts.max_states} states")

    chunks = _split(frontier, target) if len(frontier) else []
    results = [(np.zeros(K.N_STATS, dtype=np.int64), np.zeros(M, dtype=np.int64)) for _ in chunks]

    def task(k):
        run(chunks[k], *results[k])

    if opts.threads <= 1 or len(chunks) <= 1:
        for k in range(len(chunks)):
            task(k)
    else:
        with ThreadPoolExecutor(max_workers=opts.threads) as ex:
            list(ex.map(task, range(len(chunks))))
    for st, h in results:
        stats[:3] += st[:3]
        hist += h
    if opts.max_states and (stats[K.STAT_CAPPED] or stats[K.STAT_STATES] > opts.max_states):
        raise ResourceLimit(f"more than {opts.max_states} states")

    present = pres.any(axis=0)
    present[0] = False
    info = {"states": int(stats[K.STAT_STATES]), "circles": int(stats[K.STAT_CIRCLES]),
            "distinct": int(np.count_nonzero(present))}
    out = CurvaturePresence(N, present, info)
    if opts.colors:
        out.by_color = pres.astype(bool)
        out.by_color[:, 0] = False
    if opts.track_pairs:
        out.pair_sums = hist
    return out


def forbidden_sum_hits(presence: CurvaturePresence, family: Family) -> dict:
    """Counts of forbidden residues among the tracked tangent coprime pair sums."""
    if presence.pair_sums is None:
        raise ValueError("enumeration ran without pair tracking")
    M, bad = FORBIDDEN_SUMS[family]
    return {r: int(presence.pair_sums[r]) for r in sorted(bad)}


# ---- oracle ---------------------------------------------------------------------------------------

def _canonical(values, perms):
    return min(tuple(values[i] for i in p) for p in perms)


def oracle_enumerate(config, N: int, depth: int = 10 ** 9, radius: int = 3,
                     cap: Optional[int] = None) -> CurvaturePresence:
    """Breadth-first closure over generator words with exact state dedup.

    No growth rule is used.  A tuple state is expanded only while its largest
    |curvature| is at most `cap` (default 4 N) and tuple states are identified
    up to the symmetries of the octahedron or cube.  A grid state is expanded
    only while its leading coefficient is at most `cap` (default 2 N),
    flipping the faces within `radius` of its vertex; grid states are
    identified up to lattice translations and symmetries.  Words are limited to length `depth`.
    """
    grid = _is_grid(config)
    present = np.zeros(N + 1, dtype=bool)
    if grid:
        cap = 2 * N if cap is None else cap
        seen = {config.symmetry_key()}
        queue = deque([(config, 0)])
        while queue:
            st, d = queue.popleft()
            if st.A == 0:
                if 1 <= st.E <= N:
                    present[st.E] = True
            else:
                for _, k in st.points_upto(N):
                    present[k] = True
            if st.A > max(cap, config.A) or d >= depth:
                continue
            for f in st.faces(radius):
                nxt = st.apply_generator(f)
                key = nxt.symmetry_key()
                if nxt.A >= 0 and key not in seen:
                    seen.add(key)
                    queue.append((nxt, d + 1))
        nstates = len(seen)
    else:
        from .configs import automorphisms, cube_flip, oct_flip, CUBE_FACES, OCT_FACES
        cap = 4 * N if cap is None else cap
        cube = isinstance(config, CubeConfig)
        flip, faces = (cube_flip, CUBE_FACES) if cube else (oct_flip, OCT_FACES)
        perms = automorphisms(config.kind.family)
        start = tuple(config.values)
        seen = {_canonical(start, perms)}
        queue = deque([(start, 0)])
        while queue:
            vals, d = queue.popleft()
            for v in vals:
                if 1 <= v <= N:
                    present[v] = True
            if max(map(abs, vals)) > cap or d >= depth:
                continue
            for f in faces:
                nxt = flip(vals, f)
                key = _canonical(nxt, perms)
                if key not in seen:
                    seen.add(key)
                    queue.append((nxt, d + 1))
        nstates = len(seen)
    present[0] = False
    return CurvaturePresence(N, present, {"states": nstates, "distinct": int(present.sum())})


# ---- coprime chains -------------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainLink:
    state: object
    cid: object
    curvature: int


@dataclass(frozen=True)
class Chain:
    """Circles c_0, ..., c_m with c_i tangent to c_{i+1} and coprime curvatures.

    witnesses[i] = (state, id_i, id_{i+1}) is a state in which the two
    circles are adjacent.
    """

    links: tuple
    witnesses: tuple

    @property
    def curvatures(self) -> tuple[int, ...]:
        return tuple(c.curvature for c in self.links)

    def __len__(self):
        return len(self.links)

    def check(self) -> None:
        if len(self.witnesses) != len(self.links) - 1:
            raise AssertionError("one witness per step required")
        for i, (st, p, q) in enumerate(self.witnesses):
            a, b = self.links[i].curvature, self.links[i + 1].curvature
            if q not in st.neighbors(p):
                raise AssertionError(f"step {i} is not a tangency")
            if (st.curvature(p), st.curvature(q)) != (a, b):
                raise AssertionError(f"step {i} witness has the wrong curvatures")
            if a == 0 or b == 0 or gcd(a, b) != 1:
                raise AssertionError(f"step {i}: gcd({a}, {b}) != 1")


def _graph_path(config, src, dst, limit: int = 10 ** 5) -> list:
    """Shortest tangency path in one state through nonzero circles.

    Steps between equal curvatures other than 1 are avoided: every common
    neighbour of such a pair repeats the shared factor, so no insertion helps.
    """
    if src == dst:
        return [src]
    prev = {src: None}
    queue = deque([src])
    while queue and len(prev) < limit:
        u = queue.popleft()
        for v in config.neighbors(u):
            b = config.curvature(v)
            if v in prev or b == 0 or (abs(b) > 1 and b == config.curvature(u)):
                continue
            prev[v] = u
            if v == dst:
                out = [v]
                while prev[out[-1]] is not None:
                    out.append(prev[out[-1]])
                return out[::-1]
            queue.append(v)
    raise LookupError(f"no tangency path from {src} to {dst}")


def _repair(state, u, v, bound: int, rounds: int) -> tuple[list, list]:
    """Links after u (ending at v) and witnesses making u ... v coprime step by step."""
    a, b = state.curvature(u), state.curvature(v)
    if gcd(a, b) == 1:
        return [ChainLink(state, v, b)], [(state, u, v)]
    if rounds == 0:
        raise LookupError(f"could not repair the step {a} -> {b}")
    try:
        ins = coprime_insert(state, (u, v), bound=bound, mode="both")
    except LookupError:
        ins = coprime_insert(state, (u, v), bound=bound, mode="lemma")
    cn = ins.neighbor
    st = cn.config
    ids = [cn.pair[0], *cn.ids, cn.pair[1]]  # squares of tangency give (l, k): l next to u
    links, wits = [], []
    for p, q in zip(ids, ids[1:]):
        ls, ws = _repair(st, p, q, bound, rounds - 1)
        links += ls
        wits += ws
    return links, wits


def coprime_path(config, src, dst, bound: int = 200, rounds: int = 4) -> Chain:
    """A chain of tangent circles with coprime consecutive curvatures from src to dst.

    Start from a tangency path in the given state and repair every
    non-coprime step by inserting common neighbours of the pair, repairing
    the new steps again where needed (at most `rounds` nested insertions).
    """
    if not _is_grid(config):
        src, dst = config._idx(src), config._idx(dst)
    else:
        src, dst = tuple(src), tuple(dst)
    for c in (src, dst):
        if config.curvature(c) == 0:
            raise ValueError("chain ends must have nonzero curvature")
    ids = _graph_path(config, src, dst)
    links = [ChainLink(config, ids[0], config.curvature(ids[0]))]
    wits = []
    for u, v in zip(ids, ids[1:]):
        ls, ws = _repair(config, u, v, bound, rounds)
        links += ls
        wits += ws
    chain = Chain(tuple(links), tuple(wits))
    chain.check()
    return chain


def _state_key(config):
    return tuple(config.values) if not _is_grid(config) else config.poly()


def _face_ids(config, face) -> list:
    if _is_grid(config):
        return list(config.face_corners(face))
    from .configs import _cube_face, _oct_face

    return list(_cube_face(face) if isinstance(config, CubeConfig) else _oct_face(face))


def _kernel_children(state, N: int) -> list:
    """(face, child) pairs the enumerator would expand below `state` for bound N."""
    if _is_grid(state):
        tri = isinstance(state, TriGrid)
        row = _grid_row(state.poly(), root=0)
        out = np.empty((4096, 8), dtype=np.int64)
        c = K.grid_children(row, tri, N, 2, out)
        while c < 0:
            out = np.empty((out.shape[0] * 2, 8), dtype=np.int64)
            c = K.grid_children(row, tri, N, 2, out)
        cls = type(state)
        kids = []
        for r in out[:c]:
            face = (int(r[4]), int(r[5]), int(r[6])) if tri else (int(r[4]), int(r[5]))
            kids.append((face, cls(*(int(x) for x in r[:4]))))
        return kids
    cube = isinstance(state, CubeConfig)
    out = np.empty((8, len(state.values) + 1), dtype=np.int64)
    c = K.tuple_children(_tuple_row(state.values), cube, N, out)
    kids = []
    for r in out[:c]:
        f = int(r[-1])
        nxt = apply_generator(state, f)
        if list(nxt.values) != [int(x) for x in r[:len(nxt.values)]]:
            raise AssertionError("kernel and generator disagree")
        kids.append((f, nxt))
    return kids


def _matches(state, curvature: int):
    if _is_grid(state) and state.A > 0:
        for cid, k in state.points_upto(curvature):
            if k == curvature:
                return cid
        return None
    for cid in _local_ids(state):
        if state.curvature(cid) == curvature:
            return cid
    return None


def locate(config, curvature: int, max_states: int = 10 ** 6) -> tuple[list, object]:
    """A word of growing flips from the root to a state showing `curvature`.

    Returns ([(state_0, None), (state_1, face_1), ...], circle id in the last
    state); face_i is the face flipped to get state_i from state_{i-1}.  The
    search walks the same pruned tree as the enumerator with N = curvature.
    """
    if curvature == 0:
        raise ValueError("curvature 0 cannot be located")
    root = reduce_to_root(config)
    word = [(root, None)]
    cid = _matches(root, curvature)
    if cid is not None or curvature < 0:
        if cid is None:
            raise LookupError(f"no circle of curvature {curvature}")
        return word, cid
    if _is_grid(root) and root.A == 0:
        face = (0, 0, 0) if isinstance(root, TriGrid) else (0, 0)
        word.append((root.apply_generator(face), face))
    prev = {_state_key(word[-1][0]): None}
    queue = deque([word[-1][0]])
    while queue:
        st = queue.popleft()
        cid = _matches(st, curvature)
        if cid is not None:
            tail = []
            key = _state_key(st)
            cur = st
            while prev[key] is not None:
                par, f = prev[key]
                tail.append((cur, f))
                cur = par
                key = _state_key(cur)
            return word + tail[::-1], cid
        if len(prev) >= max_states:
            raise LookupError(f"no circle of curvature {curvature} found within {max_states} states")
        for f, nxt in _kernel_children(st, curvature):
            k = _state_key(nxt)
            if k not in prev:
                prev[k] = (st, f)
                queue.append(nxt)
    raise LookupError(f"{curvature} is not a curvature of this packing")


def _local_ids(config) -> list:
    return list(config.circle_ids()) if not _is_grid(config) else config.circle_ids(2)


def _nonzero(config, ids):
    for c in ids:
        if config.curvature(c) != 0:
            return c
    raise LookupError("face without a nonzero circle")


def _reverse(chain: Chain) -> Chain:
    return Chain(chain.links[::-1], tuple((st, q, p) for st, p, q in chain.witnesses[::-1]))


def _join(parts) -> Chain:
    links, wits = [], []
    for ch in parts:
        ls = list(ch.links)
        if links:
            if ls[0].curvature != links[-1].curvature:
                raise AssertionError("chain segments do not meet")
            ls = ls[1:]
        links += ls
        wits += list(ch.witnesses)
    out = Chain(tuple(links), tuple(wits))
    out.check()
    return out


def _to_root(word, cid, anchor, bound, rounds) -> Chain:
    parts = []
    cur = cid
    for i in range(len(word) - 1, 0, -1):
        st, face = word[i]
        corner = _nonzero(st, _face_ids(word[i - 1][0], face))
        parts.append(coprime_path(st, cur, corner, bound, rounds))
        cur = corner
    parts.append(coprime_path(word[0][0], cur, anchor, bound, rounds))
    return _join(parts)


def chain_between(config, k1: int, k2: int, bound: int = 200, rounds: int = 4,
                  max_states: int = 10 ** 5) -> Chain:
    """A coprime chain from a circle of curvature k1 to one of curvature k2.

    Each circle is located by a word of growing flips from the root; the chain
    walks back along the word through circles of the flipped faces (which are
    shared by consecutive states) to a fixed circle of the root, then out again.
    """
    w1, c1 = locate(config, k1, max_states)
    w2, c2 = locate(config, k2, max_states)
    root = w1[0][0]
    if _state_key(w1[-1][0]) == _state_key(w2[-1][0]):
        return coprime_path(w1[-1][0], c1, c2, bound, rounds)
    anchor = _nonzero(root, _local_ids(root))
    return _join([_to_root(w1, c1, anchor, bound, rounds), _reverse(_to_root(w2, c2, anchor, bound, rounds))])
