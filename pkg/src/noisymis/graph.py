"""Immutable CSR graphs plus the combinatorial routines shared by every solver.

Vertex sets are plain ``frozenset`` objects of 0-based ids; all ids live in
``range(g.n)``.  Graphs are simple (no self-loops, no parallel edges) and
undirected, with every neighbor list stored in ascending order so that scan
order, and therefore each algorithm built on top, is deterministic.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Graph",
    "build_graph",
    "induced_subgraph",
    "greedy_mis",
    "vertex_cover_2approx",
    "is_independent_set",
    "is_maximal_independent_set",
    "exact_mis",
    "EXACT_MIS_MAX_N",
    "read_edgelist",
    "write_edgelist",
]

# exact_mis is a branch-and-bound search; above this size we refuse to try.
EXACT_MIS_MAX_N = 30


class Graph:
    """Undirected simple graph in compressed sparse row layout.

    ``indices[offsets[v]:offsets[v + 1]]`` is the ascending neighbor list of
    ``v``.  Instances are immutable after construction and safe to share
    across concurrent trials.
    """

    __slots__ = ("n", "m", "offsets", "indices")

    def __init__(self, n: int, offsets: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.m = int(len(indices)) // 2
        self.offsets = offsets
        self.indices = indices
        for arr in (self.offsets, self.indices):
            arr.setflags(write=False)

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (read-only view)."""
        return self.indices[self.offsets[v] : self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n > 0 else 0

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):  # identity-based; content equality stays available via ==
        return id(self)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges) -> Graph:
    """Build a graph from unordered id pairs.

    Self-loops and duplicate pairs (in either orientation) are dropped
    silently.  An endpoint outside ``range(n)`` raises ``ValueError`` naming
    the offending edge.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be an iterable of id pairs")
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        i = int(np.flatnonzero(bad.any(axis=1))[0])
        raise ValueError(
            f"edge ({int(arr[i, 0])}, {int(arr[i, 1])}) has an endpoint outside range(0, {n})"
        )
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keep = lo != hi
    # encode each pair as lo * n + hi; unique both dedupes and sorts
    codes = np.unique(lo[keep] * np.int64(n) + hi[keep])
    lo, hi = codes // n, codes % n
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    indices = dst[order]
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Graph(n, offsets, indices.astype(np.int64, copy=False))


def _sorted_ids(vertices, n: int) -> np.ndarray:
    """Unique ascending id array from any iterable of vertex ids."""
    if isinstance(vertices, np.ndarray):
        ids = np.unique(vertices.astype(np.int64, copy=False))
    else:
        ids = np.fromiter((int(v) for v in vertices), dtype=np.int64)
        ids = np.unique(ids)
    if ids.size and (ids[0] < 0 or ids[-1] >= n):
        raise ValueError(f"vertex ids must lie in range(0, {n})")
    return ids


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on ``vertices`` with compacted ids.

    Returns ``(sub, ids)`` where ``ids[new] == old``; the old-to-new map is
    the rank of each kept id inside the ascending ``ids`` array.
    """
    ids = _sorted_ids(vertices, g.n)
    mask = np.zeros(g.n, dtype=bool)
    mask[ids] = True
    new_id = np.cumsum(mask) - 1
    owner = np.repeat(np.arange(g.n), g.degrees())
    slot = mask[owner] & mask[g.indices]
    sub_src = new_id[owner[slot]]
    sub_indices = new_id[g.indices[slot]].astype(np.int64)
    counts = np.bincount(sub_src, minlength=ids.size)
    offsets = np.zeros(ids.size + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Graph(ids.size, offsets, sub_indices), ids


def greedy_mis(g: Graph, order=None) -> frozenset:
    """First-fit maximal independent set scanned along ``order``.

    ``order`` must be a permutation of ``range(g.n)``; the default is
    ascending vertex id.  A vertex is taken iff no earlier-taken neighbor
    exists, so the result is always maximal.
    """
    n = g.n
    if order is None:
        scan = range(n)
    else:
        arr = np.asarray(order, dtype=np.int64)
        if arr.shape != (n,) or not np.array_equal(np.sort(arr), np.arange(n)):
            raise ValueError("order must be a permutation of range(n)")
        scan = arr.tolist()
    chosen = np.zeros(n, dtype=bool)
    blocked = np.zeros(n, dtype=bool)
    offsets, indices = g.offsets, g.indices
    for v in scan:
        if not blocked[v]:
            chosen[v] = True
            blocked[indices[offsets[v] : offsets[v + 1]]] = True
    return frozenset(np.flatnonzero(chosen).tolist())


def vertex_cover_2approx(g: Graph) -> frozenset:
    """Vertex cover at most twice the optimum, via greedy maximal matching.

    Edges are scanned lowest endpoint first (ascending u, then ascending v
    within N(u)); both endpoints of every matched edge enter the cover.
    """
    n = g.n
    offsets = g.offsets.tolist()
    indices = g.indices.tolist()
    matched = [False] * n
    for u in range(n):
        if matched[u]:
            continue
        for j in range(offsets[u], offsets[u + 1]):
            v = indices[j]
            if not matched[v]:
                matched[u] = True
                matched[v] = True
                break
    return frozenset(v for v in range(n) if matched[v])


def _member_mask(g: Graph, s) -> np.ndarray:
    mask = np.zeros(g.n, dtype=bool)
    mask[_sorted_ids(s, g.n)] = True
    return mask


def is_independent_set(g: Graph, s) -> bool:
    """True iff no edge of ``g`` has both endpoints in ``s``."""
    mask = _member_mask(g, s)
    owner_in = np.repeat(mask, g.degrees())
    return not bool(np.any(owner_in & mask[g.indices]))


def is_maximal_independent_set(g: Graph, s) -> bool:
    """True iff ``s`` is independent and no outside vertex can be added."""
    mask = _member_mask(g, s)
    owner_in = np.repeat(mask, g.degrees())
    neighbor_in = mask[g.indices]
    if bool(np.any(owner_in & neighbor_in)):
        return False
    touched = np.zeros(g.n, dtype=bool)
    owner = np.repeat(np.arange(g.n), g.degrees())
    touched[owner[neighbor_in]] = True
    return bool(np.all(mask | touched))


def exact_mis(g: Graph) -> frozenset:
    """Maximum independent set by branch and bound (only the size is canonical).

    Branches on the highest-degree remaining vertex (exclude it, or include
    it and delete its neighborhood), seeded with the greedy set as incumbent.
    Refuses graphs with more than ``EXACT_MIS_MAX_N`` vertices.
    """
    n = g.n
    if n > EXACT_MIS_MAX_N:
        raise ValueError(f"exact search is capped at {EXACT_MIS_MAX_N} vertices, got {n}")
    adj = [0] * n
    for v in range(n):
        for u in g.neighbors(v).tolist():
            adj[v] |= 1 << u
    seed = greedy_mis(g)
    best_size = len(seed)
    best_mask = 0
    for v in seed:
        best_mask |= 1 << v

    def solve(cand: int, cur_mask: int, cur_size: int):
        nonlocal best_size, best_mask
        if cand == 0:
            if cur_size > best_size:
                best_size, best_mask = cur_size, cur_mask
            return
        if cur_size + cand.bit_count() <= best_size:
            return
        # pick the highest-degree vertex inside the candidate subgraph
        pick, pick_deg = -1, -1
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            d = (adj[v] & cand).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            # candidates are pairwise nonadjacent: take them all
            best_size = cur_size + cand.bit_count()
            best_mask = cur_mask | cand
            return
        bit = 1 << pick
        solve(cand & ~bit & ~adj[pick], cur_mask | bit, cur_size + 1)
        solve(cand & ~bit, cur_mask, cur_size)

    solve((1 << n) - 1, 0, 0)
    return frozenset(v for v in range(n) if best_mask >> v & 1)


def write_edgelist(g: Graph, path) -> None:
    """Write ``n m`` then one ``u v`` line per edge (u < v, ascending)."""
    owner = np.repeat(np.arange(g.n), g.degrees())
    fwd = owner < g.indices
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in zip(owner[fwd].tolist(), g.indices[fwd].tolist()):
            fh.write(f"{u} {v}\n")


def read_edgelist(path) -> Graph:
    """Read the ``write_edgelist`` format; ``#`` comment lines are ignored.

    Duplicate or self-loop lines are tolerated per ``build_graph`` rules;
    malformed lines raise ``ValueError`` naming the line number.
    """
    n = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2:
                    raise ValueError(f"{path}:{lineno}: expected header 'n m'")
                try:
                    n = int(parts[0])
                    int(parts[1])
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: expected header 'n m'") from None
                continue
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected edge 'u v'")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected edge 'u v'") from None
    if n is None:
        raise ValueError(f"{path}:1: missing header 'n m'")
    return build_graph(n, edges)
