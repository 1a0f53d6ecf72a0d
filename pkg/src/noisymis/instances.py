"""Planted-instance generators and the instance file format.

Every generator hides an independent set ("planted") of size
``floor(alpha * n)`` chosen by a seeded shuffle, and never places an edge
between two planted vertices.  Scoring elsewhere in the package is relative
to the planted set, which need not be the true maximum independent set; see
the README caveat.

Instance files are edge lists (``n m`` header, one ``u v`` line per edge)
with two special trailing comment lines: ``# planted: <ids>`` and
``# params: <json>``.  A bare edge-list reader can consume them unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import Graph, build_graph, is_independent_set

__all__ = [
    "PlantedInstance",
    "gen_planted_gnp",
    "gen_planted_bounded_degree",
    "write_instance",
    "read_instance",
    "planted_mask",
    "is_planted_maximal",
]


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    planted: frozenset
    params: dict


def planted_mask(instance: PlantedInstance) -> np.ndarray:
    mask = np.zeros(instance.graph.n, dtype=bool)
    mask[np.fromiter(instance.planted, dtype=np.int64, count=len(instance.planted))] = True
    return mask


def is_planted_maximal(instance: PlantedInstance) -> bool:
    """True iff every non-planted vertex has at least one planted neighbor."""
    g = instance.graph
    mask = planted_mask(instance)
    touched = np.zeros(g.n, dtype=bool)
    owner = np.repeat(np.arange(g.n), g.degrees())
    touched[owner[mask[g.indices]]] = True
    return bool(np.all(mask | touched))


def _split_planted(n: int, alpha: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    k = int(alpha * n)
    if k < 1:
        raise ValueError(f"floor(alpha * n) must be at least 1, got {k}")
    perm = rng.permutation(n)
    return np.sort(perm[:k]), np.sort(perm[k:])


def gen_planted_gnp(n: int, alpha: float, p: float, seed: int, ensure_maximal: bool = False) -> PlantedInstance:
    """Random graph around a hidden independent set.

    The hidden set is a uniformly random ``floor(alpha * n)``-subset; every
    other vertex pair appears independently with probability ``p``.  With
    ``ensure_maximal``, any outside vertex that ended up with no planted
    neighbor is wired to a uniformly random planted vertex, which makes the
    planted set maximal.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    planted, outside = _split_planted(n, alpha, rng)
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    planted_deg = np.zeros(n, dtype=np.int64)
    outside_list = outside.tolist()
    for i, u in enumerate(outside_list):
        later = outside[i + 1 :]
        hit = later[rng.random(later.size) < p]
        if hit.size:
            srcs.append(np.full(hit.size, u, dtype=np.int64))
            dsts.append(hit)
        hit = planted[rng.random(planted.size) < p]
        if hit.size:
            srcs.append(np.full(hit.size, u, dtype=np.int64))
            dsts.append(hit)
            planted_deg[u] += hit.size
    if ensure_maximal:
        for u in outside_list:
            if planted_deg[u] == 0:
                srcs.append(np.asarray([u], dtype=np.int64))
                dsts.append(np.asarray([rng.choice(planted)], dtype=np.int64))
    if srcs:
        edges = np.stack([np.concatenate(srcs), np.concatenate(dsts)], axis=1)
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    params = {
        "generator": "gnp",
        "n": n,
        "alpha": alpha,
        "p": p,
        "seed": seed,
        "ensure_maximal": ensure_maximal,
    }
    return PlantedInstance(build_graph(n, edges), frozenset(planted.tolist()), params)


def gen_planted_bounded_degree(n: int, alpha: float, d: int, seed: int) -> PlantedInstance:
    """Planted instance where every outside vertex picks ``d`` distinct neighbors.

    Neighbors are drawn uniformly from all other vertices, so degrees stay
    within a small constant factor of ``d`` with overwhelming probability.
    Requires ``d <= n - 1`` and the slack ``d * (1 - alpha) <= alpha * n``.
    """
    if d < 0:
        raise ValueError(f"d must be nonnegative, got {d}")
    if d > n - 1:
        raise ValueError(f"d must be at most n - 1 = {n - 1}, got {d}")
    if d * (1.0 - alpha) > alpha * n:
        raise ValueError(f"infeasible parameters: d * (1 - alpha) = {d * (1 - alpha)} exceeds alpha * n = {alpha * n}")
    rng = np.random.default_rng(seed)
    planted, outside = _split_planted(n, alpha, rng)
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    for u in outside.tolist():
        nbrs = rng.choice(n - 1, size=d, replace=False).astype(np.int64)
        nbrs[nbrs >= u] += 1  # skip u itself; picks stay uniform over the rest
        srcs.append(np.full(d, u, dtype=np.int64))
        dsts.append(nbrs)
    if srcs:
        edges = np.stack([np.concatenate(srcs), np.concatenate(dsts)], axis=1)
    else:
        edges = np.zeros((0, 2), dtype=np.int64)
    params = {"generator": "bounded-degree", "n": n, "alpha": alpha, "d": d, "seed": seed}
    return PlantedInstance(build_graph(n, edges), frozenset(planted.tolist()), params)


def write_instance(instance: PlantedInstance, path) -> None:
    """Edge-list file plus ``# planted:`` and ``# params:`` comment lines."""
    g = instance.graph
    owner = np.repeat(np.arange(g.n), g.degrees())
    fwd = owner < g.indices
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in zip(owner[fwd].tolist(), g.indices[fwd].tolist()):
            fh.write(f"{u} {v}\n")
        fh.write("# planted: " + " ".join(str(v) for v in sorted(instance.planted)) + "\n")
        fh.write("# params: " + json.dumps(instance.params, sort_keys=True) + "\n")


def read_instance(path) -> PlantedInstance:
    """Parse an instance file; errors name the offending line.

    The planted section is required and must be independent in the parsed
    graph; the params section is optional (defaults to ``{}``).
    """
    n = None
    edges: list[tuple[int, int]] = []
    planted: frozenset | None = None
    params: dict | None = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("planted:"):
                    ids = body[len("planted:") :].split()
                    try:
                        planted = frozenset(int(v) for v in ids)
                    except ValueError:
                        raise ValueError(f"{path}:{lineno}: planted ids must be integers") from None
                elif body.startswith("params:"):
                    try:
                        params = json.loads(body[len("params:") :])
                    except json.JSONDecodeError:
                        raise ValueError(f"{path}:{lineno}: params must be a JSON object") from None
                continue
            if not line:
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
    if planted is None:
        raise ValueError(f"{path}: missing '# planted:' section")
    graph = build_graph(n, edges)
    if planted and (min(planted) < 0 or max(planted) >= n):
        raise ValueError(f"{path}: planted ids must lie in range(0, {n})")
    if not is_independent_set(graph, planted):
        raise ValueError(f"{path}: planted set is not independent in the listed graph")
    return PlantedInstance(graph, planted, params if params is not None else {})
