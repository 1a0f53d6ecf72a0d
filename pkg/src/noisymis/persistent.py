"""One-shot recovery under persistent noise: neighborhood vote filtering.

Each vertex is queried exactly once.  A vertex survives if few enough of its
neighbors are claimed to belong to the hidden set; low-degree vertices are
exempt from filtering because their votes are too noisy to read.  A greedy
pass over the surviving subgraph returns the final independent set.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, greedy_mis, induced_subgraph
from .oracle import Oracle, ModeError

__all__ = [
    "PersistentParams",
    "PersistentReport",
    "neighbor_yes_counts",
    "survival_threshold",
    "run_persistent",
]


@dataclass
class PersistentParams:
    """Tuning knobs; the defaults are the analyzed values.

    ``epsilon_effective`` defaults to the oracle's post-cap advantage.
    ``low_degree_cutoff_coeff * ln(n)`` is the degree below which vertices
    skip the filter; ``threshold_coeff`` scales the slack in the survival
    threshold.  Both are exposed because contrived test instances need to
    force the cutoff.
    """

    epsilon_effective: float | None = None
    low_degree_cutoff_coeff: float = 36.0
    threshold_coeff: float = 6.0
    greedy_order: str = "id"  # "id" | "degree" | "random"
    order_seed: int = 0


@dataclass
class PersistentReport:
    """Everything the filtering run decided, for inspection and dumps."""

    yes_counts: np.ndarray
    low_degree: frozenset
    surviving: frozenset
    independent_set: frozenset
    stats: dict = field(default_factory=dict)


def neighbor_yes_counts(g: Graph, oracle: Oracle) -> np.ndarray:
    """Number of neighbors of each vertex that the oracle claims are members.

    Queries each vertex exactly once (answers are materialized in one batch;
    by persistence this is equivalent to querying inside the per-vertex
    loop).  Requires a persistent Bernoulli oracle.
    """
    if not oracle.config.is_persistent:
        raise ModeError("neighbor votes need a persistent oracle; answers must not change between reads")
    answers = oracle.query_bool_many(np.arange(g.n, dtype=np.int64))
    owner = np.repeat(np.arange(g.n), g.degrees())
    counts = np.bincount(owner, weights=answers[g.indices].astype(np.float64), minlength=g.n)
    return counts.astype(np.int64)


def survival_threshold(deg, epsilon: float, n: int, coeff: float = 6.0):
    """Largest claimed-neighbor count a degree-``deg`` vertex may have and survive.

    ``(1/2 - eps) * deg + coeff * sqrt(ln n) * (1/2 - eps) * sqrt(deg)``;
    accepts scalars or arrays for ``deg``.
    """
    log_n = math.log(n)
    deg = np.asarray(deg, dtype=np.float64)
    out = (0.5 - epsilon) * deg + coeff * math.sqrt(log_n) * (0.5 - epsilon) * np.sqrt(deg)
    if out.ndim == 0:
        return float(out)
    return out


def _greedy_order(sub: Graph, policy: str, seed: int) -> np.ndarray | None:
    if policy == "id":
        return None
    if policy == "degree":
        return np.argsort(sub.degrees(), kind="stable")
    if policy == "random":
        return np.random.default_rng(seed).permutation(sub.n)
    raise ValueError(f"unknown greedy order policy {policy!r}")


def run_persistent(g: Graph, oracle: Oracle, params: PersistentParams | None = None) -> PersistentReport:
    """Filter on neighborhood votes, then take a greedy set on the survivors.

    Survivors are the union of the low-degree exemption set L (degree at most
    ``cutoff_coeff * ln n``, ties survive) and the filtered set S (vertices
    above the cutoff whose claimed-neighbor count is at most the survival
    threshold, ties survive).  Total oracle cost is exactly ``g.n`` queries.
    """
    params = params or PersistentParams()
    if oracle.n != g.n:
        raise ValueError("oracle universe size does not match the graph")
    t0 = time.perf_counter()
    n = g.n
    if n == 0:
        return PersistentReport(
            yes_counts=np.zeros(0, dtype=np.int64),
            low_degree=frozenset(),
            surviving=frozenset(),
            independent_set=frozenset(),
            stats={"num_low_degree": 0, "num_surviving": 0, "num_selected": 0, "wall_time_ms": 0.0},
        )
    eps = params.epsilon_effective if params.epsilon_effective is not None else oracle.effective_epsilon
    yes = neighbor_yes_counts(g, oracle)
    degs = g.degrees()
    cutoff = params.low_degree_cutoff_coeff * math.log(n)
    low_mask = degs <= cutoff
    thresholds = survival_threshold(degs, eps, n, params.threshold_coeff)
    surviving_mask = ~low_mask & (yes <= thresholds)
    keep = np.flatnonzero(low_mask | surviving_mask)
    if keep.size:
        sub, ids = induced_subgraph(g, keep)
        order = _greedy_order(sub, params.greedy_order, params.order_seed)
        chosen = greedy_mis(sub, order)
        independent = frozenset(ids[sorted(chosen)].tolist())
    else:
        independent = frozenset()
    report = PersistentReport(
        yes_counts=yes,
        low_degree=frozenset(np.flatnonzero(low_mask).tolist()),
        surviving=frozenset(np.flatnonzero(surviving_mask).tolist()),
        independent_set=independent,
        stats={},
    )
    report.stats = {
        "num_low_degree": len(report.low_degree),
        "num_surviving": len(report.surviving),
        "num_selected": len(independent),
        "wall_time_ms": (time.perf_counter() - t0) * 1000.0,
    }
    return report
