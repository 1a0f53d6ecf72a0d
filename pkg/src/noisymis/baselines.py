"""Baseline recovery procedures: subsample-and-vote, and repetition voting.

``run_sampler`` never looks at edges: it samples a small vertex subset and
keeps the majority-yes vertices, trading solution size for a tiny query
bill.  ``run_amplify`` boosts any constant-approximation subroutine into a
near-exact one by re-running it and promoting consistently selected
vertices, then sweeping the leftovers with direct majority votes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, greedy_mis
from .oracle import Oracle, ModeError, BANDIT_BERNOULLI

__all__ = [
    "SamplerParams",
    "AmplifyParams",
    "run_sampler",
    "run_amplify",
    "run_greedy_baseline",
]


@dataclass
class SamplerParams:
    """Defaults: sample probability ``1/ln n``, ``ceil(ln n / eps^2)`` queries each."""

    sample_prob: float | None = None
    queries_per_vertex: int | None = None


@dataclass
class AmplifyParams:
    """Defaults: ``ceil(log_1.5 ln n)`` rounds of ``ceil(100 ln ln n)`` reruns,
    then ``ceil(2 ln n / eps^2)`` direct queries per leftover vertex."""

    rounds: int | None = None
    reps_per_round: int | None = None
    final_queries: int | None = None


def run_sampler(n: int, oracle: Oracle, params: SamplerParams | None = None, seed: int = 0) -> frozenset:
    """Majority-vote a random ``~n / ln n``-vertex sample.

    Total cost is ``|sample| * queries_per_vertex``.  The subset sampling is
    the procedure's own randomness and is driven by ``seed``, separate from
    the oracle noise.  Requires the non-persistent Bernoulli oracle.
    """
    params = params or SamplerParams()
    if oracle.config.mode != BANDIT_BERNOULLI:
        raise ModeError("the sampling baseline votes by repeated queries; it needs the non-persistent Bernoulli oracle")
    if oracle.n != n:
        raise ValueError("oracle universe size does not match n")
    if n == 0:
        return frozenset()
    if params.sample_prob is not None:
        if not 0.0 < params.sample_prob <= 1.0:
            raise ValueError(f"sample_prob must lie in (0, 1], got {params.sample_prob}")
        prob = params.sample_prob
    else:
        prob = min(1.0, 1.0 / math.log(n)) if n > 1 else 1.0
    eps = oracle.config.epsilon
    q = params.queries_per_vertex if params.queries_per_vertex is not None else math.ceil(math.log(max(n, 2)) / eps**2)
    if q < 1:
        raise ValueError(f"queries_per_vertex must be >= 1, got {q}")
    rng = np.random.default_rng(seed)
    sampled = np.flatnonzero(rng.random(n) < prob)
    if sampled.size == 0:
        return frozenset()
    counts = oracle.query_yes_counts(sampled, q)
    return frozenset(sampled[2 * counts >= q].tolist())


def run_amplify(base_alg, oracle: Oracle, n: int, params: AmplifyParams | None = None) -> frozenset:
    """Promote vertices that ``base_alg`` selects consistently, round by round.

    ``base_alg(residual)`` must return a vertex subset given the residual
    id set; each round reruns it ``reps_per_round`` times and promotes the
    vertices selected in at least half the runs, removing them from the
    residual.  After the last round every leftover vertex is queried
    directly ``final_queries`` times and promoted on a majority of yes
    answers.  Requires the non-persistent Bernoulli oracle (the final sweep
    votes by repetition).
    """
    params = params or AmplifyParams()
    if oracle.config.mode != BANDIT_BERNOULLI:
        raise ModeError("the final sweep votes by repeated queries; it needs the non-persistent Bernoulli oracle")
    if oracle.n != n:
        raise ValueError("oracle universe size does not match n")
    if n == 0:
        return frozenset()
    eps = oracle.config.epsilon
    if params.rounds is not None:
        rounds = params.rounds
    else:
        if n < 3:
            raise ValueError("default round count needs n >= 3; pass rounds explicitly")
        rounds = math.ceil(math.log(math.log(n)) / math.log(1.5))
    reps = params.reps_per_round
    if reps is None:
        if n < 3:
            raise ValueError("default repetition count needs n >= 3; pass reps_per_round explicitly")
        reps = math.ceil(100.0 * math.log(math.log(n)))
    final_q = params.final_queries if params.final_queries is not None else math.ceil(2.0 * math.log(max(n, 2)) / eps**2)
    if rounds < 0 or reps < 1 or final_q < 1:
        raise ValueError("rounds must be >= 0, reps_per_round and final_queries >= 1")

    residual = frozenset(range(n))
    promoted: set[int] = set()
    for _ in range(rounds):
        if not residual:
            break
        votes = np.zeros(n, dtype=np.int64)
        for _ in range(reps):
            picked = base_alg(residual)
            hits = [v for v in picked if v in residual]
            if hits:
                votes[hits] += 1
        selected = frozenset(np.flatnonzero(2 * votes >= reps).tolist())
        promoted |= selected
        residual -= selected
    if residual:
        leftovers = np.fromiter(sorted(residual), dtype=np.int64, count=len(residual))
        counts = oracle.query_yes_counts(leftovers, final_q)
        promoted |= set(leftovers[2 * counts >= final_q].tolist())
    return frozenset(promoted)


def run_greedy_baseline(g: Graph, order=None) -> frozenset:
    """Oracle-free floor: the first-fit greedy maximal independent set."""
    return greedy_mis(g, order)
