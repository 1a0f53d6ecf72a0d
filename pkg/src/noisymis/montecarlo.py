"""Monte Carlo estimation of tail-event probabilities, with event samplers
for the package's filtering and elimination rules.

``estimate_tail`` drives any vectorized event sampler and returns the hit
frequency with a 99% normal-approximation half-width, floored so that a
zero-hit run still reports positive uncertainty.  Bound checks downstream
should be one-sided: assert ``p_hat - ci <= bound``.
"""

from __future__ import annotations

import math

import numpy as np

from .bandit import BanditParams, query_schedule
from .persistent import survival_threshold

__all__ = [
    "estimate_tail",
    "coin_event",
    "member_filter_violation",
    "blocker_filter_violation",
    "member_elimination",
    "nonmember_survival",
    "EVENT_BUILDERS",
]

_Z99 = 2.58


def estimate_tail(sampler, trials: int, seed: int, batch: int = 1_000_000) -> tuple[float, float]:
    """Estimate P(event) over ``trials`` draws of ``sampler(rng, count)``.

    The sampler must return a boolean array of length ``count``.  Returns
    ``(p_hat, half_width)`` where the half-width is the 99% Wald interval
    ``2.58 * sqrt(p(1-p)/trials)`` floored at ``2.58 / (2 * trials)``.
    """
    if trials < 1000:
        raise ValueError(f"need at least 1000 trials for a meaningful tail estimate, got {trials}")
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = trials
    while remaining > 0:
        count = min(remaining, batch)
        out = np.asarray(sampler(rng, count))
        if out.shape != (count,):
            raise ValueError("sampler must return one boolean per requested trial")
        hits += int(np.count_nonzero(out))
        remaining -= count
    p_hat = hits / trials
    half = max(_Z99 * math.sqrt(p_hat * (1.0 - p_hat) / trials), _Z99 / (2.0 * trials))
    return p_hat, half


def coin_event(p: float):
    """Bernoulli(p) hits; the estimator calibration case."""

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.random(count) < p

    return sample


def member_filter_violation(deg: int, epsilon: float, n: int, coeff: float = 6.0):
    """A hidden-set vertex of degree ``deg`` fails the survival filter.

    All its neighbors are outsiders, so its claimed-neighbor count is
    Binomial(deg, 1/2 - eps); the event is that count exceeding the survival
    threshold.
    """
    s = survival_threshold(deg, epsilon, n, coeff)

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.binomial(deg, 0.5 - epsilon, size=count) > s

    return sample


def blocker_filter_violation(deg: int, k: int, epsilon: float, n: int, coeff: float = 6.0):
    """An outsider with ``k`` hidden-set neighbors sneaks past the filter.

    Its claimed-neighbor count is Binomial(k, 1/2 + eps) + Binomial(deg - k,
    1/2 - eps); the event is that count landing at or below the threshold.
    """
    if not 0 <= k <= deg:
        raise ValueError(f"k must lie in [0, deg], got {k}")
    s = survival_threshold(deg, epsilon, n, coeff)

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        claimed = rng.binomial(k, 0.5 + epsilon, size=count)
        claimed = claimed + rng.binomial(deg - k, 0.5 - epsilon, size=count)
        return claimed <= s

    return sample


def member_elimination(r: int, epsilon: float, delta: float, schedule_coeff: float = 4.0):
    """A hidden-set vertex loses the round-``r`` majority vote."""
    q = query_schedule(r, BanditParams(epsilon=epsilon, delta=delta, schedule_coeff=schedule_coeff))

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        return 2 * rng.binomial(q, 0.5 + epsilon, size=count) < q

    return sample


def nonmember_survival(r_or_q, epsilon: float, delta: float | None = None, schedule_coeff: float = 4.0, direct_q: bool = False):
    """An outsider wins the majority vote (ties survive).

    Pass a round index (with ``delta``) to use the schedule, or set
    ``direct_q=True`` to interpret the first argument as a raw query count.
    """
    if direct_q:
        q = int(r_or_q)
        if q < 1:
            raise ValueError(f"query count must be >= 1, got {q}")
    else:
        if delta is None:
            raise ValueError("delta is required when giving a round index")
        q = query_schedule(int(r_or_q), BanditParams(epsilon=epsilon, delta=delta, schedule_coeff=schedule_coeff))

    def sample(rng: np.random.Generator, count: int) -> np.ndarray:
        return 2 * rng.binomial(q, 0.5 - epsilon, size=count) >= q

    return sample


# name -> builder, for the CLI's ad hoc Monte Carlo entry point
EVENT_BUILDERS = {
    "coin": coin_event,
    "filter-member": member_filter_violation,
    "filter-blocker": blocker_filter_violation,
    "elim-member": member_elimination,
    "elim-survivor": nonmember_survival,
}
