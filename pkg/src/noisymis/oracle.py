"""Noisy vertex-membership oracles with exact query accounting.

An oracle answers "is v in the hidden independent set?" correctly with
probability ``1/2 + epsilon``, independently across vertices.  Persistent
modes fix one answer per vertex (lazily, from a counter-mode hash keyed by
seed and vertex id, so untouched vertices cost nothing); bandit modes draw
fresh noise on every query.  Every query is counted in a ledger, including
the ones issued through the batch entry points.

Confine each instance to a single trial: the ledger and the internal RNG
mutate under queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .graph import is_independent_set

__all__ = [
    "PERSISTENT_RANDOM",
    "PERSISTENT_KWISE",
    "BANDIT_BERNOULLI",
    "BANDIT_GAUSSIAN",
    "ORACLE_MODES",
    "ModeError",
    "OracleConfig",
    "QueryLedger",
    "Oracle",
    "make_oracle",
    "cap_flip_probability",
    "KWISE_PRIME",
    "kwise_coefficients",
    "kwise_hash",
    "kwise_answer",
]

PERSISTENT_RANDOM = "persistent-random"
PERSISTENT_KWISE = "persistent-kwise"
BANDIT_BERNOULLI = "bandit-bernoulli"
BANDIT_GAUSSIAN = "bandit-gaussian"
ORACLE_MODES = (PERSISTENT_RANDOM, PERSISTENT_KWISE, BANDIT_BERNOULLI, BANDIT_GAUSSIAN)

# advantage above this value is degraded back to it when capping is on
ADVANTAGE_CAP = 0.25

KWISE_PRIME = (1 << 31) - 1  # Mersenne prime field for the k-wise hash


class ModeError(RuntimeError):
    """An operation was issued against an oracle of the wrong noise mode."""


def cap_flip_probability(epsilon: float) -> float:
    """Probability of the extra error event used to cap the advantage.

    ``p = (eps - 1/4) / (1/2 + eps)``.  The capped oracle answers wrong iff
    the base oracle was wrong or this independent event fires, so its
    incorrectness is ``(1/2 - eps) + p * (1/2 + eps) = 1/4`` exactly, for
    every ``eps > 1/4``.  At ``eps = 1/2`` this is 1/4; at or below the cap
    it is 0 and the oracle is untouched.
    """
    if epsilon <= ADVANTAGE_CAP:
        return 0.0
    return (epsilon - ADVANTAGE_CAP) / (0.5 + epsilon)


@dataclass(frozen=True)
class OracleConfig:
    """Serializable oracle description used by the harness JSON configs."""

    epsilon: float
    mode: str = BANDIT_BERNOULLI
    k: int = 2
    seed: int = 0
    apply_cap: bool = True

    def validate(self) -> None:
        if not 0.0 < self.epsilon <= 0.5:
            raise ValueError(f"epsilon must lie in (0, 1/2], got {self.epsilon}")
        if self.mode not in ORACLE_MODES:
            raise ValueError(f"unknown oracle mode {self.mode!r}; expected one of {ORACLE_MODES}")
        if self.mode == PERSISTENT_KWISE and self.k < 2:
            raise ValueError(f"k-wise mode needs k >= 2, got {self.k}")

    @property
    def is_persistent(self) -> bool:
        return self.mode in (PERSISTENT_RANDOM, PERSISTENT_KWISE)

    @property
    def effective_epsilon(self) -> float:
        """Advantage after capping (capping applies to persistent modes only)."""
        if self.is_persistent and self.apply_cap:
            return min(self.epsilon, ADVANTAGE_CAP)
        return self.epsilon

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "OracleConfig":
        cfg = cls(**d)
        cfg.validate()
        return cfg


class QueryLedger:
    """Per-vertex and total query counters."""

    __slots__ = ("per_vertex", "total")

    def __init__(self, n: int):
        self.per_vertex = np.zeros(n, dtype=np.int64)
        self.total = 0

    def record_one(self, v: int) -> None:
        self.per_vertex[v] += 1
        self.total += 1

    def record(self, verts: np.ndarray, times: int) -> None:
        np.add.at(self.per_vertex, verts, times)
        self.total += int(len(verts)) * int(times)


# ---------------------------------------------------------------------------
# counter-mode randomness for persistent answers: a splitmix64-style mixer
# applied to (key, vertex id), so each vertex's bit is fixed yet never stored.

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _mix64(z):
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _derive_key(seed: int, salt: int) -> np.uint64:
    base = np.uint64((seed ^ (salt * 0x9E3779B97F4A7C15)) & 0xFFFFFFFFFFFFFFFF)
    return np.uint64(_mix64(base))


def _hash_uniform(key: np.uint64, verts: np.ndarray) -> np.ndarray:
    """Deterministic uniforms in [0, 1), one per vertex id."""
    v = np.asarray(verts, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = _mix64((v + np.uint64(1)) * _GOLDEN + key)
    return (z >> np.uint64(11)) * (2.0 ** -53)


# ---------------------------------------------------------------------------
# k-wise independent bit family: random degree-(k-1) polynomial over F_q.


def kwise_coefficients(seed: int, k: int) -> np.ndarray:
    """The k polynomial coefficients, drawn once from ``seed``."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    rng = np.random.default_rng(seed)
    return rng.integers(0, KWISE_PRIME, size=k, dtype=np.int64)


def kwise_hash(coeffs: np.ndarray, verts) -> np.ndarray:
    """Evaluate the polynomial at each vertex id (Horner, mod 2^31 - 1)."""
    v = np.atleast_1d(np.asarray(verts, dtype=np.int64)) % KWISE_PRIME
    acc = np.zeros_like(v)
    for c in coeffs[::-1].tolist():
        acc = (acc * v + c) % KWISE_PRIME  # products stay below 2^62
    return acc


def kwise_answer(coeffs: np.ndarray, verts, bias: float):
    """Biased bit per vertex: true iff h(v) < floor(bias * q).

    The realized bias differs from the requested one by less than 1/q due to
    threshold quantization; that error is documented and ignored.
    """
    if not 0.0 <= bias <= 1.0:
        raise ValueError(f"bias must lie in [0, 1], got {bias}")
    threshold = math.floor(bias * KWISE_PRIME)
    out = kwise_hash(coeffs, verts) < threshold
    if np.isscalar(verts):
        return bool(out[0])
    return out


class Oracle:
    """Stateful noisy membership oracle over a fixed universe of ``n`` ids.

    ``members`` is a boolean mask of the hidden set.  Use :func:`make_oracle`
    to build one from a planted instance with validation.
    """

    def __init__(self, members: np.ndarray, config: OracleConfig):
        config.validate()
        self._members = np.asarray(members, dtype=bool)
        self._members.setflags(write=False)
        self.n = int(len(self._members))
        self.config = config
        self.effective_epsilon = config.effective_epsilon
        self.ledger = QueryLedger(self.n)
        if config.mode == PERSISTENT_RANDOM:
            self._key_noise = _derive_key(config.seed, 1)
            self._key_flip = _derive_key(config.seed, 2)
            self._flip_p = cap_flip_probability(config.epsilon) if config.apply_cap else 0.0
        elif config.mode == PERSISTENT_KWISE:
            self._coeffs = kwise_coefficients(config.seed, config.k)
        else:
            self._rng = np.random.default_rng(config.seed)

    # -- fixed persistent answers (no ledger side effects) ------------------

    def _fixed_answers(self, verts: np.ndarray) -> np.ndarray:
        truth = self._members[verts]
        if self.config.mode == PERSISTENT_RANDOM:
            wrong = _hash_uniform(self._key_noise, verts) < (0.5 - self.config.epsilon)
            if self._flip_p > 0.0:
                # error union, not xor: a wrong answer stays wrong, so
                # incorrectness is (1/2 - eps) + p (1/2 + eps) = 1/4 exactly
                wrong = wrong | (_hash_uniform(self._key_flip, verts) < self._flip_p)
        else:
            # the flip layer is folded into one hash threshold here: a second
            # k-wise layer would halve the independence guarantee for nothing
            wrong = kwise_answer(self._coeffs, verts, 0.5 - self.effective_epsilon)
        return truth ^ wrong

    def _yes_probabilities(self, verts: np.ndarray) -> np.ndarray:
        eps = self.config.epsilon
        return np.where(self._members[verts], 0.5 + eps, 0.5 - eps)

    # -- query surface -------------------------------------------------------

    def query_bool(self, v: int) -> bool:
        """One yes/no membership answer for ``v``; counts one query."""
        if self.config.mode == BANDIT_GAUSSIAN:
            raise ModeError("query_bool needs a Bernoulli oracle; this one returns real rewards")
        self.ledger.record_one(v)
        arr = np.asarray([v], dtype=np.int64)
        if self.config.is_persistent:
            return bool(self._fixed_answers(arr)[0])
        return bool(self._rng.random() < self._yes_probabilities(arr)[0])

    def query_bool_many(self, verts) -> np.ndarray:
        """One answer per listed vertex; counts ``len(verts)`` queries."""
        if self.config.mode == BANDIT_GAUSSIAN:
            raise ModeError("query_bool_many needs a Bernoulli oracle; this one returns real rewards")
        arr = np.asarray(verts, dtype=np.int64)
        self.ledger.record(arr, 1)
        if self.config.is_persistent:
            return self._fixed_answers(arr)
        return self._rng.random(arr.size) < self._yes_probabilities(arr)

    def query_real(self, v: int) -> float:
        """One real reward: N(1/2 + eps, 1) for members, N(1/2 - eps, 1) otherwise."""
        if self.config.mode != BANDIT_GAUSSIAN:
            raise ModeError("query_real is only available in bandit-gaussian mode")
        self.ledger.record_one(v)
        eps = self.config.epsilon
        mu = 0.5 + eps if self._members[v] else 0.5 - eps
        return float(self._rng.normal(mu, 1.0))

    def query_yes_counts(self, verts, q: int) -> np.ndarray:
        """Yes-counts of ``q`` fresh queries per vertex; counts ``len(verts) * q``.

        Distributionally identical to issuing ``q`` single queries per vertex;
        only available on the non-persistent Bernoulli oracle, where repeated
        queries actually carry fresh noise.
        """
        if self.config.mode != BANDIT_BERNOULLI:
            raise ModeError("repeated querying needs the non-persistent Bernoulli oracle")
        if q < 0:
            raise ValueError("query count must be nonnegative")
        arr = np.asarray(verts, dtype=np.int64)
        self.ledger.record(arr, q)
        return self._rng.binomial(q, self._yes_probabilities(arr))

    def query_reward_sums(self, verts, q: int) -> np.ndarray:
        """Sums of ``q`` fresh real rewards per vertex; counts ``len(verts) * q``."""
        if self.config.mode != BANDIT_GAUSSIAN:
            raise ModeError("reward sums are only available in bandit-gaussian mode")
        if q < 0:
            raise ValueError("query count must be nonnegative")
        arr = np.asarray(verts, dtype=np.int64)
        self.ledger.record(arr, q)
        eps = self.config.epsilon
        mu = np.where(self._members[arr], 0.5 + eps, 0.5 - eps)
        return self._rng.normal(q * mu, math.sqrt(q) if q > 0 else 0.0)

    @property
    def total_queries(self) -> int:
        return self.ledger.total

    def queries_for(self, v: int) -> int:
        return int(self.ledger.per_vertex[v])


def make_oracle(instance, config: OracleConfig) -> Oracle:
    """Oracle for a planted instance; rejects a non-independent planted set."""
    g = instance.graph
    if not is_independent_set(g, instance.planted):
        raise ValueError("planted set is not independent in the instance graph")
    members = np.zeros(g.n, dtype=bool)
    members[np.fromiter((int(v) for v in instance.planted), dtype=np.int64, count=len(instance.planted))] = True
    return Oracle(members, config)
