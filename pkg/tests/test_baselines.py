"""Sampler, amplification, and greedy baselines."""

import math

import numpy as np
import pytest

from noisymis.bandit import BanditParams, run_bandit
from noisymis.baselines import (
    AmplifyParams,
    SamplerParams,
    run_amplify,
    run_greedy_baseline,
    run_sampler,
)
from noisymis.graph import build_graph, greedy_mis
from noisymis.instances import gen_planted_gnp
from noisymis.oracle import BANDIT_BERNOULLI, ModeError, Oracle, OracleConfig, make_oracle


def bern(eps, seed=0):
    return OracleConfig(epsilon=eps, mode=BANDIT_BERNOULLI, seed=seed)


# -- sampler ---------------------------------------------------------------------


def test_sampler_perfect_oracle_returns_sampled_members():
    n = 500
    inst = gen_planted_gnp(n, 0.4, 0.02, seed=1)
    o = make_oracle(inst, bern(0.5, seed=2))
    out = run_sampler(n, o, seed=7)
    # reproduce the sample with the same generator stream
    prob = 1.0 / math.log(n)
    sampled = np.flatnonzero(np.random.default_rng(7).random(n) < prob)
    assert out == frozenset(sampled.tolist()) & inst.planted
    assert out <= set(sampled.tolist())


def test_sampler_full_probability_classifies_everything():
    inst = gen_planted_gnp(60, 0.5, 0.1, seed=3)
    o = make_oracle(inst, bern(0.5, seed=4))
    out = run_sampler(60, o, SamplerParams(sample_prob=1.0), seed=0)
    assert out == inst.planted
    assert np.all(o.ledger.per_vertex > 0)


def test_sampler_query_accounting():
    n = 2000
    inst = gen_planted_gnp(n, 0.5, 0.0, seed=5)
    o = make_oracle(inst, bern(0.25, seed=6))
    params = SamplerParams()
    out = run_sampler(n, o, params, seed=11)
    q = math.ceil(math.log(n) / 0.25**2)
    sampled = np.flatnonzero(o.ledger.per_vertex > 0)
    assert np.all(o.ledger.per_vertex[sampled] == q)
    assert o.total_queries == sampled.size * q
    # sample size concentrates around n/ln n
    expect = n / math.log(n)
    sigma = math.sqrt(n * (1 / math.log(n)) * (1 - 1 / math.log(n)))
    assert abs(sampled.size - expect) <= 3 * sigma
    assert out <= set(sampled.tolist())


def test_sampler_appendix_guarantees():
    # 20 seeded trials at the analyzed scale: subset of the hidden set almost
    # always, and at least |I*| / (2 ln n) vertices in most trials
    n = 10_000
    inst = gen_planted_gnp(n, 0.5, 0.0, seed=800)
    floor = len(inst.planted) / (2.0 * math.log(n))
    subset_ok = size_ok = 0
    for s in range(20):
        o = make_oracle(inst, bern(0.25, seed=900 + s))
        out = run_sampler(n, o, seed=1900 + s)
        subset_ok += out <= inst.planted
        size_ok += len(out) >= floor
        assert o.total_queries <= 4 * n / 0.25**2
    assert subset_ok >= 19
    assert size_ok >= 13


def test_sampler_validation():
    inst = gen_planted_gnp(30, 0.5, 0.1, seed=0)
    pers = make_oracle(inst, OracleConfig(epsilon=0.25, mode="persistent-random"))
    with pytest.raises(ModeError):
        run_sampler(30, pers)
    gauss = make_oracle(inst, OracleConfig(epsilon=0.25, mode="bandit-gaussian"))
    with pytest.raises(ModeError):
        run_sampler(30, gauss)
    o = make_oracle(inst, bern(0.25))
    with pytest.raises(ValueError, match="size"):
        run_sampler(29, o)
    with pytest.raises(ValueError, match="sample_prob"):
        run_sampler(30, o, SamplerParams(sample_prob=1.5))
    with pytest.raises(ValueError, match="queries_per_vertex"):
        run_sampler(30, o, SamplerParams(queries_per_vertex=0))
    assert run_sampler(0, Oracle(np.zeros(0, dtype=bool), bern(0.25))) == frozenset()


# -- amplification ----------------------------------------------------------------


def test_amplify_perfect_base_and_oracle():
    inst = gen_planted_gnp(100, 0.4, 0.05, seed=10)
    o = make_oracle(inst, bern(0.5, seed=11))
    base = lambda residual: inst.planted & residual
    out = run_amplify(base, o, 100)
    assert out == inst.planted


def test_amplify_fixed_subset_promoted_after_one_round():
    # base always answers the same 2/3 chunk of the hidden set; with one
    # round that chunk is promoted wholesale and the sweep finishes the rest
    n = 9
    planted = frozenset(range(6))
    g = build_graph(n, [(6, 7), (7, 8)])
    from noisymis.instances import PlantedInstance

    inst = PlantedInstance(graph=g, planted=planted, params={})
    o = make_oracle(inst, bern(0.5, seed=12))
    chunk = frozenset({0, 1, 2, 3})
    calls = []

    def base(residual):
        calls.append(set(residual))
        return chunk

    out = run_amplify(base, o, n, AmplifyParams(rounds=1, reps_per_round=5, final_queries=3))
    assert out == planted
    assert len(calls) == 5
    assert all(c == set(range(n)) for c in calls)


def test_amplify_promotion_threshold_is_half_the_reps():
    # vertex 0 selected in exactly t/2 runs is promoted; vertex 1 selected
    # once is not (it comes back via the noiseless sweep instead)
    n = 4
    from noisymis.instances import PlantedInstance

    inst = PlantedInstance(graph=build_graph(n, [(2, 3)]), planted=frozenset({0, 1}), params={})
    o = make_oracle(inst, bern(0.5, seed=13))
    script = [{0, 1}, {0}, set(), set()]

    def base(residual):
        return script.pop(0)

    out = run_amplify(base, o, n, AmplifyParams(rounds=1, reps_per_round=4, final_queries=5))
    assert out == {0, 1}
    assert not script


def test_amplify_round_votes_ignore_nonresidual_vertices():
    # a base that keeps naming already-promoted vertices must not double
    # count them; the residual shrinks monotonically
    n = 6
    from noisymis.instances import PlantedInstance

    inst = PlantedInstance(graph=build_graph(n, []), planted=frozenset(range(6)), params={})
    o = make_oracle(inst, bern(0.5, seed=14))
    seen = []

    def base(residual):
        seen.append(frozenset(residual))
        return {0, 1, 2, 3, 4, 5}

    out = run_amplify(base, o, n, AmplifyParams(rounds=3, reps_per_round=2, final_queries=1))
    assert out == frozenset(range(6))
    # residual empties after round 1, so rounds 2..3 skip the base entirely
    assert len(seen) == 2


def test_amplify_validation():
    inst = gen_planted_gnp(30, 0.5, 0.1, seed=0)
    base = lambda residual: inst.planted & residual
    pers = make_oracle(inst, OracleConfig(epsilon=0.25, mode="persistent-random"))
    with pytest.raises(ModeError):
        run_amplify(base, pers, 30)
    o = make_oracle(inst, bern(0.25))
    with pytest.raises(ValueError, match="size"):
        run_amplify(base, o, 29)
    with pytest.raises(ValueError, match="rounds"):
        run_amplify(base, o, 30, AmplifyParams(rounds=-1))
    with pytest.raises(ValueError, match="reps_per_round"):
        run_amplify(base, o, 30, AmplifyParams(reps_per_round=0))
    two = gen_planted_gnp(2, 0.5, 0.0, seed=0)
    o2 = make_oracle(two, bern(0.25))
    with pytest.raises(ValueError, match="n >= 3"):
        run_amplify(base, o2, 2)
    assert run_amplify(base, Oracle(np.zeros(0, dtype=bool), bern(0.25)), 0) == frozenset()


def test_amplify_recovers_planted_with_bandit_base():
    # the full reduction at its analyzed parameterization: alpha = 1 - 1/ln n,
    # defaults for rounds/reps/final queries, exact recovery in >= 8/10 trials
    n = 4096
    alpha = 1.0 - 1.0 / math.log(n)
    inst = gen_planted_gnp(n, alpha, 0.005, seed=400, ensure_maximal=True)
    wins = 0
    for t in range(10):
        o = make_oracle(inst, bern(0.25, seed=500 + t))

        def base(residual):
            return run_bandit(inst.graph, o, BanditParams(delta=0.1), initial=residual).independent_set

        wins += run_amplify(base, o, n) == inst.planted
    assert wins >= 8


# -- greedy ------------------------------------------------------------------------


def test_greedy_baseline_delegates():
    inst = gen_planted_gnp(80, 0.4, 0.1, seed=20)
    assert run_greedy_baseline(inst.graph) == greedy_mis(inst.graph)
    order = list(reversed(range(80)))
    assert run_greedy_baseline(inst.graph, order) == greedy_mis(inst.graph, order)
