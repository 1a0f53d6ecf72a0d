"""Elimination algorithm: schedule, budget, voting rule, cover phase, full runs."""

import math
import time

import numpy as np
import pytest

from noisymis.bandit import (
    BanditParams,
    BanditResult,
    cover_complement,
    elimination_round,
    log_inv_delta,
    query_budget,
    query_schedule,
    run_bandit,
)
from noisymis.graph import build_graph, is_independent_set
from noisymis.instances import PlantedInstance, gen_planted_bounded_degree, gen_planted_gnp
from noisymis.oracle import (
    BANDIT_BERNOULLI,
    BANDIT_GAUSSIAN,
    ModeError,
    Oracle,
    OracleConfig,
    make_oracle,
)


def bern(eps, seed=0):
    return OracleConfig(epsilon=eps, mode=BANDIT_BERNOULLI, seed=seed)


# -- schedule and budget --------------------------------------------------------


def test_log_inv_delta():
    assert log_inv_delta(0.1) == pytest.approx(math.log(10.0))
    assert log_inv_delta(1.0) == 0.0
    assert log_inv_delta(1.0 - 1e-10) == 0.0
    for bad in (0.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            log_inv_delta(bad)


def test_schedule_frozen_values():
    p = BanditParams(epsilon=0.5, delta=math.exp(-1.0))
    assert query_schedule(1, p) == 32
    assert query_schedule(2, p) == 48
    assert query_schedule(1, BanditParams(epsilon=0.5, delta=1.0 - 1e-9)) == 16
    # the working point used throughout: eps=0.25, delta=0.1
    p = BanditParams(epsilon=0.25, delta=0.1)
    assert [query_schedule(r, p) for r in (1, 2, 3)] == [212, 276, 340]


def test_schedule_strictly_increasing_with_constant_gap():
    p = BanditParams(epsilon=0.5, delta=math.exp(-1.0))
    qs = [query_schedule(r, p) for r in range(1, 12)]
    gaps = {b - a for a, b in zip(qs, qs[1:])}
    assert gaps == {16}


def test_schedule_validation():
    with pytest.raises(ValueError, match="round"):
        query_schedule(0, BanditParams(epsilon=0.5))
    with pytest.raises(ValueError, match="epsilon"):
        query_schedule(1, BanditParams())
    with pytest.raises(ValueError, match="epsilon"):
        query_schedule(1, BanditParams(epsilon=0.7))


def test_budget_values():
    assert query_budget(5000, BanditParams(epsilon=0.25, delta=0.1)) == pytest.approx(5526204.223185711)
    assert query_budget(100, BanditParams(epsilon=0.5, delta=0.1)) == pytest.approx(27631.02111592855)
    # delta close to 1 falls back to the ln 2 floor
    assert query_budget(100, BanditParams(epsilon=0.5, delta=0.9)) == pytest.approx(8317.766166719344)
    assert query_budget(100, BanditParams(epsilon=0.5, delta=1.0)) == pytest.approx(12000 * math.log(2.0))


# -- elimination rounds ----------------------------------------------------------


def test_elimination_perfect_oracle_keeps_members_exactly():
    inst = gen_planted_gnp(200, 0.4, 0.05, seed=3)
    o = make_oracle(inst, bern(0.5, seed=5))
    for q in (1, 2, 7):
        assert elimination_round(frozenset(range(200)), o, q) == inst.planted


def test_elimination_matches_majority_rule_and_ties_survive():
    # two oracles with the same seed emit the same counts; replay the rule
    members = np.arange(60) % 2 == 0
    cfg = bern(0.05, seed=42)
    counts = Oracle(members, cfg).query_yes_counts(np.arange(60), 4)
    kept = elimination_round(frozenset(range(60)), Oracle(members, cfg), 4)
    assert kept == frozenset(np.flatnonzero(2 * counts >= 4).tolist())
    assert np.any(2 * counts == 4), "no tie occurred; seed no longer exercises the boundary"
    assert set(np.flatnonzero(2 * counts == 4).tolist()) <= kept


def test_elimination_gaussian_rule():
    members = np.arange(50) < 25
    cfg = OracleConfig(epsilon=0.2, mode=BANDIT_GAUSSIAN, seed=9)
    sums = Oracle(members, cfg).query_reward_sums(np.arange(50), 6)
    kept = elimination_round(frozenset(range(50)), Oracle(members, cfg), 6)
    assert kept == frozenset(np.flatnonzero(sums >= 3.0).tolist())


def test_elimination_q1_keeps_iff_single_yes():
    members = np.arange(40) % 3 == 0
    cfg = bern(0.5, seed=0)
    kept = elimination_round(frozenset(range(40)), Oracle(members, cfg), 1)
    assert kept == frozenset(np.flatnonzero(members).tolist())


def test_elimination_ledger_and_subset():
    inst = gen_planted_gnp(90, 0.5, 0.1, seed=1)
    o = make_oracle(inst, bern(0.25, seed=2))
    survivors = frozenset(range(0, 90, 2))
    kept = elimination_round(survivors, o, 11)
    assert kept <= survivors
    assert o.total_queries == len(survivors) * 11
    assert all(o.queries_for(v) == 11 for v in survivors)


def test_elimination_rejects_persistent_oracle():
    inst = gen_planted_gnp(20, 0.5, 0.2, seed=0)
    o = make_oracle(inst, OracleConfig(epsilon=0.25, mode="persistent-random", seed=0))
    with pytest.raises(ModeError):
        elimination_round(frozenset(range(20)), o, 4)


def test_nonmember_survival_rate_below_chernoff():
    # one vectorized round = 1e5 resamples of a non-member at q=32, eps=1/4;
    # true rate is about 0.002, the bound is e^-4
    n = 100_000
    o = Oracle(np.zeros(n, dtype=bool), bern(0.25, seed=77))
    kept = elimination_round(frozenset(range(n)), o, 32)
    rate = len(kept) / n
    assert rate <= math.exp(-2 * 0.25**2 * 32) + 0.002
    assert rate > 0.0005  # sanity: the event is rare but not impossible


# -- cover complement ------------------------------------------------------------


def test_cover_complement_edgeless_keeps_all():
    g = build_graph(8, [])
    assert cover_complement(g, frozenset(range(8))) == frozenset(range(8))


def test_cover_complement_is_independent_subset():
    rng = np.random.default_rng(5)
    for trial in range(20):
        n = int(rng.integers(5, 40))
        pairs = rng.integers(0, n, size=(n * 2, 2))
        edges = [(int(a), int(b)) for a, b in pairs if a != b]
        g = build_graph(n, edges)
        verts = frozenset(int(v) for v in rng.choice(n, size=max(1, n // 2), replace=False))
        out = cover_complement(g, verts)
        assert out <= verts
        assert is_independent_set(g, out)


def test_cover_complement_lopsided_survivors():
    # hidden members outnumber outsiders 60:1, so each matched edge burns at
    # most one member per outsider: at least 295 of 300 members remain
    inst = gen_planted_gnp(400, 0.75, 0.02, seed=11)
    planted = inst.planted
    assert len(planted) == 300
    outsiders = sorted(set(range(400)) - planted)[:5]
    survivors = planted | set(outsiders)
    out = cover_complement(inst.graph, survivors)
    assert is_independent_set(inst.graph, out)
    assert len(out & planted) >= 295
    assert len(out) >= math.ceil((49 / 50) * len(planted))


# -- run_bandit ------------------------------------------------------------------


def test_run_perfect_oracle_returns_planted_in_round_one():
    inst = gen_planted_gnp(300, 0.4, 0.03, seed=21, ensure_maximal=True)
    o = make_oracle(inst, bern(0.5, seed=4))
    result = run_bandit(inst.graph, o, BanditParams(delta=0.1))
    assert result.independent_set == inst.planted
    assert result.best_round == 1
    assert result.trace[0].survivors_after == len(inst.planted)
    assert result.trace[0].cover_size == 0


def test_run_edgeless_candidates_equal_survivors():
    g = build_graph(30, [])
    inst = PlantedInstance(graph=g, planted=frozenset(range(30)), params={})
    o = make_oracle(inst, bern(0.25, seed=8))
    result = run_bandit(g, o, BanditParams(delta=0.1))
    for rec in result.trace:
        assert rec.cover_size == 0
        assert rec.candidate_size == rec.survivors_after
    assert result.independent_set == frozenset(range(30))


def test_run_trace_invariants_and_budget_overshoot():
    inst = gen_planted_gnp(400, 0.3, 0.04, seed=31)
    o = make_oracle(inst, bern(0.25, seed=32))
    params = BanditParams(delta=0.1)
    result = run_bandit(inst.graph, o, params)
    budget = query_budget(400, BanditParams(epsilon=0.25, delta=0.1))
    trace = result.trace
    assert result.total_queries == trace[-1].cumulative_queries
    assert result.total_queries == o.total_queries
    # cumulative totals nondecreasing, survivors monotone
    for a, b in zip(trace, trace[1:]):
        assert b.cumulative_queries >= a.cumulative_queries
        assert b.survivors_before == a.survivors_after
    for rec in trace:
        assert rec.survivors_after <= rec.survivors_before
        assert rec.q == query_schedule(rec.r, BanditParams(epsilon=0.25, delta=0.1))
    assert result.terminated_reason == "budget"
    # every round but the last fit inside the budget; the last may overshoot
    # by at most its own cost
    assert trace[-2].cumulative_queries <= budget
    assert result.total_queries <= budget + trace[-1].survivors_before * trace[-1].q
    assert len(result.independent_set) == max(r.candidate_size for r in trace)
    assert result.best_round == min(r.r for r in trace if r.candidate_size == len(result.independent_set))
    assert is_independent_set(inst.graph, result.independent_set)


def test_run_restricted_to_initial_subset():
    inst = gen_planted_gnp(200, 0.4, 0.05, seed=41)
    o = make_oracle(inst, bern(0.25, seed=42))
    initial = range(100)
    result = run_bandit(inst.graph, o, BanditParams(delta=0.1), initial=initial)
    assert result.independent_set <= set(initial)
    assert np.all(o.ledger.per_vertex[100:] == 0)
    # the budget scales with the subset, not the whole graph
    if result.terminated_reason == "budget":
        assert result.trace[-2].cumulative_queries <= query_budget(
            100, BanditParams(epsilon=0.25, delta=0.1)
        )


def test_run_empty_cases():
    g = build_graph(0, [])
    o = Oracle(np.zeros(0, dtype=bool), bern(0.25))
    result = run_bandit(g, o)
    assert result.independent_set == frozenset()
    assert result.terminated_reason == "survivors-empty"
    assert result.total_queries == 0 and result.trace == []

    inst = gen_planted_gnp(10, 0.5, 0.2, seed=0)
    o = make_oracle(inst, bern(0.25))
    result = run_bandit(inst.graph, o, initial=[])
    assert result.independent_set == frozenset() and result.total_queries == 0


def test_run_validation_errors():
    inst = gen_planted_gnp(20, 0.5, 0.2, seed=0)
    o = make_oracle(inst, bern(0.25))
    with pytest.raises(ValueError, match="size"):
        run_bandit(build_graph(19, []), o)
    with pytest.raises(ModeError, match="reward_mode"):
        run_bandit(inst.graph, o, BanditParams(reward_mode="gaussian"))
    gauss = make_oracle(inst, OracleConfig(epsilon=0.25, mode=BANDIT_GAUSSIAN, seed=0))
    with pytest.raises(ModeError, match="reward_mode"):
        run_bandit(inst.graph, gauss, BanditParams(reward_mode="bernoulli"))
    pers = make_oracle(inst, OracleConfig(epsilon=0.25, mode="persistent-random", seed=0))
    with pytest.raises(ModeError):
        run_bandit(inst.graph, pers)


def test_run_gaussian_mode_end_to_end():
    inst = gen_planted_gnp(150, 0.4, 0.05, seed=51, ensure_maximal=True)
    o = make_oracle(inst, OracleConfig(epsilon=0.25, mode=BANDIT_GAUSSIAN, seed=52))
    result = run_bandit(inst.graph, o, BanditParams(delta=0.1))
    assert is_independent_set(inst.graph, result.independent_set)
    assert len(result.independent_set) >= 0.9 * len(inst.planted)


def test_run_output_independent_on_noisy_instances():
    for seed in range(5):
        inst = gen_planted_gnp(120, 0.3, 0.08, seed=seed)
        o = make_oracle(inst, bern(0.25, seed=seed + 100))
        result = run_bandit(inst.graph, o, BanditParams(delta=0.2))
        assert is_independent_set(inst.graph, result.independent_set)


def test_two_rounds_clean_almost_all_noise():
    # after ceil(1 + ln(1/alpha)) = 2 rounds at alpha = 1/2, at most
    # alpha*n/100 outsiders survive and at least (49/50)*alpha*n members do,
    # in >= 90% of trials
    inst = gen_planted_gnp(2000, 0.5, 0.005, seed=61)
    planted = inst.planted
    assert len(planted) == 1000
    params = BanditParams(epsilon=0.25, delta=0.1)
    q1, q2 = query_schedule(1, params), query_schedule(2, params)
    assert (q1, q2) == (212, 276)
    good = 0
    trials = 50
    for seed in range(trials):
        o = make_oracle(inst, bern(0.25, seed=1000 + seed))
        v1 = elimination_round(frozenset(range(2000)), o, q1)
        v2 = elimination_round(v1, o, q2)
        if len(v2 - planted) <= 10 and len(v2 & planted) >= 980:
            good += 1
    assert good >= 45


def test_runtime_tracks_edge_count():
    # doubling m at fixed n should land in a loose near-linear band
    def min_wall(d):
        best = math.inf
        for seed in range(3):
            inst = gen_planted_bounded_degree(3000, 0.3, d, seed=seed)
            o = make_oracle(inst, bern(0.25, seed=seed + 1))
            t0 = time.perf_counter()
            run_bandit(inst.graph, o, BanditParams(delta=0.1))
            best = min(best, time.perf_counter() - t0)
        return best

    ratio = min_wall(120) / min_wall(60)
    assert 1.2 <= ratio <= 4.0
