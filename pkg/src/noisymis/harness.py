"""Config-driven experiment runner: build, run, validate, record.

Each trial builds its own instance and oracle from seeds derived stably from
the trial seed, runs the requested algorithm, checks the output's
independence (a failure aborts the run), and emits one record.  Identical
configs reproduce identical records bit for bit, except wall-clock times.
Parallel execution only changes who computes each trial, not its seed, so
serial and parallel runs agree.
"""

from __future__ import annotations

import dataclasses
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, exact_mis, is_independent_set
from .oracle import (
    BANDIT_BERNOULLI,
    BANDIT_GAUSSIAN,
    PERSISTENT_RANDOM,
    OracleConfig,
    make_oracle,
)
from .persistent import PersistentParams, run_persistent
from .bandit import BanditParams, run_bandit
from .baselines import AmplifyParams, SamplerParams, run_amplify, run_greedy_baseline, run_sampler
from .instances import PlantedInstance, gen_planted_gnp, gen_planted_bounded_degree, read_instance

__all__ = [
    "ALGORITHMS",
    "CSV_COLUMNS",
    "ExperimentConfig",
    "TrialRecord",
    "AggregateSummary",
    "derive_seed",
    "trial_seeds",
    "run_trial",
    "run_experiment",
    "aggregate",
    "records_to_csv",
    "records_from_csv",
]

ALGORITHMS = ("persistent", "bandit", "sampler", "amplify", "greedy", "exact")

CSV_COLUMNS = (
    "algorithm",
    "n",
    "m",
    "max_degree",
    "alpha",
    "epsilon",
    "delta",
    "seed",
    "planted_size",
    "output_size",
    "ratio",
    "total_queries",
    "rounds",
    "wall_time_ms",
    "independent_set_valid",
)


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from the given parts.

    sha256 over the ':'-joined decimal/string forms, truncated to 8 bytes;
    stable across platforms and sessions, and extending a seed list never
    perturbs earlier trials.
    """
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


@dataclass
class ExperimentConfig:
    """One experiment: an algorithm, an instance source, an oracle, seeds.

    ``instance`` is either ``{"path": ...}`` or a generator spec
    (``{"generator": "gnp" | "bounded-degree", ...}``).  ``seeds`` wins over
    ``(seed_base, trials)`` when given.  ``params`` holds algorithm-specific
    overrides (unknown keys are rejected at run time).
    """

    algorithm: str
    instance: dict
    oracle: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    seeds: list | None = None
    seed_base: int = 0
    trials: int = 1
    workers: int = 1
    output: str | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if not isinstance(self.instance, dict) or not ({"path", "generator"} & self.instance.keys()):
            raise ValueError("instance must be a dict with either a 'path' or a 'generator' key")
        if self.seeds is None and self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json_file(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


@dataclass
class TrialRecord:
    algorithm: str
    n: int
    m: int
    max_degree: int
    alpha: float
    epsilon: float | None
    delta: float | None
    seed: int
    planted_size: int
    output_size: int
    ratio: float
    total_queries: int
    rounds: int | None
    wall_time_ms: float
    independent_set_valid: bool = True

    def to_row(self) -> list[str]:
        return [_fmt(getattr(self, c)) for c in CSV_COLUMNS]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def trial_seeds(config: ExperimentConfig) -> list[int]:
    if config.seeds is not None:
        return [int(s) for s in config.seeds]
    return [derive_seed(config.seed_base, i) for i in range(config.trials)]


def _build_instance(spec: dict, trial_seed: int) -> PlantedInstance:
    if "path" in spec:
        return read_instance(spec["path"])
    kind = spec.get("generator")
    kwargs = {k: v for k, v in spec.items() if k != "generator"}
    kwargs["seed"] = derive_seed(trial_seed, "instance")
    if kind == "gnp":
        return gen_planted_gnp(**kwargs)
    if kind == "bounded-degree":
        return gen_planted_bounded_degree(**kwargs)
    raise ValueError(f"unknown instance generator {kind!r}")


def _oracle_config(config: ExperimentConfig, trial_seed: int) -> OracleConfig:
    spec = dict(config.oracle)
    spec.pop("seed", None)  # oracle noise is always derived from the trial seed
    if "mode" not in spec:
        spec["mode"] = PERSISTENT_RANDOM if config.algorithm == "persistent" else BANDIT_BERNOULLI
    if "epsilon" not in spec:
        raise ValueError("oracle config needs an 'epsilon' entry")
    try:
        return OracleConfig(seed=derive_seed(trial_seed, "oracle"), **spec)
    except TypeError as exc:
        raise ValueError(f"bad oracle config: {exc}") from None


def _params_for(cls, overrides: dict):
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(overrides) - known
    if unknown:
        raise ValueError(f"unknown {cls.__name__} keys: {sorted(unknown)}")
    return cls(**overrides)


def run_trial(config: ExperimentConfig, seed: int) -> tuple[TrialRecord, object]:
    """Run one seeded trial; returns the record and the algorithm's detail
    object (elimination trace or filter report) when one exists."""
    instance = _build_instance(config.instance, seed)
    g = instance.graph
    planted = instance.planted
    algorithm = config.algorithm
    detail = None
    epsilon = None
    delta = None
    rounds = None
    queries = 0
    t0 = time.perf_counter()
    if algorithm == "greedy":
        output = run_greedy_baseline(g)
    elif algorithm == "exact":
        output = exact_mis(g)
    else:
        ocfg = _oracle_config(config, seed)
        oracle = make_oracle(instance, ocfg)
        epsilon = ocfg.epsilon
        if algorithm == "persistent":
            report = run_persistent(g, oracle, _params_for(PersistentParams, config.params))
            output = report.independent_set
            detail = report
        elif algorithm == "bandit":
            params = _params_for(BanditParams, config.params)
            result = run_bandit(g, oracle, params)
            output = result.independent_set
            rounds = result.best_round
            delta = params.delta
            detail = result
        elif algorithm == "sampler":
            output = run_sampler(g.n, oracle, _params_for(SamplerParams, config.params), seed=derive_seed(seed, "sampler"))
        elif algorithm == "amplify":
            overrides = dict(config.params)
            delta = overrides.pop("delta", 0.1)
            amplify_params = _params_for(AmplifyParams, overrides)
            bandit_params = BanditParams(delta=delta)

            def base(residual):
                return run_bandit(g, oracle, bandit_params, initial=residual).independent_set

            output = run_amplify(base, oracle, g.n, amplify_params)
        else:  # unreachable: __post_init__ validates
            raise ValueError(f"unknown algorithm {algorithm!r}")
        queries = oracle.total_queries
    wall_ms = (time.perf_counter() - t0) * 1000.0
    if not is_independent_set(g, output):
        raise RuntimeError(f"trial seed={seed} algorithm={algorithm}: output failed the independence check")
    alpha = instance.params.get("alpha", len(planted) / g.n if g.n else 0.0)
    record = TrialRecord(
        algorithm=algorithm,
        n=g.n,
        m=g.m,
        max_degree=g.max_degree,
        alpha=alpha,
        epsilon=epsilon,
        delta=delta,
        seed=seed,
        planted_size=len(planted),
        output_size=len(output),
        ratio=len(output) / len(planted) if planted else 0.0,
        total_queries=queries,
        rounds=rounds,
        wall_time_ms=wall_ms,
        independent_set_valid=True,
    )
    return record, detail


def _run_trial_task(payload: tuple[dict, int]) -> TrialRecord:
    config_dict, seed = payload
    record, _ = run_trial(ExperimentConfig.from_dict(config_dict), seed)
    return record


def run_experiment(config: ExperimentConfig, collect_details: bool = False):
    """Run all trials; returns the record list, plus a seed-keyed detail map
    when ``collect_details`` is set (details force serial execution)."""
    seeds = trial_seeds(config)
    records: list[TrialRecord] = []
    details: dict[int, object] = {}
    if config.workers > 1 and not collect_details:
        payload = [(config.to_dict(), s) for s in seeds]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_run_trial_task, payload))
    else:
        for s in seeds:
            record, detail = run_trial(config, s)
            records.append(record)
            if collect_details and detail is not None:
                details[s] = detail
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(records_to_csv(records))
    if collect_details:
        return records, details
    return records


@dataclass
class AggregateSummary:
    trials: int
    mean_ratio: float
    min_ratio: float
    median_ratio: float
    ratio_p10: float
    ratio_p90: float
    mean_queries: float
    max_queries: int
    pass_rate: float | None = None


def _percentile(sorted_vals: list[float], fraction: float) -> float:
    if len(sorted_vals) == 1:
        return sorted_vals[0]
    pos = fraction * (len(sorted_vals) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(sorted_vals) - 1)
    frac = pos - lo
    return sorted_vals[lo] * (1 - frac) + sorted_vals[hi] * frac


def aggregate(records: list[TrialRecord], ratio_threshold: float | None = None) -> AggregateSummary:
    """Summary statistics over records; exact arithmetic over the given rows."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    ratios = sorted(r.ratio for r in records)
    queries = [r.total_queries for r in records]
    k = len(ratios)
    return AggregateSummary(
        trials=k,
        mean_ratio=sum(ratios) / k,
        min_ratio=ratios[0],
        median_ratio=_percentile(ratios, 0.5),
        ratio_p10=_percentile(ratios, 0.1),
        ratio_p90=_percentile(ratios, 0.9),
        mean_queries=sum(queries) / k,
        max_queries=max(queries),
        pass_rate=(sum(1 for r in records if r.ratio >= ratio_threshold) / k) if ratio_threshold is not None else None,
    )


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for record in records:
        buf.write(",".join(record.to_row()) + "\n")
    return buf.getvalue()


def _parse_cell(name: str, text: str):
    if text == "":
        return None
    if name in ("n", "m", "max_degree", "seed", "planted_size", "output_size", "total_queries", "rounds"):
        return int(text)
    if name in ("alpha", "epsilon", "delta", "ratio", "wall_time_ms"):
        return float(text)
    if name == "independent_set_valid":
        return text == "true"
    return text


def records_from_csv(path) -> list[TrialRecord]:
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines or lines[0].split(",") != list(CSV_COLUMNS):
        raise ValueError(f"{path}: not a trial record CSV (unexpected header)")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(CSV_COLUMNS):
            raise ValueError(f"{path}: row has {len(cells)} cells, expected {len(CSV_COLUMNS)}")
        kwargs = {name: _parse_cell(name, cell) for name, cell in zip(CSV_COLUMNS, cells)}
        records.append(TrialRecord(**kwargs))
    return records
