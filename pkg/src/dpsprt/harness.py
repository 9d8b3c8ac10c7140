"""Seeded Monte Carlo experiment engine.

A plan names an instance, a ground-truth hypothesis, a list of test
variants, and a trial count. Trial i of variant v draws its observation
and noise streams from keys derived injectively from (master_seed,
variant_id, i), so results are bit-reproducible, independent of the order
variants appear in the plan and of how many workers run the trials.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterable, Union

import numpy as np

from .baselines import PrivSprtConfig, run_privsprt
from .dp_sprt import Classical, LaplaceSub, TestConfig, resolved_gamma, run_test
from .rngcore import StreamKey, Substream, derive, mix64

__all__ = [
    "BitStream",
    "bernoulli_stream",
    "PlannedVariant",
    "ExperimentPlan",
    "TrialRecord",
    "BatchStats",
    "ExperimentResult",
    "run_experiment",
    "write_trials_csv",
    "write_summary_csv",
    "TRIAL_COLUMNS",
    "SUMMARY_COLUMNS",
]

TRIAL_COLUMNS = [
    "variant_id", "truth", "p0", "p1", "alpha", "beta", "gamma", "epsilon",
    "r", "kappa", "trial", "tau", "decision", "exhausted", "seed_lo", "seed_hi",
]
SUMMARY_COLUMNS = [
    "variant_id", "truth", "n_trials", "n_exhausted", "error_rate", "error_ci",
    "mean_tau", "var_tau", "tau_p5", "tau_p50", "tau_p95",
]


class BitStream:
    """Buffered i.i.d. Bernoulli bit stream over a dedicated generator.

    The bit sequence is a pure function of the generator state, independent
    of whether the consumer pulls bit by bit or in chunks.
    """

    _BLOCK = 4096

    def __init__(self, p: float, rng: np.random.Generator):
        if not 0.0 < p < 1.0:
            raise ValueError("p must lie in the open interval (0,1)")
        self._p = p
        self._rng = rng
        self._buf = np.empty(0, dtype=np.int64)
        self._pos = 0

    def _refill(self, k: int) -> None:
        block = max(self._BLOCK, k)
        fresh = (self._rng.random(block) < self._p).astype(np.int64)
        self._buf = np.concatenate([self._buf[self._pos:], fresh])
        self._pos = 0

    def take(self, k: int) -> np.ndarray:
        if self._buf.size - self._pos < k:
            self._refill(k)
        out = self._buf[self._pos : self._pos + k]
        self._pos += k
        return out

    def __iter__(self):
        return self

    def __next__(self) -> int:
        return int(self.take(1)[0])


def bernoulli_stream(p: float, rng: np.random.Generator) -> BitStream:
    """Infinite bit stream with Pr(1) = p, deterministic per generator."""
    return BitStream(p, rng)


AnyConfig = Union[TestConfig, PrivSprtConfig]


@dataclass(frozen=True)
class PlannedVariant:
    """One experiment cell: a unique id (keys the random streams), the test
    configuration, and the privacy-grid coordinate for reporting."""

    variant_id: str
    config: AnyConfig
    epsilon: float | None = None


@dataclass(frozen=True)
class ExperimentPlan:
    instance_p0: float
    instance_p1: float
    truth: int  # 0 or 1
    variants: tuple[PlannedVariant, ...]
    n_trials: int
    master_seed: int

    def __post_init__(self) -> None:
        if self.truth not in (0, 1):
            raise ValueError("truth must be 0 or 1")
        if self.n_trials < 1:
            raise ValueError("n_trials must be a positive integer")
        ids = [v.variant_id for v in self.variants]
        if len(set(ids)) != len(ids):
            raise ValueError("variant ids must be unique within a plan")
        for v in self.variants:
            if isinstance(v.config, PrivSprtConfig):
                if v.config.thresh_a is None or v.config.thresh_b is None:
                    raise ValueError(
                        f"variant {v.variant_id!r}: PrivSPRT thresholds not calibrated"
                    )
            elif not isinstance(v.config, TestConfig):
                raise ValueError(f"variant {v.variant_id!r}: unknown config type")


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    tau: int
    decision: int | None
    exhausted: bool
    seed: int


def _fnv1a64(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & ((1 << 64) - 1)
    return h


def _trial_seed(master_seed: int, vid: int, trial: int) -> int:
    return mix64(mix64(master_seed ^ mix64(vid)) ^ mix64(trial))


def _run_one(args) -> TrialRecord:
    p_truth, variant, master_seed, trial = args
    vid = _fnv1a64(variant.variant_id)
    token = _trial_seed(master_seed, vid, trial)
    obs = bernoulli_stream(p_truth, derive(StreamKey(master_seed, vid, trial, Substream.OBS)))
    cfg = replace(variant.config, seed=token)
    if isinstance(cfg, PrivSprtConfig):
        out = run_privsprt(cfg, obs)
    else:
        out = run_test(cfg, obs)
    return TrialRecord(trial, out.tau, out.decision, out.exhausted, token)


@dataclass(frozen=True)
class BatchStats:
    """Aggregates over one cell's trials. Exhausted trials are excluded from
    the error rate and the stopping-time statistics but counted separately;
    percentiles are nearest-rank."""

    n_trials: int
    n_exhausted: int
    error_rate: float
    error_ci_halfwidth: float
    mean_tau: float
    var_tau: float
    tau_p5: float
    tau_p50: float
    tau_p95: float

    @property
    def se_tau(self) -> float:
        """Standard error of mean_tau over the decided trials."""
        n = self.n_trials - self.n_exhausted
        return math.sqrt(self.var_tau / n) if n > 0 else math.nan


def _nearest_rank(sorted_vals: np.ndarray, pct: float) -> float:
    n = sorted_vals.size
    idx = max(1, math.ceil(pct / 100.0 * n))
    return float(sorted_vals[idx - 1])


def _aggregate(records: list[TrialRecord], truth: int) -> BatchStats:
    n = len(records)
    decided = [r for r in records if not r.exhausted]
    n_ex = n - len(decided)
    if not decided:
        nan = math.nan
        return BatchStats(n, n_ex, nan, nan, nan, nan, nan, nan, nan)
    wrong = sum(1 for r in decided if r.decision != truth)
    rate = wrong / len(decided)
    ci = 1.96 * math.sqrt(rate * (1.0 - rate) / len(decided))
    taus = np.sort(np.array([r.tau for r in decided], dtype=np.float64))
    var = float(np.var(taus, ddof=1)) if taus.size > 1 else 0.0
    return BatchStats(
        n_trials=n,
        n_exhausted=n_ex,
        error_rate=rate,
        error_ci_halfwidth=ci,
        mean_tau=float(np.mean(taus)),
        var_tau=var,
        tau_p5=_nearest_rank(taus, 5),
        tau_p50=_nearest_rank(taus, 50),
        tau_p95=_nearest_rank(taus, 95),
    )


@dataclass(frozen=True)
class ExperimentResult:
    variant: PlannedVariant
    truth: int
    stats: BatchStats
    trials: tuple[TrialRecord, ...]


def run_experiment(plan: ExperimentPlan, workers: int = 1) -> list[ExperimentResult]:
    """Run every (variant, trial) cell of the plan.

    Aggregation is a deterministic reduction over trial indices, so the
    results are identical at any worker count.
    """
    p_truth = plan.instance_p1 if plan.truth == 1 else plan.instance_p0
    jobs = [
        (p_truth, variant, plan.master_seed, trial)
        for variant in plan.variants
        for trial in range(plan.n_trials)
    ]
    if workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_one, jobs, chunksize=chunk))
    else:
        records = [_run_one(job) for job in jobs]
    results = []
    for i, variant in enumerate(plan.variants):
        recs = records[i * plan.n_trials : (i + 1) * plan.n_trials]
        results.append(
            ExperimentResult(variant, plan.truth, _aggregate(recs, plan.truth), tuple(recs))
        )
    return results


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return repr(value)
    return str(value)


def _variant_fields(variant: PlannedVariant) -> dict:
    cfg = variant.config
    if isinstance(cfg, PrivSprtConfig):
        return {
            "alpha": None, "beta": None, "gamma": None,
            "epsilon": variant.epsilon, "r": None, "kappa": None,
        }
    v = cfg.variant
    return {
        "alpha": cfg.alpha,
        "beta": cfg.beta,
        "gamma": resolved_gamma(cfg),
        "epsilon": variant.epsilon,
        "r": v.rate if isinstance(v, LaplaceSub) else None,
        "kappa": cfg.correction.kappa if not isinstance(v, Classical) else None,
    }


def write_trials_csv(path, results: Iterable[ExperimentResult], p0: float, p1: float) -> None:
    """Per-trial rows in the fixed column order, one line per trial."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRIAL_COLUMNS)
        for res in results:
            base = _variant_fields(res.variant)
            for r in res.trials:
                w.writerow([
                    res.variant.variant_id,
                    f"H{res.truth}",
                    _fmt(p0), _fmt(p1),
                    _fmt(base["alpha"]), _fmt(base["beta"]), _fmt(base["gamma"]),
                    _fmt(base["epsilon"]), _fmt(base["r"]), _fmt(base["kappa"]),
                    r.trial, r.tau,
                    _fmt(r.decision), int(r.exhausted),
                    r.seed & 0xFFFFFFFF, r.seed >> 32,
                ])


def write_summary_csv(path, results: Iterable[ExperimentResult]) -> None:
    """One aggregated row per experiment cell."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for res in results:
            s = res.stats
            w.writerow([
                res.variant.variant_id, f"H{res.truth}",
                s.n_trials, s.n_exhausted,
                _fmt(s.error_rate), _fmt(s.error_ci_halfwidth),
                _fmt(s.mean_tau), _fmt(s.var_tau),
                _fmt(s.tau_p5), _fmt(s.tau_p50), _fmt(s.tau_p95),
            ])
