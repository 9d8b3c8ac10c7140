"""Sequential probability ratio tests, classical and private.

The classical test compares the running empirical mean of the bit stream
against two moving thresholds built from the KL divergences of the two
hypotheses. The private variants add a one-shot threshold noise Z and a
per-step query noise Y, split the error budgets with an allocation gamma,
and widen the thresholds by the correction C(n, delta):

    lower(n) = mu0 + (KL01 - log(1/(gamma*beta))/n) / dtheta - C(n, (1-gamma)*beta)
    upper(n) = mu1 - (KL10 - log(1/(gamma*alpha))/n) / dtheta + C(n, (1-gamma)*alpha)

halting at the first n with xbar_n + Y_n/n <= lower(n) - Z/n (decide 0), or
failing that, xbar_n + Y_n/n >= upper(n) + Z/n (decide 1). The subsampled
variant keeps each observation with probability r, divides the budget term
by the included count M_n, and multiplies the noise and correction terms
by r, with unchanged Laplace scales.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Iterable, Union

import numpy as np

from .exp_family import HypothesisPair
from .noise import (
    CorrectionParams,
    NoiseFamily,
    NoiseSpec,
    correction_vec,
    sample_y,
    sample_z,
)
from .outside_interval import StreamExhaustedError
from .rngcore import StreamKey, Substream, derive

__all__ = [
    "Classical",
    "Laplace",
    "Gaussian",
    "LaplaceSub",
    "Variant",
    "TestConfig",
    "TestOutcome",
    "default_gamma",
    "default_subsample_rate",
    "gaussian_scales",
    "resolved_gamma",
    "threshold_lower",
    "threshold_upper",
    "run_test",
    "run_test_subsampled",
]

_CHUNK_START = 128
_CHUNK_CAP = 16384


@dataclass(frozen=True)
class Classical:
    """Noise-free SPRT with un-split budgets log(1/beta), log(1/alpha)."""


@dataclass(frozen=True)
class Laplace:
    """Laplace noise at scales 4/epsilon (Y) and 2/epsilon (Z); epsilon-DP."""

    epsilon: float


@dataclass(frozen=True)
class Gaussian:
    """Gaussian noise with explicit standard deviations; Renyi DP."""

    sigma_y: float
    sigma_z: float


@dataclass(frozen=True)
class LaplaceSub:
    """Laplace variant with Bernoulli(rate) subsampling of the observations."""

    epsilon: float
    rate: float

    def __post_init__(self) -> None:
        if not 0.0 < self.rate <= 1.0:
            raise ValueError("subsampling rate must lie in (0, 1]")


Variant = Union[Classical, Laplace, Gaussian, LaplaceSub]


def default_gamma(epsilon: float) -> float:
    """Error allocation gamma(eps) = min(1/2, 1 - 1/eps), clamped to
    [0.01, 0.99]."""
    g = min(0.5, 1.0 - 1.0 / epsilon)
    return min(max(g, 0.01), 0.99)


def default_subsample_rate(epsilon: float) -> float:
    """Subsampling rate min(1, sqrt(eps/10))."""
    return min(1.0, math.sqrt(epsilon / 10.0))


def gaussian_scales(epsilon: float, delta: float = 1e-5) -> tuple[float, float]:
    """Gaussian scales (sigma_Y, sigma_Z) with sigma_Y^2 = 32 ln(1.25/delta)/eps^2
    and sigma_Z^2 = 8 ln(1.25/delta)/eps^2, covering sensitivities 2 and 1."""
    if epsilon <= 0.0 or not 0.0 < delta < 1.0:
        raise ValueError("need epsilon > 0 and delta in (0,1)")
    c = math.log(1.25 / delta)
    return math.sqrt(32.0 * c) / epsilon, math.sqrt(8.0 * c) / epsilon


@dataclass(frozen=True)
class TestConfig:
    """Full configuration of one sequential test instance.

    `gamma=None` resolves to the default allocation rule for private
    variants; the classical variant ignores gamma. `noise_override` and
    `zero_correction` are instrumentation hooks that replace the variant's
    noise with another family or drop the correction while keeping the
    remaining calibration intact.
    """

    hypotheses: HypothesisPair
    alpha: float
    beta: float
    variant: Variant
    gamma: float | None = None
    correction: CorrectionParams = CorrectionParams()
    horizon: int = 1_000_000
    seed: int = 0
    noise_override: NoiseSpec | None = None
    zero_correction: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0 or not 0.0 < self.beta < 1.0:
            raise ValueError("alpha and beta must lie in (0,1)")
        if self.gamma is not None and not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0,1)")
        if self.horizon < 1:
            raise ValueError("horizon must be a positive integer")

def resolved_gamma(cfg: "TestConfig") -> float | None:
    """The error allocation a run will actually use; None for classical."""
    if isinstance(cfg.variant, Classical):
        return None
    return _resolve(cfg).gamma


@dataclass(frozen=True)
class TestOutcome:
    """Stopping time, decision (absent if the horizon was exhausted), and
    bookkeeping: observations consumed and, for the subsampled variant, the
    included count M_tau."""

    tau: int
    decision: int | None
    exhausted: bool
    samples_consumed: int
    included_count: int | None = None


class _BitReader:
    """Chunked access to a stream of bits with value validation."""

    def __init__(self, source: Iterable[int]):
        self._take = getattr(source, "take", None)
        self._it = iter(source) if self._take is None else None

    def take(self, k: int) -> np.ndarray:
        if self._take is not None:
            bits = np.asarray(self._take(k))
        else:
            bits = np.fromiter(itertools.islice(self._it, k), dtype=np.float64, count=-1)
        if bits.size and not np.all((bits == 0) | (bits == 1)):
            bad = bits[(bits != 0) & (bits != 1)][0]
            raise ValueError(f"observations must be bits in {{0,1}}, got {bad!r}")
        return bits.astype(np.int64, copy=False)


@dataclass(frozen=True)
class _Resolved:
    """Per-run constants derived from a TestConfig."""

    spec: NoiseSpec
    corr_family: NoiseFamily
    params: CorrectionParams
    gamma: float
    log_b: float  # log(1/(gamma*beta)), or log(1/beta) for classical
    log_a: float
    delta_lo: float  # (1-gamma)*beta
    delta_hi: float
    rate: float


def _resolve(cfg: TestConfig) -> _Resolved:
    v = cfg.variant
    if isinstance(v, Classical):
        spec = NoiseSpec.zero()
        corr_family = NoiseFamily.ZERO
        params = cfg.correction
        gamma = 1.0
        rate = 1.0
    elif isinstance(v, Laplace) or isinstance(v, LaplaceSub):
        spec = NoiseSpec.laplace_default(v.epsilon)
        corr_family = NoiseFamily.LAPLACE
        params = replace(cfg.correction, epsilon=v.epsilon)
        gamma = cfg.gamma if cfg.gamma is not None else default_gamma(v.epsilon)
        rate = v.rate if isinstance(v, LaplaceSub) else 1.0
    elif isinstance(v, Gaussian):
        spec = NoiseSpec.gaussian(v.sigma_y, v.sigma_z)
        corr_family = NoiseFamily.GAUSSIAN
        params = replace(cfg.correction, sigma_sum_sq=v.sigma_y**2 + v.sigma_z**2)
        if cfg.gamma is None:
            raise ValueError("Gaussian variant needs an explicit gamma")
        gamma = cfg.gamma
        rate = 1.0
    else:
        raise TypeError(f"unknown variant {v!r}")
    if cfg.noise_override is not None:
        spec = cfg.noise_override
    if cfg.zero_correction:
        corr_family = NoiseFamily.ZERO
    if isinstance(v, Classical):
        log_b = math.log(1.0 / cfg.beta)
        log_a = math.log(1.0 / cfg.alpha)
        delta_lo = delta_hi = 0.5  # unused: correction family is ZERO
    else:
        log_b = math.log(1.0 / (gamma * cfg.beta))
        log_a = math.log(1.0 / (gamma * cfg.alpha))
        delta_lo = (1.0 - gamma) * cfg.beta
        delta_hi = (1.0 - gamma) * cfg.alpha
    return _Resolved(spec, corr_family, params, gamma, log_b, log_a, delta_lo, delta_hi, rate)


def _thresholds_vec(cfg, res, n, m=None):
    """Lower/upper thresholds over an array of step counts.

    `m` is the divisor of the budget terms (the included count for the
    subsampled rule); it defaults to n. Entries with m = 0 yield -inf/+inf
    so that no comparison can fire there.
    """
    hyp = cfg.hypotheses
    n = np.asarray(n, dtype=np.float64)
    m = n if m is None else np.asarray(m, dtype=np.float64)
    with np.errstate(divide="ignore"):
        inv_m = np.where(m > 0, 1.0 / np.where(m > 0, m, 1.0), np.inf)
    c_lo = res.rate * correction_vec(res.params, res.corr_family, n, res.delta_lo) \
        if res.corr_family is not NoiseFamily.ZERO else np.zeros_like(n)
    c_hi = res.rate * correction_vec(res.params, res.corr_family, n, res.delta_hi) \
        if res.corr_family is not NoiseFamily.ZERO else np.zeros_like(n)
    lower = hyp.mu0 + (hyp.kl01 - res.log_b * inv_m) / hyp.dtheta - c_lo
    upper = hyp.mu1 - (hyp.kl10 - res.log_a * inv_m) / hyp.dtheta + c_hi
    return lower, upper


def threshold_lower(cfg: TestConfig, n: int, included: int | None = None) -> float:
    """Lower stopping threshold at step n (budget divisor `included` for the
    subsampled rule; defaults to n)."""
    res = _resolve(cfg)
    m = None if included is None else np.array([float(included)])
    return float(_thresholds_vec(cfg, res, np.array([float(n)]), m)[0][0])


def threshold_upper(cfg: TestConfig, n: int, included: int | None = None) -> float:
    """Upper stopping threshold at step n."""
    res = _resolve(cfg)
    m = None if included is None else np.array([float(included)])
    return float(_thresholds_vec(cfg, res, np.array([float(n)]), m)[1][0])


def run_test(cfg: TestConfig, observations: Iterable[int]) -> TestOutcome:
    """Run the test on a bit stream until a decision or the horizon.

    Z is drawn once up front; each step consumes one observation and one
    fresh Y. The lower comparison is evaluated before the upper one.
    Observation, Y, and Z streams derive from cfg.seed independently, so
    identical (cfg, stream) inputs replay the identical outcome.

    The reader buffers ahead of the stopping point for speed; treat the
    observation iterable as owned by this run and do not reuse it.
    """
    if isinstance(cfg.variant, LaplaceSub):
        return run_test_subsampled(cfg, observations)
    res = _resolve(cfg)
    reader = _BitReader(observations)
    rng_y = derive(StreamKey(cfg.seed, substream=Substream.NOISE_Y))
    rng_z = derive(StreamKey(cfg.seed, substream=Substream.NOISE_Z))
    z = float(sample_z(res.spec, rng_z))

    n_done = 0
    xsum = 0
    chunk = _CHUNK_START
    while n_done < cfg.horizon:
        want = min(chunk, cfg.horizon - n_done)
        bits = reader.take(want)
        got = bits.size
        if got:
            n = n_done + 1 + np.arange(got, dtype=np.float64)
            csum = xsum + np.cumsum(bits)
            xbar = csum / n
            y = np.atleast_1d(sample_y(res.spec, rng_y, got))
            stat = xbar + y / n
            lower, upper = _thresholds_vec(cfg, res, n)
            cond0 = stat <= lower - z / n
            cond1 = stat >= upper + z / n
            fired = cond0 | cond1
            if fired.any():
                i = int(np.argmax(fired))
                tau = n_done + i + 1
                return TestOutcome(
                    tau=tau,
                    decision=0 if cond0[i] else 1,
                    exhausted=False,
                    samples_consumed=tau,
                )
            n_done += got
            xsum = int(csum[-1])
        if got < want:
            raise StreamExhaustedError(
                f"observation stream ended after {n_done} bits, before the horizon"
            )
        chunk = min(chunk * 2, _CHUNK_CAP)
    return TestOutcome(cfg.horizon, None, True, cfg.horizon)


def run_test_subsampled(cfg: TestConfig, observations: Iterable[int]) -> TestOutcome:
    """Run the subsampled variant: keep each observation with probability r,
    track the included sum S_n and count M_n, compare S_n/M_n + r*Y_n/n
    against thresholds whose budget term divides by M_n and whose noise and
    correction terms carry the factor r. Steps with M_n = 0 perform no
    comparison. With r = 1 the trajectory coincides with the plain Laplace
    variant under the same seed.
    """
    if not isinstance(cfg.variant, LaplaceSub):
        raise TypeError("run_test_subsampled requires a LaplaceSub variant")
    rate = cfg.variant.rate
    res = _resolve(cfg)
    reader = _BitReader(observations)
    rng_y = derive(StreamKey(cfg.seed, substream=Substream.NOISE_Y))
    rng_z = derive(StreamKey(cfg.seed, substream=Substream.NOISE_Z))
    rng_b = derive(StreamKey(cfg.seed, substream=Substream.SUBSAMPLE))
    z = float(sample_z(res.spec, rng_z))

    n_done = 0
    s_carry = 0
    m_carry = 0
    chunk = _CHUNK_START
    while n_done < cfg.horizon:
        want = min(chunk, cfg.horizon - n_done)
        bits = reader.take(want)
        got = bits.size
        if got:
            n = n_done + 1 + np.arange(got, dtype=np.float64)
            include = rng_b.random(got) < rate
            s = s_carry + np.cumsum(bits * include)
            m = m_carry + np.cumsum(include)
            valid = m > 0
            xbar_r = np.divide(s, m, out=np.zeros(got), where=valid)
            y = np.atleast_1d(sample_y(res.spec, rng_y, got))
            stat = xbar_r + rate * y / n
            lower, upper = _thresholds_vec(cfg, res, n, m)
            cond0 = valid & (stat <= lower - rate * z / n)
            cond1 = valid & (stat >= upper + rate * z / n)
            fired = cond0 | cond1
            if fired.any():
                i = int(np.argmax(fired))
                tau = n_done + i + 1
                return TestOutcome(
                    tau=tau,
                    decision=0 if cond0[i] else 1,
                    exhausted=False,
                    samples_consumed=tau,
                    included_count=int(m[i]),
                )
            n_done += got
            s_carry = int(s[-1])
            m_carry = int(m[-1])
        if got < want:
            raise StreamExhaustedError(
                f"observation stream ended after {n_done} bits, before the horizon"
            )
        chunk = min(chunk * 2, _CHUNK_CAP)
    return TestOutcome(cfg.horizon, None, True, cfg.horizon, included_count=m_carry)
