"""Theoretical sample-complexity bounds for the private tests.

The finite-sample upper bound hinges on the critical time N: the first
step count at which the budget term plus twice the correction fits under
half the normalized KL gap. The expected stopping time is then at most a
constant tail plus N. Closed forms bound N itself for the Laplace and
Gaussian corrections via a log fixed-point inequality, and an
information-theoretic lower bound holds for any private test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .exp_family import HypothesisPair, kl_bernoulli
from .noise import CorrectionParams, NoiseFamily, correction, riemann_zeta

__all__ = [
    "BoundReport",
    "BoundOverflowError",
    "critical_n",
    "upper_bound_expected_tau",
    "laplace_closed_upper",
    "gaussian_closed_upper",
    "lemma19",
    "lower_bound",
    "build_report",
]

_N_GUARD = 10**9

Truth = Literal["h0", "h1"]


class BoundOverflowError(OverflowError):
    """The defining inequality is unsatisfiable below the search guard,
    signaling a degenerate instance."""


def _direction(hyp: HypothesisPair, truth: Truth) -> float:
    if truth == "h0":
        return hyp.kl01
    if truth == "h1":
        return hyp.kl10
    raise ValueError(f"truth must be 'h0' or 'h1', got {truth!r}")


def critical_n(
    hyp: HypothesisPair,
    truth: Truth,
    delta: float,
    gamma: float,
    params: CorrectionParams,
    family: NoiseFamily,
) -> int:
    """Smallest integer n with

        log(1/(delta*gamma))/(n*dtheta) + 2*C(n, (1-gamma)*delta)
            <= KL/(2*dtheta)

    found by doubling then bisection, with a final linear confirmation
    over a +/-2 window. Exact integer, not an approximation.
    """
    if not 0.0 < delta < 1.0 or not 0.0 < gamma < 1.0:
        raise ValueError("delta and gamma must lie in (0,1)")
    kl = _direction(hyp, truth)
    dtheta = hyp.dtheta
    budget = math.log(1.0 / (delta * gamma))
    target = 0.5 * kl / dtheta

    def satisfied(n: int) -> bool:
        lhs = budget / (n * dtheta)
        if family is not NoiseFamily.ZERO:
            lhs += 2.0 * correction(params, family, n, (1.0 - gamma) * delta)
        return lhs <= target

    hi = 1
    while not satisfied(hi):
        hi *= 2
        if hi > _N_GUARD:
            raise BoundOverflowError(
                f"critical time exceeds {_N_GUARD}; degenerate instance"
            )
    lo = hi // 2  # satisfied(lo) is False (or lo == 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if satisfied(mid):
            hi = mid
        else:
            lo = mid
    # the left side is only eventually monotone; confirm around the candidate
    for n in range(max(1, hi - 2), hi + 3):
        if satisfied(n) and (n == 1 or not satisfied(n - 1)):
            return n
    return hi


def _geometric_tail(hyp: HypothesisPair) -> float:
    return 1.0 / (1.0 - math.exp(-(hyp.tv**4) / (2.0 * hyp.dtheta**2)))


def upper_bound_expected_tau(
    hyp: HypothesisPair,
    truth: Truth,
    alpha: float,
    beta: float,
    gamma: float,
    params: CorrectionParams,
    family: NoiseFamily,
) -> float:
    """Finite-sample upper bound on the expected stopping time:

        1 + (1-gamma)*delta + 1/(1 - exp(-TV^4 / (2 dtheta^2))) + N

    with delta = beta under h0 and alpha under h1.
    """
    delta = beta if truth == "h0" else alpha
    n_crit = critical_n(hyp, truth, delta, gamma, params, family)
    return 1.0 + (1.0 - gamma) * delta + _geometric_tail(hyp) + n_crit


def lemma19(b: float, c: float) -> float:
    """For B, C >= 1: every k with k <= B log k + C satisfies
    k <= B log(B^2 + 2C) + C; returns that dominating value."""
    if b < 1.0 or c < 1.0:
        raise ValueError("lemma19 requires B >= 1 and C >= 1")
    return b * math.log(b * b + 2.0 * c) + c


def laplace_closed_upper(
    hyp: HypothesisPair,
    delta: float,
    gamma: float,
    epsilon: float,
    s: float = 2.0,
    truth: Truth = "h0",
) -> float:
    """Closed-form upper bound on the expected stopping time of the Laplace
    variant (error target `delta` on the stopped side):

        2 log(1/(gamma d))/KL + 24 dtheta log(zeta(s)/(2(1-gamma)d))/(eps KL)
        + B log(B^2 + 2*(first) + 2*(second)) + constant tail,

    with B = 24 s dtheta / (KL eps).
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    kl = _direction(hyp, truth)
    dtheta = hyp.dtheta
    zeta_s = riemann_zeta(s)
    t1 = 2.0 * math.log(1.0 / (gamma * delta)) / kl
    t2 = 24.0 * dtheta * math.log(zeta_s / (2.0 * (1.0 - gamma) * delta)) / (epsilon * kl)
    b_coef = 24.0 * s * dtheta / (kl * epsilon)
    t3 = b_coef * math.log(b_coef * b_coef + 2.0 * t1 + 2.0 * t2)
    tail = 1.0 + (1.0 - gamma) * delta + _geometric_tail(hyp)
    return t1 + t2 + t3 + tail


def gaussian_closed_upper(
    hyp: HypothesisPair,
    delta: float,
    gamma: float,
    sigma_y: float,
    sigma_z: float,
    s: float = 2.0,
    truth: Truth = "h0",
) -> float:
    """Closed-form upper bound for the Gaussian variant: the maximum of the
    noise-free branch 4 log(1/(gamma d))/KL and the noise branch

        8 sqrt(sigma_y^2+sigma_z^2)/c * sqrt(s log((64 s)^2 ssum^2/c^4
            + 256 ssum L / c^2) + 2 L)

    with c = KL/dtheta and L = log(zeta(s)/(2(1-gamma)d)), plus the
    constant tail.
    """
    kl = _direction(hyp, truth)
    c = kl / hyp.dtheta
    ssum = sigma_y**2 + sigma_z**2
    zeta_s = riemann_zeta(s)
    branch1 = 4.0 * math.log(1.0 / (gamma * delta)) / kl
    if ssum > 0.0:
        big_l = math.log(zeta_s / (2.0 * (1.0 - gamma) * delta))
        inner = (64.0 * s) ** 2 * ssum**2 / c**4 + 256.0 * ssum * big_l / c**2
        arg = s * math.log(inner) + 2.0 * big_l
        branch2 = 8.0 * math.sqrt(ssum) / c * math.sqrt(max(arg, 0.0))
    else:
        branch2 = 0.0
    tail = 1.0 + (1.0 - gamma) * delta + _geometric_tail(hyp)
    return max(branch1, branch2) + tail


def lower_bound(
    hyp: HypothesisPair,
    alpha: float,
    beta: float,
    epsilon: float | None = None,
) -> tuple[float, float]:
    """Lower bounds on the expected stopping time of any private test with
    type I error <= alpha and type II error <= beta:

        E_h0[tau] >= kl(alpha, 1-beta) / min(KL01, eps*TV)
        E_h1[tau] >= kl(beta, 1-alpha) / min(KL10, eps*TV)

    `epsilon=None` gives the non-private bound (the min saturates at KL).
    """
    if alpha + beta >= 1.0:
        raise ValueError("need alpha + beta < 1")
    priv = math.inf if epsilon is None else epsilon * hyp.tv
    lo0 = kl_bernoulli(alpha, 1.0 - beta) / min(hyp.kl01, priv)
    lo1 = kl_bernoulli(beta, 1.0 - alpha) / min(hyp.kl10, priv)
    return lo0, lo1


@dataclass(frozen=True)
class BoundReport:
    """All bounds for one instance, plus an echo of the inputs. Upper and
    closed-form entries are absent without a privacy parameter."""

    lower_h0: float
    lower_h1: float
    upper_h0: float | None
    upper_h1: float | None
    closed_upper_h0: float | None
    closed_upper_h1: float | None
    gamma_used: float
    epsilon_used: float | None
    s_used: float

    def __post_init__(self) -> None:
        for lo, up in ((self.lower_h0, self.upper_h0), (self.lower_h1, self.upper_h1)):
            if up is not None and math.isfinite(up) and lo > up:
                raise ValueError("lower bound exceeds upper bound; inputs inconsistent")


def build_report(
    hyp: HypothesisPair,
    alpha: float,
    beta: float,
    gamma: float,
    epsilon: float | None,
    s: float = 2.0,
    kappa: float = 1.0,
) -> BoundReport:
    """Evaluate the Laplace-variant bounds for one instance."""
    lo0, lo1 = lower_bound(hyp, alpha, beta, epsilon)
    if epsilon is None:
        return BoundReport(lo0, lo1, None, None, None, None, gamma, None, s)
    params = CorrectionParams(s=s, epsilon=epsilon, kappa=kappa)
    up0 = upper_bound_expected_tau(hyp, "h0", alpha, beta, gamma, params, NoiseFamily.LAPLACE)
    up1 = upper_bound_expected_tau(hyp, "h1", alpha, beta, gamma, params, NoiseFamily.LAPLACE)
    cu0 = laplace_closed_upper(hyp, beta, gamma, epsilon, s, "h0")
    cu1 = laplace_closed_upper(hyp, alpha, gamma, epsilon, s, "h1")
    return BoundReport(lo0, lo1, up0, up1, cu0, cu1, gamma, epsilon, s)
