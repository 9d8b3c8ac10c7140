"""Bernoulli exponential-family arithmetic.

Walks the two coordinate systems the tests are built on: success
probabilities and natural parameters (log-odds). The KL divergence has a
closed form in each, and the stopping thresholds later divide by both the
KL and the natural-parameter gap.
"""

import numpy as np

from dpsprt import (
    HypothesisPair,
    kl_bernoulli,
    kl_exponential_form,
    log_partition,
    natural_param,
    tv_bernoulli,
)

hyp = HypothesisPair.of(0.3, 0.7)

print("instance p0 = 0.3, p1 = 0.7")
print(f"  natural parameters : theta0 = {hyp.theta0:+.6f}, theta1 = {hyp.theta1:+.6f}")
print(f"  log-partition b(.) : b(theta0) = {log_partition(hyp.theta0):.6f}, "
      f"b(theta1) = {log_partition(hyp.theta1):.6f}")
print(f"  KL(p0 -> p1)       : {hyp.kl01:.6f}")
print(f"  KL(p1 -> p0)       : {hyp.kl10:.6f}")
print(f"  total variation    : {hyp.tv:.3f}")

print("\nmean-space and natural-parameter KL agree everywhere:")
probs = np.linspace(0.05, 0.95, 7)
worst = 0.0
for p in probs:
    for q in probs:
        gap = abs(kl_bernoulli(p, q) - kl_exponential_form(natural_param(p), natural_param(q)))
        worst = max(worst, gap)
print(f"  max |difference| over a 7x7 grid = {worst:.2e}")

print("\nPinsker's inequality (KL >= 2 (p - q)^2) on the same grid:")
margin = min(
    kl_bernoulli(p, q) - 2 * (p - q) ** 2 for p in probs for q in probs if p != q
)
print(f"  smallest slack = {margin:.4f} (nonnegative)")

print("\nTV is linear in the gap, KL is not:")
for q in (0.4, 0.5, 0.6, 0.7):
    print(f"  p=0.3 vs q={q}: tv = {tv_bernoulli(0.3, q):.2f}, kl = {kl_bernoulli(0.3, q):.4f}")
