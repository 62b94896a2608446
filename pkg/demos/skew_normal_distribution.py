"""
The generalized skew normal law
===============================

A tour of ``GsnDistribution``: density, distribution function, moment
generating function and exact sampling.
"""

# %%
# Density and distribution function
# ---------------------------------

import numpy as np
from scipy import integrate, stats

from gsn_option import GsnDistribution

d = GsnDistribution(lam=2.0, gam=-1.0)
xs = np.linspace(-3, 3, 7)
print("pdf:", np.round(d.pdf(xs), 6))
print("cdf:", np.round(d.cdf(xs), 6))
print("integral of pdf:", integrate.quad(d.pdf, -np.inf, np.inf)[0])

# %%
# The survival function is computed directly, so far tails keep their digits
# instead of collapsing to ``1 - 1``.

for x in (4.0, 8.0, 12.0):
    print(f"P(Z > {x:>4}) = {d.survival(x):.6e}")

# %%
# Moment generating function
# --------------------------
#
# The MGF is exp(a^2/2) times a ratio of normal CDFs; its log correction is
# what enters the risk-neutral drift.

a = 0.6
print("mgf:", d.mgf(a), " log correction:", d.log_mgf_correction(a))
print("truncated to [-1, 2]:", d.truncated_mgf(a, -1.0, 2.0))

# %%
# Sampling
# --------
#
# Draws come from exact rejection: keep X when an independent normal Y lies
# below lam * X + gam. The caller owns the random generator.

rng = np.random.default_rng(7)
z = d.sample(rng, 100_000)
print("acceptance probability:", d.acceptance_probability)
print("KS statistic:", stats.kstest(z, d.cdf).statistic)
