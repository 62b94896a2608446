"""
Accuracy far from the money
===========================

Out-of-the-money calls are the difference of two small terms. Both are
computed as conditional normal probabilities that keep their relative accuracy,
which this script checks against direct numerical integration.
"""

import math

from scipy import integrate, special

from gsn_option import MarketParams, call_price, mu_star


def by_quadrature(m, lam, gam):
    """Discounted expected payoff integrated against the skew-normal density."""
    c = math.sqrt(1 + lam * lam)
    st = m.sigma * math.sqrt(m.t)
    mu = mu_star(m, (lam, gam))
    lo = (math.log(m.k / m.s0) - mu * m.t) / st

    def f(x):
        dens = math.exp(-0.5 * x * x + special.log_ndtr(lam * x + gam) - special.log_ndtr(gam / c))
        return (m.s0 * math.exp(mu * m.t + st * x) - m.k) * dens / math.sqrt(2 * math.pi)

    return math.exp(-m.r * m.t) * integrate.quad(f, lo, lo + 40, epsabs=0, epsrel=1e-13, limit=400)[0]


# %%
# Strikes from at the money to absurdly far out
# ---------------------------------------------

for k in (100, 200, 400, 800):
    m = MarketParams.from_variance(100, k, 0.1, 0.4, 0.25)
    c = call_price(m, (-2.0, 2.0)).call
    q = by_quadrature(m, -2.0, 2.0)
    print(f"K = {k:>3}: closed form {c:.10e}, quadrature {q:.10e}, relative gap {abs(c - q) / q:.1e}")

# %%
# Very long maturities
# --------------------
#
# As t grows the call approaches the spot price even when the normalising
# CDF of the skew term underflows.

for t in (1e2, 1e3, 1e4):
    m = MarketParams.from_variance(100, 100, 0.1, 0.4, t)
    print(f"t = {t:>7g}: call = {call_price(m, (-2.0, -2.0)).call:.10f}")
