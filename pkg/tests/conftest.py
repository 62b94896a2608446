import math

import mpmath as mp
import pytest
from scipy import integrate, special

from gsn_option.analysis import BENCHMARK


@pytest.fixture
def bench():
    return BENCHMARK


def mp_bvn(x, y, rho, dps=30):
    """Phi2(x, y; rho) as a one-dimensional mpmath integral with breakpoints at the kink."""
    with mp.workdps(dps):
        x, y, rho = mp.mpf(x), mp.mpf(y), mp.mpf(rho)
        s = mp.sqrt((1 - rho) * (1 + rho))
        f = lambda u: mp.npdf(u) * mp.ncdf((y - rho * u) / s)
        step = y / rho if rho != 0 else mp.mpf(0)
        pts = sorted({p for p in (step - 5 * s, step, step + 5 * s, mp.mpf(0)) if p < x})
        return float(mp.quad(f, [-mp.inf, *pts, x]))


def bvn_dblquad(x, y, rho):
    """Phi2 by 2-D adaptive quadrature of the density in whitened coordinates.

    (u, v) are independent standard normals with X = u and
    Y = rho u + sqrt(1 - rho^2) v, so the region is u <= x,
    v <= (y - rho u)/sqrt(1 - rho^2).
    """
    s = math.sqrt((1 - rho) * (1 + rho))
    dens = lambda v, u: math.exp(-0.5 * (u * u + v * v)) / (2 * math.pi)
    lo = -40.0
    val, _ = integrate.dblquad(
        dens, lo, x, lambda u: -40.0, lambda u: (y - rho * u) / s, epsabs=1e-14, epsrel=1e-13
    )
    return val


def gsn_pdf_ref(x, lam, gam):
    """Density phi(x) Phi(lam x + gam) / Phi(gam / sqrt(1 + lam^2)) from scipy primitives."""
    c = math.sqrt(1.0 + lam * lam)
    return math.exp(-0.5 * x * x + special.log_ndtr(lam * x + gam) - special.log_ndtr(gam / c)) / math.sqrt(2 * math.pi)


def gsn_quad(f, lam, gam, a=-math.inf, b=math.inf):
    """Integral of f(x) * pdf(x) over (a, b)."""
    g = lambda x: f(x) * gsn_pdf_ref(x, lam, gam)
    lo, hi = max(a, -40.0), min(b, 40.0)
    pts = [p for p in (-2.0, 0.0, 2.0) if lo < p < hi]
    val, _ = integrate.quad(g, lo, hi, points=pts or None, epsabs=0, epsrel=1e-13, limit=400)
    return val


def risk_neutral_drift_ref(m, lam, gam):
    c = math.sqrt(1.0 + lam * lam)
    st = m.sigma * math.sqrt(m.t)
    corr = special.log_ndtr((gam + lam * st) / c) - special.log_ndtr(gam / c)
    return m.r - 0.5 * m.sigma**2 - corr / m.t


def call_quad(m, lam, gam):
    """e^{-rt} * integral of (S0 exp(mu* t + sigma sqrt(t) x) - K)^+ pdf(x) dx."""
    mu = risk_neutral_drift_ref(m, lam, gam)
    st = m.sigma * math.sqrt(m.t)
    x0 = (math.log(m.k / m.s0) - mu * m.t) / st
    payoff = lambda x: m.s0 * math.exp(mu * m.t + st * x) - m.k
    top = max(x0, 0.0) + 40.0
    val, _ = integrate.quad(
        lambda x: payoff(x) * gsn_pdf_ref(x, lam, gam), x0, top, epsabs=0, epsrel=1e-13, limit=400
    )
    return math.exp(-m.r * m.t) * val
