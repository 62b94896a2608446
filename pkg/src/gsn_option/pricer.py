"""Closed-form European option prices under a generalized geometric skew Brownian motion.

The asset follows S(t) = S(0) exp(mu t + sigma sqrt(t) Z) with Z ~ SN(lambda, gamma).
Prices do not depend on the physical drift mu, so no function here takes it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidParameterError, NumericalRegimeError
from .gsn_dist import GsnDistribution, SkewParams
from .normal_kernels import (
    bvn_conditional_cdf,
    owen_t,
    std_normal_cdf,
    std_normal_log_cdf,
    std_normal_sf,
)

__all__ = [
    "Method",
    "MarketParams",
    "PriceQuote",
    "mu_star",
    "w_statistic",
    "call_price",
    "put_price",
    "black_scholes_price",
    "corrado_su_price",
    "call_value",
]


class Method(str, enum.Enum):
    GENERAL = "general"
    BLACK_SCHOLES = "black-scholes"
    CORRADO_SU = "corrado-su"


@dataclass(frozen=True)
class MarketParams:
    """Spot ``s0``, strike ``k``, riskless rate ``r``, volatility ``sigma`` and maturity ``t``."""

    s0: float
    k: float
    r: float
    sigma: float
    t: float

    def __post_init__(self):
        for name in ("s0", "k", "r", "sigma", "t"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise InvalidParameterError(f"{name} must be finite, got {val}")
            object.__setattr__(self, name, val)
        for name in ("s0", "k", "sigma", "t"):
            if getattr(self, name) <= 0:
                raise InvalidParameterError(f"{name} must be > 0, got {getattr(self, name)}")

    @classmethod
    def from_variance(cls, s0, k, r, variance, t):
        """Build from the return variance sigma^2 instead of sigma."""
        if not variance > 0:
            raise InvalidParameterError(f"variance must be > 0, got {variance}")
        return cls(s0, k, r, math.sqrt(variance), t)

    @property
    def vol_sqrt_t(self) -> float:
        return self.sigma * math.sqrt(self.t)

    @property
    def discount(self) -> float:
        return math.exp(-self.r * self.t)


@dataclass(frozen=True)
class PriceQuote:
    call: float
    put: float
    w: float
    mu_star: float
    method: Method
    market: MarketParams
    skew: SkewParams


def _as_skew(s) -> SkewParams:
    if isinstance(s, SkewParams):
        return s
    lam, gam = s
    return SkewParams(lam, gam)


def mu_star(m: MarketParams, s) -> float:
    """Risk-neutral drift r - sigma^2/2 - ln[M(sigma sqrt t) e^{-sigma^2 t/2}] / t."""
    s = _as_skew(s)
    corr = GsnDistribution.from_params(s).log_mgf_correction(m.vol_sqrt_t)
    return m.r - 0.5 * m.sigma**2 - corr / m.t


def w_statistic(m: MarketParams, s) -> float:
    """Moneyness statistic w; reduces to Black-Scholes d1 when lambda = 0."""
    s = _as_skew(s)
    corr = GsnDistribution.from_params(s).log_mgf_correction(m.vol_sqrt_t)
    return (math.log(m.s0 / m.k) + (m.r + 0.5 * m.sigma**2) * m.t - corr) / m.vol_sqrt_t


def _finite(value, term, m, s):
    if not math.isfinite(value):
        raise NumericalRegimeError(f"{term} evaluated to {value} at {m}, {s}")
    return value


def call_price(m: MarketParams, s, *, _flip_correlation: bool = False) -> PriceQuote:
    """European call price and the matching put by parity.

    C = S0 {1 - Phi2(g, -w; -lam/c) / Phi(g)} - e^{-rt} K P(Z > sigma sqrt(t) - w)

    with c = sqrt(1 + lam^2) and g = (lam sigma sqrt(t) + gam)/c. The braced term
    is evaluated as the conditional probability P(B <= w | A <= g) under
    correlation lam/c, which stays accurate when Phi(g) underflows.

    Parameters
    ----------
    m : MarketParams
    s : SkewParams or (lam, gam)
    """
    s = _as_skew(s)
    dist = GsnDistribution.from_params(s)
    st = m.vol_sqrt_t
    g = (s.lam * st + s.gam) / s.scale
    rho = -s.lam / s.scale
    if _flip_correlation:
        rho = -rho
    w = w_statistic(m, s)

    asset_leg = _finite(m.s0 * bvn_conditional_cdf(g, w, -rho), "asset term S0*(1 - Phi2/Phi)", m, s)
    strike_leg = _finite(m.discount * m.k * dist.survival(st - w), "strike term e^{-rt} K survival", m, s)
    call = asset_leg - strike_leg
    return PriceQuote(
        call=call,
        put=call - m.s0 + m.k * m.discount,
        w=w,
        mu_star=mu_star(m, s),
        method=Method.GENERAL,
        market=m,
        skew=s,
    )


def put_price(m: MarketParams, s) -> float:
    """European put from put-call parity, P = C - S0 + K e^{-rt}."""
    return call_price(m, s).put


def black_scholes_price(m: MarketParams) -> float:
    """Black-Scholes call S0 Phi(w1) - e^{-rt} K Phi(w1 - sigma sqrt t)."""
    st = m.vol_sqrt_t
    w1 = (math.log(m.s0 / m.k) + (m.r + 0.5 * m.sigma**2) * m.t) / st
    return m.s0 * std_normal_cdf(w1) - m.discount * m.k * std_normal_cdf(w1 - st)


def corrado_su_price(m: MarketParams, lam: float) -> float:
    """Call price under Azzalini's skew normal (gamma = 0).

    The strike term uses the skew-normal survival Q(x) + 2 T(x, lam) through
    Owen's T function instead of the bivariate normal.
    """
    lam = float(lam)
    scale = math.sqrt(1.0 + lam * lam)
    st = m.vol_sqrt_t
    g = lam * st / scale
    w2 = (math.log(m.s0 / m.k) + (m.r + 0.5 * m.sigma**2) * m.t - (math.log(2.0) + std_normal_log_cdf(g))) / st
    asset_leg = m.s0 * bvn_conditional_cdf(g, w2, lam / scale)
    x = st - w2
    sn_survival = std_normal_sf(x) + 2.0 * owen_t(x, lam)
    return asset_leg - m.discount * m.k * sn_survival


def call_value(s0, k, r, sigma, t, lam=0.0, gam=0.0) -> float:
    """Call price that also accepts ``t = 0``, where it returns max(s0 - k, 0)."""
    if t == 0:
        return max(float(s0) - float(k), 0.0)
    return call_price(MarketParams(s0, k, r, sigma, t), SkewParams(lam, gam)).call
