"""The generalized skew-normal distribution SN(lambda, gamma).

Density
    phi(x) Phi(lambda x + gamma) / Phi(gamma / sqrt(1 + lambda^2))

A variable Z ~ SN(lambda, gamma) is X conditioned on W <= gamma/sqrt(1+lambda^2),
where (X, W) is standard bivariate normal with correlation
-lambda/sqrt(1+lambda^2). Every closed form below comes from that picture.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import DomainError, InvalidParameterError, SingularTruncationError
from .normal_kernels import (
    _LOG_SQRT_2PI,
    INV_SQRT_2PI,
    bvn_conditional_cdf,
    std_normal_cdf,
    std_normal_log_cdf,
)

__all__ = ["SkewParams", "GsnDistribution"]

# Below this acceptance probability rejection sampling is abandoned.
MIN_ACCEPTANCE = 1e-12
_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class SkewParams:
    """Shape pair (lambda, gamma) of SN(lambda, gamma); both finite."""

    lam: float = 0.0
    gam: float = 0.0
    scale: float = field(init=False, repr=False, compare=False)
    delta0: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        lam, gam = float(self.lam), float(self.gam)
        if not (math.isfinite(lam) and math.isfinite(gam)):
            raise InvalidParameterError(f"skew parameters must be finite, got ({self.lam}, {self.gam})")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "gam", gam)
        object.__setattr__(self, "scale", math.sqrt(1.0 + lam * lam))
        object.__setattr__(self, "delta0", gam / self.scale)


class GsnDistribution:
    """SN(lambda, gamma) with density, CDF, survival, MGF and sampling.

    Parameters
    ----------
    lam, gam : float
        Shape parameters. ``lam = 0`` gives the standard normal for any ``gam``;
        ``gam = 0`` gives Azzalini's skew normal.

    Examples
    --------
    >>> d = GsnDistribution(1.0, 0.5)
    >>> round(d.cdf(float("inf")), 12)
    1.0
    """

    def __init__(self, lam: float = 0.0, gam: float = 0.0):
        self.params = SkewParams(lam, gam)
        p = self.params
        # corr(X, W) in the conditioning representation
        self.rho = -p.lam / p.scale
        self.log_norm_const = std_normal_log_cdf(p.delta0)
        self.norm_const = std_normal_cdf(p.delta0)

    @classmethod
    def from_params(cls, params: SkewParams) -> GsnDistribution:
        return cls(params.lam, params.gam)

    def __repr__(self):
        return f"GsnDistribution(lam={self.params.lam!r}, gam={self.params.gam!r})"

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def gam(self) -> float:
        return self.params.gam

    @property
    def acceptance_probability(self) -> float:
        """P(Y <= lam X + gam) for independent standard normal proposals."""
        return self.norm_const

    def _check(self, x):
        arr = np.asarray(x, dtype=float)
        if np.isnan(arr).any():
            raise DomainError("NaN argument")
        return arr

    def pdf(self, x):
        """Density at ``x``; evaluated in log space so extreme gamma cannot underflow the normaliser."""
        arr = self._check(x)
        skew = np.asarray(std_normal_log_cdf(self.lam * arr + self.gam)) - self.log_norm_const
        out = INV_SQRT_2PI * np.exp(-0.5 * arr * arr + skew)
        return float(out) if out.ndim == 0 else out

    def logpdf(self, x):
        arr = self._check(x)
        out = -0.5 * arr * arr - _LOG_SQRT_2PI + np.asarray(std_normal_log_cdf(self.lam * arr + self.gam))
        out = out - self.log_norm_const
        return float(out) if np.ndim(out) == 0 else out

    def cdf(self, x):
        """P(Z <= x) = Phi2(x, delta0; rho) / Phi(delta0)."""
        return bvn_conditional_cdf(self.params.delta0, self._check(x), self.rho)

    def survival(self, x):
        """P(Z > x) = Phi2(-x, delta0; -rho) / Phi(delta0), never formed as 1 - cdf."""
        return bvn_conditional_cdf(self.params.delta0, -self._check(x), -self.rho)

    def interval_probability(self, a: float, b: float) -> float:
        """P(a < Z <= b), taking the difference on whichever side avoids cancellation."""
        if a > 0:
            return float(self.survival(a) - self.survival(b))
        return float(self.cdf(b) - self.cdf(a))

    def log_mgf_correction(self, a: float) -> float:
        """ln Phi((gam + lam a)/sqrt(1+lam^2)) - ln Phi(gam/sqrt(1+lam^2)).

        This is ``ln M(a) - a^2/2`` and is the skew adjustment to the risk-neutral drift.
        """
        a = float(a)
        if math.isnan(a):
            raise DomainError("NaN argument")
        if self.lam == 0.0:
            return 0.0
        p = self.params
        return std_normal_log_cdf((p.gam + p.lam * a) / p.scale) - self.log_norm_const

    def mgf(self, a: float) -> float:
        """Moment generating function E[exp(a Z)].

        Raises
        ------
        OverflowError
            If the value exceeds the double range.
        """
        expo = 0.5 * float(a) ** 2 + self.log_mgf_correction(a)
        if expo > _LOG_MAX:
            raise OverflowError(f"mgf({a}) = exp({expo:.6g}) overflows for {self!r}")
        return math.exp(expo)

    def truncated_mgf(self, s: float, a: float, b: float) -> float:
        """MGF at ``s`` of Z truncated to [a, b]; ``a`` and ``b`` may be infinite.

        Multiplying the density by exp(s x) shifts it by ``s`` and turns gamma into
        gamma + lam s, so the value is mgf(s) times the ratio of interval masses
        under the tilted and the original law. This equals the bivariate-normal
        expression u(lam, gam, a, b) e^{s^2/2} [Phi2(g, b - s) - Phi2(g, a - s)].
        """
        s, a, b = float(s), float(a), float(b)
        if math.isnan(s) or math.isnan(a) or math.isnan(b):
            raise DomainError("NaN argument")
        if not a < b:
            raise InvalidParameterError(f"truncation needs a < b, got a={a}, b={b}")
        mass = self.interval_probability(a, b)
        if mass < 1e-300:
            raise SingularTruncationError(f"P({a} < Z <= {b}) = {mass:.3g} for {self!r}")
        tilted = GsnDistribution(self.lam, self.gam + self.lam * s)
        return self.mgf(s) * tilted.interval_probability(a - s, b - s) / mass

    def propose(self, rng, n_proposals: int):
        """Draw ``n_proposals`` rejection proposals.

        Returns
        -------
        candidates : ndarray
            The X half of each (X, Y) pair of independent standard normals.
        accepted : ndarray of bool
            ``Y <= lam X + gam``; accepted candidates are exact SN(lam, gam) draws.
        """
        rng = np.random.default_rng(rng)
        xy = rng.standard_normal((2, n_proposals))
        return xy[0], xy[1] <= self.lam * xy[0] + self.gam

    def sample(self, rng, n: int, antithetic: bool = False) -> np.ndarray:
        """Draw ``n`` variates, deterministically for a given generator state.

        Parameters
        ----------
        rng : numpy.random.Generator or int
            Caller-owned random stream (an int is used as a seed).
        n : int
            Number of draws; 0 gives an empty array.
        antithetic : bool
            Pair every accepted proposal with its mirror image across the
            rejection boundary. Positions 2i and 2i+1 hold a pair; each member
            is an exact draw and pairs are independent. Variance reduction only:
            the pair covariance is (lam^2 Var(B) - 1) / (1 + lam^2), with B the
            proposal coordinate normal to the boundary, so pairs are negatively
            correlated only while lam^2 Var(B) < 1.

        Notes
        -----
        When the acceptance probability is below 1e-12 a ``RuntimeWarning`` is
        issued and draws come from inverse-CDF sampling of the truncated latent W.
        """
        n = int(n)
        if n < 0:
            raise InvalidParameterError("n must be >= 0")
        if n == 0:
            return np.empty(0)
        rng = np.random.default_rng(rng)
        p = self.acceptance_probability
        if p < MIN_ACCEPTANCE:
            warnings.warn(
                f"acceptance probability {p:.3g} too small for rejection; using inverse-CDF sampling",
                RuntimeWarning,
                stacklevel=2,
            )
            return self._sample_inverse(rng, n)
        if not antithetic:
            return self._sample_rejection(rng, n, p)
        return self._sample_antithetic(rng, n, p)

    def _batch_size(self, need, p):
        return int(need / p * 1.1) + 64

    def _sample_rejection(self, rng, n, p):
        chunks, have = [], 0
        while have < n:
            x, ok = self.propose(rng, self._batch_size(n - have, p))
            chunks.append(x[ok])
            have += chunks[-1].size
        return np.concatenate(chunks)[:n]

    def _sample_antithetic(self, rng, n, p):
        # Reflect each accepted proposal along the boundary y = lam x + gam. The
        # map is orthogonal, keeps the distance to the boundary and hence the
        # acceptance decision, and sends x to x - 2 (x + lam y)/(1 + lam^2).
        pairs = (n + 1) // 2
        chunks, have = [], 0
        while have < pairs:
            x, y = rng.standard_normal((2, self._batch_size(pairs - have, p)))
            ok = y <= self.lam * x + self.gam
            chunks.append((x[ok], y[ok]))
            have += int(ok.sum())
        x = np.concatenate([c[0] for c in chunks])[:pairs]
        y = np.concatenate([c[1] for c in chunks])[:pairs]
        out = np.empty(2 * pairs)
        out[0::2] = x
        out[1::2] = x - 2.0 * (x + self.lam * y) / (1.0 + self.lam * self.lam)
        return out[:n]

    def _sample_inverse(self, rng, n):
        # W | W <= delta0 by inversion in log space, then X = rho W + sqrt(1 - rho^2) V.
        u = 1.0 - rng.random(n)
        w = special.ndtri_exp(np.log(u) + self.log_norm_const)
        v = rng.standard_normal(n)
        return self.rho * w + math.sqrt((1.0 - self.rho) * (1.0 + self.rho)) * v
