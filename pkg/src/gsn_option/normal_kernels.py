"""Standard normal special functions.

Univariate pdf/cdf/log-cdf/quantile, Owen's T function, the standard bivariate
normal CDF and a tail-stable conditional bivariate CDF. Every function accepts
plain floats; the pdf, cdf, log-cdf, quantile and bivariate routines also accept
array-likes and broadcast. Scalar input gives a Python ``float`` back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, special

from .errors import DomainError

__all__ = [
    "Correlation",
    "std_normal_pdf",
    "std_normal_cdf",
    "std_normal_sf",
    "std_normal_log_cdf",
    "std_normal_ppf",
    "owen_t",
    "bvn_cdf",
    "bvn_conditional_cdf",
]

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_TWO_PI = 2.0 * math.pi
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# 20-point Gauss-Legendre rule mapped from [-1, 1] to [0, 2].
_GL_X, _GL_W = leggauss(20)
_GL_X = _GL_X + 1.0

# Below this argument ln(Phi) switches to the asymptotic series.
_LOG_CDF_ASYMPTOTIC = -37.0
# Below this conditioning bound Phi2(x, y)/Phi(x) loses relative accuracy.
_COND_TAIL = -5.0
# Conditional probabilities below this are recomputed by the tail integral
# when min(x, y) is below _TAIL_BELOW.
_SMALL_COND = 1e-3
_TAIL_BELOW = -0.5
_TAIL_VMAX = 800.0


def _asarray(x):
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise DomainError("NaN argument")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def std_normal_pdf(x):
    """Standard normal density 1/sqrt(2 pi) exp(-x^2/2).

    Raises
    ------
    DomainError
        If any argument is NaN or infinite.
    """
    arr = _asarray(x)
    if not np.isfinite(arr).all():
        raise DomainError("std_normal_pdf requires finite arguments")
    return _out(INV_SQRT_2PI * np.exp(-0.5 * arr * arr))


def std_normal_cdf(x):
    """Standard normal CDF. Infinite arguments map to 0 and 1."""
    return _out(special.ndtr(_asarray(x)))


def std_normal_sf(x):
    """Upper tail 1 - Phi(x), evaluated as Phi(-x) to keep relative accuracy."""
    return _out(special.ndtr(-_asarray(x)))


def _log_cdf_asymptotic(x):
    # ln Phi(x) = -x^2/2 - ln(-x) - ln sqrt(2 pi) + ln(1 - 1/x^2 + 3/x^4 - ...)
    z = 1.0 / (x * x)
    series = np.ones_like(x)
    term = np.ones_like(x)
    for n in range(1, 9):
        term = -term * (2 * n - 1) * z
        series = series + term
    return -0.5 * x * x - np.log(-x) - _LOG_SQRT_2PI + np.log(series)


def std_normal_log_cdf(x):
    """Natural log of the standard normal CDF, free of underflow.

    For ``x > 0`` the value is ``log1p(-Phi(-x))``; between -37 and 0 it is the
    direct logarithm; further left an eight-term Mills-ratio expansion is used.
    """
    arr = _asarray(x)
    out = np.empty_like(arr)
    pos = arr > 0
    mid = (arr <= 0) & (arr >= _LOG_CDF_ASYMPTOTIC)
    far = arr < _LOG_CDF_ASYMPTOTIC
    with np.errstate(divide="ignore"):
        out[pos] = np.log1p(-special.ndtr(-arr[pos]))
        out[mid] = np.log(special.ndtr(arr[mid]))
    ninf = far & np.isneginf(arr)
    out[ninf] = -np.inf
    tail = far & ~ninf
    out[tail] = _log_cdf_asymptotic(arr[tail])
    return _out(out)


def std_normal_ppf(p):
    """Standard normal quantile; ``p`` in [0, 1]."""
    arr = _asarray(p)
    if ((arr < 0) | (arr > 1)).any():
        raise DomainError("probability outside [0, 1]")
    return _out(special.ndtri(arr))


def _owen_t_gl(h, a):
    # T(h, a) for h >= 0 and 0 < a <= 1 by composite Gauss-Legendre.
    panels = 1 + int(h * a)
    width = a / panels
    x = (np.arange(panels)[:, None] + 0.5 * _GL_X[None, :]) * width
    one_x2 = 1.0 + x * x
    vals = np.exp(-0.5 * h * h * one_x2) / one_x2
    return float(0.5 * width * (vals * _GL_W).sum() / _TWO_PI)


def owen_t(h: float, a: float) -> float:
    """Owen's T function.

    T(h, a) = 1/(2 pi) * integral_0^a exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx

    Parameters
    ----------
    h, a : float
        Finite arguments. ``h = +/-inf`` is accepted and gives 0.

    Notes
    -----
    The integral is evaluated directly for ``|a| <= 1`` with a panel count
    growing with ``h * a``. For ``|a| > 1`` the reflection

        T(h, a) = [Phi(h) Q(ah) + Phi(ah) Q(h)] / 2 - T(ah, 1/a),  h, a >= 0

    maps the problem back onto ``|a| < 1`` without cancellation.
    """
    h = float(h)
    a = float(a)
    if math.isnan(h) or math.isnan(a):
        raise DomainError("NaN argument to owen_t")
    if math.isinf(a):
        raise DomainError("owen_t requires finite a")
    if math.isinf(h) or a == 0.0:
        return 0.0
    sign = 1.0 if a > 0 else -1.0
    h = abs(h)
    a = abs(a)
    if h == 0.0:
        return sign * math.atan(a) / _TWO_PI
    if a <= 1.0:
        return sign * _owen_t_gl(h, a)
    ah = a * h
    ph, qh = std_normal_cdf(h), std_normal_sf(h)
    pah, qah = std_normal_cdf(ah), std_normal_sf(ah)
    val = 0.5 * (ph * qah + pah * qh) - _owen_t_gl(ah, 1.0 / a)
    return sign * val


@dataclass(frozen=True)
class Correlation:
    """A correlation coefficient in [-1, 1].

    Values outside the interval by at most 1e-12 are clamped onto it; anything
    further out is rejected.
    """

    rho: float

    def __post_init__(self):
        rho = float(self.rho)
        if math.isnan(rho) or abs(rho) > 1.0 + 1e-12:
            raise DomainError(f"correlation {self.rho!r} outside [-1, 1]")
        object.__setattr__(self, "rho", max(-1.0, min(1.0, rho)))

    def __float__(self):
        return self.rho


def _coerce_rho(rho):
    if isinstance(rho, Correlation):
        return np.asarray(rho.rho)
    arr = _asarray(rho)
    if (np.abs(arr) > 1.0 + 1e-12).any():
        raise DomainError("correlation outside [-1, 1]")
    return np.clip(arr, -1.0, 1.0)


def _bvnu(h, k, r):
    """P(X > h, Y > k) for finite 1-D arrays h, k and |r| <= 1.

    Drezner-Wesolowsky / Genz scheme: Gauss-Legendre over the arcsine
    representation for |r| < 0.925 and the transformed integral near |r| = 1.
    """
    out = np.empty_like(h)
    qh, qk = special.ndtr(-h), special.ndtr(-k)

    zero = r == 0.0
    out[zero] = qh[zero] * qk[zero]

    mid = (r != 0.0) & (np.abs(r) < 0.925)
    if mid.any():
        hm, km, rm = h[mid], k[mid], r[mid]
        hs = 0.5 * (hm * hm + km * km)
        asr = 0.5 * np.arcsin(rm)
        sn = np.sin(asr[:, None] * _GL_X[None, :])
        vals = np.exp((sn * (hm * km)[:, None] - hs[:, None]) / (1.0 - sn * sn))
        out[mid] = (vals * _GL_W).sum(axis=1) * asr / _TWO_PI + qh[mid] * qk[mid]

    high = np.abs(r) >= 0.925
    if high.any():
        out[high] = _bvnu_high(h[high], k[high], r[high])

    return np.clip(out, 0.0, 1.0)


def _bvnu_high(h, k, r):
    neg = r < 0
    k = np.where(neg, -k, k)
    hk = h * k
    bvn = np.zeros_like(h)
    inner = np.abs(r) < 1.0
    with np.errstate(over="ignore", divide="ignore", invalid="ignore", under="ignore"):
        if inner.any():
            hi, ki, hki, ri = h[inner], k[inner], hk[inner], r[inner]
            as_ = (1.0 - ri) * (1.0 + ri)
            a = np.sqrt(as_)
            bs = (hi - ki) ** 2
            asr = -0.5 * (bs / as_ + hki)
            c = (4.0 - hki) / 8.0
            d = (12.0 - hki) / 80.0
            val = np.where(
                asr > -100.0,
                a * np.exp(asr) * (1.0 - c * (bs - as_) * (1.0 - d * bs) / 3.0 + c * d * as_ * as_),
                0.0,
            )
            b = np.sqrt(bs)
            sp = math.sqrt(_TWO_PI) * special.ndtr(-b / a)
            corr = np.exp(-0.5 * hki) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0)
            val = val - np.where(hki > -100.0, corr, 0.0)

            half_a = 0.5 * a
            xs = (half_a[:, None] * _GL_X[None, :]) ** 2
            asr2 = -0.5 * (bs[:, None] / xs + hki[:, None])
            sp2 = 1.0 + c[:, None] * xs * (1.0 + 5.0 * d[:, None] * xs)
            rs = np.sqrt(1.0 - xs)
            ep = np.exp(-0.5 * hki[:, None] * xs / (1.0 + rs) ** 2) / rs
            terms = np.where(asr2 > -100.0, np.exp(asr2) * (sp2 - ep), 0.0)
            bvn[inner] = (half_a * (terms * _GL_W).sum(axis=1) - val) / _TWO_PI

    pos = ~neg
    bvn[pos] += special.ndtr(-np.maximum(h[pos], k[pos]))
    hn, kn, bn = h[neg], k[neg], bvn[neg]
    lower = special.ndtr(kn) - special.ndtr(hn)
    upper = special.ndtr(-hn) - special.ndtr(-kn)
    span = np.where(hn < 0, lower, upper)
    bvn[neg] = np.where(hn >= kn, -bn, span - bn)
    return bvn


def bvn_cdf(x, y, rho):
    """Standard bivariate normal CDF P(X <= x, Y <= y) with correlation ``rho``.

    ``x`` and ``y`` may be infinite. ``rho`` is a float, array or `Correlation`.
    Arguments broadcast against each other.
    """
    xa, ya, ra = np.broadcast_arrays(_asarray(x), _asarray(y), _coerce_rho(rho))
    shape = xa.shape
    xa, ya, ra = xa.ravel(), ya.ravel(), ra.ravel()
    out = np.empty_like(xa)

    dead = np.isneginf(xa) | np.isneginf(ya)
    out[dead] = 0.0
    xinf = np.isposinf(xa) & ~dead
    out[xinf] = special.ndtr(ya[xinf])
    yinf = np.isposinf(ya) & ~dead & ~xinf
    out[yinf] = special.ndtr(xa[yinf])
    fin = ~(dead | xinf | yinf)
    if fin.any():
        out[fin] = _bvnu(-xa[fin], -ya[fin], ra[fin])
    return _out(out.reshape(shape))


def _cond_tail(x, y, rho):
    # P(Y <= y | X <= x) for x << 0 as a one-dimensional integral over the
    # exponentially tilted excess v = |x| (x - X) >= 0.
    if rho == 1.0:
        return math.exp(std_normal_log_cdf(min(x, y)) - std_normal_log_cdf(x))
    if rho == -1.0:
        if -y >= x:
            return 0.0
        return -math.expm1(std_normal_log_cdf(-y) - std_normal_log_cdf(x))
    s = math.sqrt((1.0 - rho) * (1.0 + rho))
    ax = -x
    base = y - rho * x
    slope = rho / ax

    def f(v):
        return math.exp(-v - 0.5 * (v / ax) ** 2) * special.ndtr((base + slope * v) / s)

    # exp(-v) underflows past v = 745, so the integral is over a finite range,
    # split where the weight decays and where the normal CDF factor turns over.
    cuts = {0.0, 2.0, 10.0, 50.0, _TAIL_VMAX}
    if slope != 0.0 and 0.0 < -base / slope < _TAIL_VMAX:
        cuts.add(-base / slope)
    pieces = sorted(cuts)
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        total += integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)[0]
    # Phi(x) = phi(x) * sqrt(pi/2) * erfcx(-x / sqrt(2))
    mills = math.sqrt(0.5 * math.pi) * special.erfcx(ax / math.sqrt(2.0))
    return min(1.0, total / (ax * mills))


def bvn_conditional_cdf(x, y, rho):
    """Conditional probability P(Y <= y | X <= x) under the standard bivariate normal.

    Equal to ``bvn_cdf(x, y, rho) / std_normal_cdf(x)`` but remains accurate when
    ``Phi(x)`` is tiny or underflows: for ``x < -5`` the ratio is computed as a
    one-dimensional integral over the conditional law of X. Small results are
    recomputed the same way, conditioning on the smaller argument, so they keep
    relative accuracy.
    """
    xa, ya, ra = np.broadcast_arrays(_asarray(x), _asarray(y), _coerce_rho(rho))
    shape = xa.shape
    xa, ya, ra = xa.ravel(), ya.ravel(), ra.ravel()
    out = np.empty_like(xa)

    # Independence: the conditioning drops out exactly.
    indep = ra == 0.0
    out[indep] = special.ndtr(ya[indep])
    body = (xa >= _COND_TAIL) & ~indep
    if body.any():
        xb, yb, rb = xa[body], ya[body], ra[body]
        out[body] = np.clip(bvn_cdf(xb, yb, rb) / special.ndtr(xb), 0.0, 1.0)
        # Small values from the bivariate routine carry only absolute accuracy.
        # Redo them with the positive tail integral, conditioning on the smaller
        # argument: Phi2 = Phi(y) P(X <= x | Y <= y) when y < x.
        redo = body & (out < _SMALL_COND) & (np.minimum(xa, ya) < _TAIL_BELOW) & np.isfinite(ya)
        for i in np.flatnonzero(redo):
            xi, yi, ri = float(xa[i]), float(ya[i]), float(ra[i])
            if xi <= yi:
                out[i] = _cond_tail(xi, yi, ri)
            else:
                ratio = math.exp(std_normal_log_cdf(yi) - std_normal_log_cdf(xi))
                out[i] = ratio * _cond_tail(yi, xi, ri)
    for i in np.flatnonzero(~body & ~indep):
        xi, yi, ri = xa[i], ya[i], ra[i]
        if np.isposinf(yi):
            out[i] = 1.0
        elif np.isneginf(yi):
            out[i] = 0.0
        elif np.isneginf(xi):
            out[i] = 1.0 if ri > 0 else (0.0 if ri < 0 else special.ndtr(yi))
        else:
            out[i] = _cond_tail(float(xi), float(yi), float(ri))
    return _out(out.reshape(shape))
