import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from gsn_option.errors import DomainError
from gsn_option.normal_kernels import (
    Correlation,
    bvn_cdf,
    bvn_conditional_cdf,
    owen_t,
    std_normal_cdf,
    std_normal_log_cdf,
    std_normal_pdf,
    std_normal_ppf,
    std_normal_sf,
)

from conftest import bvn_dblquad, mp_bvn

reals = st.floats(-8, 8, allow_nan=False)
corr = st.floats(-1, 1, allow_nan=False)


# --- univariate -------------------------------------------------------------

def test_pdf_values():
    assert std_normal_pdf(0.0) == pytest.approx(0.3989422804014327, abs=1e-16)
    assert std_normal_pdf(1.7) == std_normal_pdf(-1.7)


def test_pdf_integrates_to_one():
    val, _ = integrate.quad(std_normal_pdf, -10, 10, epsabs=1e-15, epsrel=1e-15)
    assert abs(val - 1.0) < 1e-12


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_pdf_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        std_normal_pdf(bad)


def test_cdf_values():
    assert std_normal_cdf(0.0) == 0.5
    assert std_normal_cdf(math.inf) == 1.0
    assert std_normal_cdf(-math.inf) == 0.0
    # frozen from integrate.quad(std_normal_pdf, -inf, 1)
    quad_val = 0.5 + integrate.quad(std_normal_pdf, 0, 1, epsabs=1e-16, epsrel=1e-16)[0]
    assert abs(quad_val - 0.8413447460685429) < 1e-15
    assert abs(std_normal_cdf(1.0) - 0.8413447460685429) < 1e-15
    with pytest.raises(DomainError):
        std_normal_cdf(math.nan)


def test_cdf_matches_mpmath_on_grid():
    xs = np.linspace(-8, 8, 161)
    ref = np.array([float(mp.ncdf(x)) for x in xs])
    assert np.max(np.abs(std_normal_cdf(xs) - ref)) <= 1e-15


@given(reals)
def test_cdf_symmetry(x):
    assert abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1.0) <= 1e-15


@given(st.floats(-8, 8), st.floats(-8, 8))
def test_cdf_monotone(a, b):
    lo, hi = sorted((a, b))
    assert std_normal_cdf(lo) <= std_normal_cdf(hi)


def test_log_cdf_values():
    assert std_normal_log_cdf(0.0) == pytest.approx(math.log(0.5), abs=1e-16)
    assert abs(std_normal_log_cdf(5.0) - math.log(std_normal_cdf(5.0))) < 1e-12
    # Mills-ratio leading behaviour at x = -40
    approx = -(40.0**2) / 2 - math.log(40.0 * math.sqrt(2 * math.pi))
    assert std_normal_log_cdf(-40.0) == pytest.approx(approx, rel=1e-6)
    assert math.isfinite(std_normal_log_cdf(-1e4))


@pytest.mark.parametrize("x", [-1e3, -200, -60, -37.5, -37.0, -36.9, -20, -3, 0.5, 8, 30])
def test_log_cdf_against_mpmath(x):
    ref = float(mp.log(mp.ncdf(x)))
    assert std_normal_log_cdf(x) == pytest.approx(ref, rel=1e-10)


@given(st.floats(-8, 8))
def test_log_cdf_exp_roundtrip(x):
    assert math.exp(std_normal_log_cdf(x)) == pytest.approx(std_normal_cdf(x), rel=1e-12)


def test_ppf_inverts_cdf():
    p = np.array([1e-12, 0.01, 0.3, 0.5, 0.9, 1 - 1e-9])
    assert np.allclose(std_normal_cdf(std_normal_ppf(p)), p, rtol=1e-12, atol=0)
    with pytest.raises(DomainError):
        std_normal_ppf(1.5)


def test_sf_is_upper_tail():
    assert std_normal_sf(10.0) == pytest.approx(float(mp.ncdf(-10)), rel=1e-13)


# --- Owen's T ---------------------------------------------------------------

def test_owen_t_closed_values():
    assert owen_t(0.0, 1.0) == pytest.approx(0.125, abs=1e-16)
    assert owen_t(0.0, 3.0) == pytest.approx(math.atan(3.0) / (2 * math.pi), abs=1e-16)
    assert owen_t(2.3, 0.0) == 0.0
    p = std_normal_cdf(1.0)
    assert abs(owen_t(1.0, 1.0) - 0.5 * p * (1 - p)) < 1e-14


def _owen_quad(h, a):
    f = lambda x: math.exp(-0.5 * h * h * (1 + x * x)) / (1 + x * x)
    return integrate.quad(f, 0, a, epsabs=1e-16, epsrel=1e-14, limit=200)[0] / (2 * math.pi)


@pytest.mark.parametrize("h", [0.1, 0.5, 1.0, 2.5, 4.0, 6.5, 9.0, 15.0])
@pytest.mark.parametrize("a", [-7.0, -1.0, 0.05, 0.5, 0.999, 1.0, 1.3, 4.0, 50.0])
def test_owen_t_against_quadrature_and_scipy(h, a):
    val = owen_t(h, a)
    assert abs(val - special.owens_t(h, a)) <= 1e-14
    if abs(a) <= 4:
        assert abs(val - math.copysign(_owen_quad(h, abs(a)), a)) <= 1e-14


@settings(max_examples=300)
@given(st.floats(-10, 10), st.floats(-20, 20))
def test_owen_t_symmetries(h, a):
    t = owen_t(h, a)
    assert owen_t(h, -a) == -t
    assert owen_t(-h, a) == t
    assert abs(t) <= 0.25


@settings(max_examples=300)
@given(st.floats(-6, 6), st.floats(0.01, 20), st.booleans())
def test_owen_t_reflection_identity(h, a, negative):
    # T(h, a) + T(ah, 1/a) = [Phi(h) + Phi(ah)]/2 - Phi(h) Phi(ah) - 1[a < 0]/2
    a = -a if negative else a
    lhs = owen_t(h, a) + owen_t(a * h, 1.0 / a)
    rhs = 0.5 * (std_normal_cdf(h) + std_normal_cdf(a * h)) - std_normal_cdf(h) * std_normal_cdf(a * h)
    if a < 0:
        rhs -= 0.5
    assert abs(lhs - rhs) <= 1e-12


def test_owen_t_nan():
    with pytest.raises(DomainError):
        owen_t(math.nan, 1.0)


# --- bivariate normal -------------------------------------------------------

def test_correlation_validation():
    assert Correlation(1.0 + 5e-13).rho == 1.0
    assert Correlation(-1.0 - 5e-13).rho == -1.0
    with pytest.raises(DomainError):
        Correlation(1.0 + 1e-9)
    with pytest.raises(DomainError):
        Correlation(math.nan)


def test_bvn_closed_values():
    assert bvn_cdf(0, 0, 0) == 0.25
    for rho in (-0.99, -0.5, 0.3, 0.9, 0.999):
        assert bvn_cdf(0, 0, rho) == pytest.approx(0.25 + math.asin(rho) / (2 * math.pi), abs=1e-15)
    assert bvn_cdf(0.5, -0.3, Correlation(-0.7071)) == pytest.approx(
        bvn_dblquad(0.5, -0.3, -0.7071), abs=1e-9
    )


def test_bvn_infinite_arguments():
    assert bvn_cdf(1.2, math.inf, 0.4) == std_normal_cdf(1.2)
    assert bvn_cdf(math.inf, -0.7, 0.4) == std_normal_cdf(-0.7)
    assert bvn_cdf(-math.inf, 3.0, 0.4) == 0.0
    assert bvn_cdf(math.inf, math.inf, -0.4) == 1.0
    with pytest.raises(DomainError):
        bvn_cdf(math.nan, 0, 0)


def test_bvn_against_mpmath_random():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(150):
        x, y = rng.uniform(-6, 6, 2)
        rho = rng.uniform(-1, 1) if rng.random() < 0.6 else rng.choice([-1, 1]) * (1 - 10 ** rng.uniform(-14, -1))
        worst = max(worst, abs(bvn_cdf(x, y, rho) - mp_bvn(x, y, rho)))
    assert worst <= 5e-16


def test_bvn_vectorized_matches_scalar():
    rng = np.random.default_rng(3)
    x, y, r = rng.normal(size=50), rng.normal(size=50), rng.uniform(-1, 1, 50)
    vec = bvn_cdf(x, y, r)
    assert np.array_equal(vec, [bvn_cdf(a, b, c) for a, b, c in zip(x, y, r)])


@settings(max_examples=200)
@given(reals, reals, corr)
def test_bvn_properties(x, y, rho):
    v = bvn_cdf(x, y, rho)
    assert 0.0 <= v <= 1.0
    assert v == pytest.approx(bvn_cdf(y, x, rho), abs=1e-15)
    assert bvn_cdf(x + 0.1, y, rho) >= v - 1e-16
    assert bvn_cdf(x, y + 0.1, rho) >= v - 1e-16
    assert v <= min(std_normal_cdf(x), std_normal_cdf(y)) + 1e-16


@given(reals, reals)
def test_bvn_independence(x, y):
    assert bvn_cdf(x, y, 0.0) == pytest.approx(std_normal_cdf(x) * std_normal_cdf(y), abs=1e-16)


@pytest.mark.parametrize("x,y", [(0.3, -0.4), (-1.0, 2.0), (1.5, 1.4), (-2.2, -2.3), (0.7, -1.9)])
def test_bvn_degenerate_limits(x, y):
    eps = 1e-14
    lower = max(0.0, std_normal_cdf(x) + std_normal_cdf(y) - 1)
    assert abs(bvn_cdf(x, y, -(1 - eps)) - lower) <= 1e-10
    assert abs(bvn_cdf(x, y, 1 - eps) - std_normal_cdf(min(x, y))) <= 1e-10
    assert bvn_cdf(x, y, -1.0) == pytest.approx(lower, abs=1e-15)
    assert bvn_cdf(x, y, 1.0) == pytest.approx(std_normal_cdf(min(x, y)), abs=1e-15)


def test_bvn_near_singular_on_the_boundary():
    # At x = -y (rho -> -1) and x = y (rho -> +1) the approach is O(sqrt(1 - |rho|)),
    # so compare with Sheppard's closed form instead of the limit.
    eps = 1e-14
    for rho in (-(1 - eps), 1 - eps):
        assert bvn_cdf(0.0, 0.0, rho) == pytest.approx(0.25 + math.asin(rho) / (2 * math.pi), abs=1e-15)


# --- conditional ------------------------------------------------------------

@pytest.mark.parametrize(
    "x,y,rho",
    [(-4.9, -4.0, 0.5), (-5.1, -4.0, 0.5), (-8, -8, -0.3), (-6, -6.5, 0.999), (-10, -9, 0.5), (-12, 3, -0.8)],
)
def test_conditional_matches_ratio(x, y, rho):
    with mp.workdps(40):
        s = mp.sqrt(1 - mp.mpf(rho) ** 2)
        f = lambda u: mp.npdf(u) * mp.ncdf((y - rho * u) / s)
        ref = mp.quad(f, [-mp.inf] + [x - k / abs(x) for k in (40, 10, 3, 1)] + [x]) / mp.ncdf(x)
    assert bvn_conditional_cdf(x, y, rho) == pytest.approx(float(ref), rel=1e-9)


def test_conditional_survives_underflow():
    # Phi(-57) underflows; the conditional law still has to be resolved.
    assert bvn_conditional_cdf(-57.0, -47.0, 0.894) == pytest.approx(1.0, abs=1e-12)
    assert bvn_conditional_cdf(-57.0, -60.0, 0.894) < 1e-12
    assert bvn_conditional_cdf(-60.0, 1.0, 0.0) == pytest.approx(std_normal_cdf(1.0), rel=1e-12)
    assert bvn_conditional_cdf(-60.0, -59.0, 1.0) == 1.0
    assert bvn_conditional_cdf(-60.0, 59.0, -1.0) == 0.0


@pytest.mark.parametrize(
    "x,y,rho",
    [
        (0.6115844785252967, -3.798733411085715, -0.8944271909999159),
        (-1.1772699034745349, -0.564543435048094, -0.8944271909999159),
        (2.0, -4.5, -0.6),
        (-0.9, 1.2, -0.99),
        (-3.0, -2.0, 0.3),
    ],
)
def test_conditional_small_values_relative_accuracy(x, y, rho):
    with mp.workdps(40):
        ref = mp_bvn(x, y, rho, dps=40) / float(mp.ncdf(x))
    got = bvn_conditional_cdf(x, y, rho)
    assert got == pytest.approx(ref, rel=1e-11)
