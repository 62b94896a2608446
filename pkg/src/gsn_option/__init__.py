"""European option pricing under a generalized skew-normal return distribution."""

__version__ = "0.1.0"

from .errors import DomainError, InvalidParameterError, NumericalRegimeError, SingularTruncationError
from .gsn_dist import GsnDistribution, SkewParams
from .normal_kernels import (
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
from .pricer import (
    MarketParams,
    Method,
    PriceQuote,
    black_scholes_price,
    call_price,
    call_value,
    corrado_su_price,
    mu_star,
    put_price,
    w_statistic,
)

__all__ = [
    "Correlation",
    "DomainError",
    "GsnDistribution",
    "InvalidParameterError",
    "MarketParams",
    "Method",
    "NumericalRegimeError",
    "PriceQuote",
    "SingularTruncationError",
    "SkewParams",
    "black_scholes_price",
    "bvn_cdf",
    "bvn_conditional_cdf",
    "call_price",
    "call_value",
    "corrado_su_price",
    "mu_star",
    "owen_t",
    "put_price",
    "std_normal_cdf",
    "std_normal_log_cdf",
    "std_normal_pdf",
    "std_normal_ppf",
    "std_normal_sf",
    "w_statistic",
]
