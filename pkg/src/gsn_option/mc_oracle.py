"""Monte Carlo checks of the closed-form prices under the risk-neutral measure.

Paths are generated in fixed-size batches. Batch ``i`` draws from its own
Philox stream spawned from ``SeedSequence(seed)``, so results depend only on
(seed, n_paths, batch_size) and never on how batches are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .gsn_dist import GsnDistribution
from .pricer import MarketParams, _as_skew, mu_star

__all__ = ["McConfig", "McEstimate", "simulate_terminal", "estimate_call", "martingale_check"]

MIN_PATHS = 1000


@dataclass(frozen=True)
class McConfig:
    n_paths: int = 1_000_000
    seed: int = 0
    antithetic: bool = False
    batch_size: int = 1 << 16

    def __post_init__(self):
        if int(self.n_paths) < MIN_PATHS:
            raise InvalidParameterError(f"n_paths must be >= {MIN_PATHS}, got {self.n_paths}")
        if int(self.batch_size) < 2:
            raise InvalidParameterError("batch_size must be >= 2")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParameterError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_paths: int
    seed_echo: int

    def z_score(self, target: float) -> float:
        return (self.mean - target) / self.std_error


def _batch_sizes(cfg):
    full, rest = divmod(int(cfg.n_paths), int(cfg.batch_size))
    return [int(cfg.batch_size)] * full + ([rest] if rest else [])


def _draw_batch(args):
    dist, seq, size, antithetic = args
    rng = np.random.Generator(np.random.Philox(seq))
    return dist.sample(rng, size, antithetic=antithetic)


def _draws(s, cfg, executor):
    dist = GsnDistribution.from_params(s)
    sizes = _batch_sizes(cfg)
    seqs = np.random.SeedSequence(int(cfg.seed)).spawn(len(sizes))
    jobs = [(dist, seq, size, cfg.antithetic) for seq, size in zip(seqs, sizes)]
    mapper = executor.map if executor is not None else map
    return np.concatenate(list(mapper(_draw_batch, jobs)))


def simulate_terminal(m: MarketParams, s, cfg: McConfig, executor: Executor | None = None) -> np.ndarray:
    """Terminal prices S0 exp(mu* t + sigma sqrt(t) Z) under the risk-neutral measure."""
    s = _as_skew(s)
    z = _draws(s, cfg, executor)
    return m.s0 * np.exp(mu_star(m, s) * m.t + m.vol_sqrt_t * z)


def _estimate(values, cfg):
    n = values.size
    if cfg.antithetic:
        # average adjacent direct/reflected draws; pairs are treated as the sampling unit
        paired = values[: n - n % 2].reshape(-1, 2).mean(axis=1)
        if n % 2:
            paired = np.append(paired, values[-1])
        se = paired.std(ddof=1) / math.sqrt(paired.size)
    else:
        se = values.std(ddof=1) / math.sqrt(n)
    return McEstimate(mean=float(values.mean()), std_error=float(se), n_paths=n, seed_echo=int(cfg.seed))


def estimate_call(m: MarketParams, s, cfg: McConfig, executor: Executor | None = None) -> McEstimate:
    """Mean and standard error of the discounted call payoff."""
    st = simulate_terminal(m, s, cfg, executor)
    return _estimate(m.discount * np.maximum(st - m.k, 0.0), cfg)


def martingale_check(m: MarketParams, s, cfg: McConfig, executor: Executor | None = None) -> McEstimate:
    """Estimate of e^{-rt} E[S(t)], which should equal S0 within a few standard errors."""
    st = simulate_terminal(m, s, cfg, executor)
    return _estimate(m.discount * st, cfg)
