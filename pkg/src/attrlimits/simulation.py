"""Monte Carlo coverage of fiducial limits against the CLT (Wald) baseline."""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import rng
from .fiducial import (
    BinomialObservation,
    GeometricObservation,
    Interval,
    PoissonObservation,
    binom_fiducial,
    geometric_fiducial,
    poisson_fiducial,
)
from .quantiles import normal_quantile, poisson_cdf, poisson_quantile
from .special import DomainError

__all__ = [
    "CoverageReport",
    "Distribution",
    "draw_statistics",
    "fiducial_interval",
    "normal_approx_interval",
    "run_coverage",
]

BINOMIAL_INVERSION_MAX_N = 64
KNUTH_MAX_MEAN = 30.0
CHUNK = 50_000


class Distribution(str, Enum):
    BINOM = "binom"
    POISSON = "poisson"
    GEOM = "geom"


@dataclass(frozen=True)
class CoverageReport:
    distribution: str
    true_param: float
    n: int
    alpha: float
    replications: int
    seed: int
    fiducial_coverage: float
    normal_coverage: float
    mean_width_fiducial: float
    mean_width_normal: float

    def to_dict(self) -> dict:
        return asdict(self)


def fiducial_interval(distribution: Distribution, stat: int, n: int, alpha: float) -> Interval:
    distribution = Distribution(distribution)
    if distribution is Distribution.BINOM:
        return binom_fiducial(BinomialObservation(n, stat), alpha)
    if distribution is Distribution.POISSON:
        return poisson_fiducial(PoissonObservation(n, stat), alpha)
    return geometric_fiducial(GeometricObservation(n, stat), alpha)


def normal_approx_interval(distribution: Distribution, stat: int, n: int, alpha: float) -> Interval:
    """Classical CLT interval: estimate plus or minus ``z`` standard errors, clamped.

    Geometric data use ``p = n / (n + y)`` with delta-method variance
    ``p**2 (1 - p) / n``.
    """
    distribution = Distribution(distribution)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly in (0, 1), got {alpha!r}")
    z = normal_quantile(1.0 - alpha / 2.0)
    if distribution is Distribution.BINOM:
        est = stat / n
        half = z * math.sqrt(est * (1.0 - est) / n)
        return Interval(max(0.0, est - half), min(1.0, est + half), 1.0 - alpha)
    if distribution is Distribution.POISSON:
        est = stat / n
        half = z * math.sqrt(est / n)
        return Interval(max(0.0, est - half), est + half, 1.0 - alpha)
    est = n / (n + stat)
    half = z * math.sqrt(est * est * (1.0 - est) / n)
    return Interval(max(0.0, est - half), min(1.0, est + half), 1.0 - alpha)


def _check_param(distribution: Distribution, param: float) -> None:
    if distribution is Distribution.BINOM and not 0.0 <= param <= 1.0:
        raise DomainError(f"binomial p must lie in [0, 1], got {param!r}")
    if distribution is Distribution.POISSON and not (param >= 0.0 and math.isfinite(param)):
        raise DomainError(f"Poisson mean must be >= 0, got {param!r}")
    if distribution is Distribution.GEOM and not 0.0 < param <= 1.0:
        raise DomainError(f"geometric p must lie in (0, 1], got {param!r}")


def _binomial(p: float, n: int, seed: int, reps: np.ndarray) -> np.ndarray:
    if n <= BINOMIAL_INVERSION_MAX_N:
        k = np.arange(n + 1)
        pmf = np.array([math.comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in k])
        cdf = np.cumsum(pmf)
        cdf[-1] = 1.0
        u = rng.uniforms(seed, reps, 0)
        return np.minimum(np.searchsorted(cdf, u, side="left"), n)
    total = np.zeros(reps.shape, dtype=np.int64)
    for j in range(n):
        total += rng.uniforms(seed, reps, j) < p
    return total


def _poisson(mean: float, seed: int, reps: np.ndarray) -> np.ndarray:
    if mean == 0.0:
        return np.zeros(reps.shape, dtype=np.int64)
    if mean > KNUTH_MAX_MEAN:
        # Inversion against a CDF table reaching far past the upper tail.
        top = poisson_quantile(1.0 - 1e-16, mean) + 1
        cdf = np.array([poisson_cdf(k, mean) for k in range(top + 1)])
        cdf[-1] = 1.0
        return np.searchsorted(cdf, rng.uniforms(seed, reps, 0), side="left")
    limit = math.exp(-mean)
    counts = np.zeros(reps.shape, dtype=np.int64)
    prod = np.ones(reps.shape)
    active = np.ones(reps.shape, dtype=bool)
    draw = 0
    while active.any():
        idx = np.nonzero(active)[0]
        prod[idx] *= rng.uniforms(seed, reps[idx], draw)
        draw += 1
        still = prod[idx] > limit
        counts[idx[still]] += 1
        active[idx[~still]] = False
    return counts


def _geometric_sum(p: float, n: int, seed: int, reps: np.ndarray) -> np.ndarray:
    total = np.zeros(reps.shape, dtype=np.int64)
    if p == 1.0:
        return total
    log_q = math.log1p(-p)
    for j in range(n):
        u = rng.uniforms(seed, reps, j)
        total += np.floor(np.log(u) / log_q).astype(np.int64)
    return total


def draw_statistics(
    distribution: Distribution, true_param: float, n: int, seed: int, reps: np.ndarray
) -> np.ndarray:
    """Sufficient statistic for each replicate index in ``reps``.

    Binomial gives X ~ Bin(n, p). Poisson gives the sum of ``n`` draws, which is
    Poisson(n * lam). Geometric gives the total failures over ``n`` draws.
    """
    distribution = Distribution(distribution)
    reps = np.asarray(reps, dtype=np.uint64)
    if distribution is Distribution.BINOM:
        return _binomial(true_param, n, seed, reps)
    if distribution is Distribution.POISSON:
        return _poisson(n * true_param, seed, reps)
    return _geometric_sum(true_param, n, seed, reps)


def _histogram(
    distribution: Distribution, true_param: float, n: int, seed: int, start: int, stop: int
) -> Counter:
    stats = draw_statistics(
        distribution, true_param, n, seed, np.arange(start, stop, dtype=np.uint64)
    )
    values, counts = np.unique(stats, return_counts=True)
    return Counter(dict(zip(values.tolist(), counts.tolist())))


def run_coverage(
    distribution: Distribution | str,
    true_param: float,
    n: int,
    alpha: float,
    replications: int,
    seed: int,
    workers: int = 1,
) -> CoverageReport:
    """Empirical coverage and mean width of fiducial and normal-approximation intervals.

    Replicates are reduced to a histogram of the sufficient statistic, and
    every interval is evaluated once per distinct value. Histogram merging
    is order-free, so the report is bit-identical for any ``workers``.
    """
    distribution = Distribution(distribution)
    _check_param(distribution, true_param)
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    if int(replications) != replications or replications < 1:
        raise DomainError(f"replications must be a positive integer, got {replications!r}")
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly in (0, 1), got {alpha!r}")
    n, replications = int(n), int(replications)

    bounds = [(s, min(s + CHUNK, replications)) for s in range(0, replications, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(lambda b: _histogram(distribution, true_param, n, seed, *b), bounds)
            )
    else:
        parts = [_histogram(distribution, true_param, n, seed, *b) for b in bounds]
    hist: Counter = Counter()
    for part in parts:
        hist.update(part)

    fid = lru_cache(maxsize=None)(lambda s: fiducial_interval(distribution, s, n, alpha))
    wald = lru_cache(maxsize=None)(lambda s: normal_approx_interval(distribution, s, n, alpha))
    stats = sorted(hist)
    fid_hits = sum(hist[s] for s in stats if fid(s).contains(true_param))
    wald_hits = sum(hist[s] for s in stats if wald(s).contains(true_param))
    fid_width = math.fsum(hist[s] * fid(s).width for s in stats) / replications
    wald_width = math.fsum(hist[s] * wald(s).width for s in stats) / replications
    return CoverageReport(
        distribution=distribution.value,
        true_param=float(true_param),
        n=n,
        alpha=float(alpha),
        replications=replications,
        seed=int(seed),
        fiducial_coverage=fid_hits / replications,
        normal_coverage=wald_hits / replications,
        mean_width_fiducial=fid_width,
        mean_width_normal=wald_width,
    )
