"""Quantile functions for the continuous and discrete distributions in play.

Continuous quantiles (gamma, F, beta, chi-square, normal) are found by Newton
iteration on the CDF, guarded by a bracket that falls back to bisection
whenever a Newton step would leave it.

Discrete quantiles use the convention of R's ``qbinom``/``qpois``/``qnbinom``:
the smallest ``k`` with ``CDF(k) >= xi``, with R's ``64 * eps`` relative
tolerance on ``xi`` so exact ties resolve to the lower ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .special import (
    DomainError,
    ln_beta,
    ln_gamma,
    reg_inc_beta,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
)

__all__ = [
    "FParams",
    "GammaParams",
    "beta_quantile",
    "binomial_cdf",
    "binomial_quantile",
    "chi2_quantile",
    "f_cdf",
    "f_quantile",
    "gamma_cdf",
    "gamma_quantile",
    "negbinomial_cdf",
    "negbinomial_quantile",
    "normal_cdf",
    "normal_quantile",
    "poisson_cdf",
    "poisson_quantile",
]

MAX_ITER = 200
RESID_TOL = 1e-13
# Bracket-width stop, in units in the last place of the iterate.
WIDTH_ULPS = 4
# Below this mean the discrete quantiles scan upward from zero.
SCAN_MEAN_LIMIT = 200.0
# Relative slack on xi in discrete searches (R's qbinom/qpois use the same),
# so a CDF that equals xi exactly but sums a few ulps short still counts.
TIE_FUZZ = 1.0 - 64 * 2.220446049250313e-16


@dataclass(frozen=True)
class GammaParams:
    """Shape-scale parameterization: mean is ``shape * scale``."""

    shape: float
    scale: float = 1.0

    def __post_init__(self):
        if not (self.shape > 0 and math.isfinite(self.shape)):
            raise DomainError(f"gamma shape must be > 0, got {self.shape!r}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise DomainError(f"gamma scale must be > 0, got {self.scale!r}")


@dataclass(frozen=True)
class FParams:
    nu1: float
    nu2: float

    def __post_init__(self):
        if not (self.nu1 > 0 and math.isfinite(self.nu1)):
            raise DomainError(f"nu1 must be > 0, got {self.nu1!r}")
        if not (self.nu2 > 0 and math.isfinite(self.nu2)):
            raise DomainError(f"nu2 must be > 0, got {self.nu2!r}")


def _check_level(xi: float) -> None:
    if not (0.0 < xi < 1.0):
        raise DomainError(f"quantile level must lie strictly in (0, 1), got {xi!r}")


def _check_prob(p: float, name: str = "p") -> None:
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")


def _invert(
    cdf: Callable[[float], float],
    pdf: Callable[[float], float],
    xi: float,
    lo: float,
    hi: float,
    guess: float,
) -> float:
    """Solve ``cdf(q) = xi`` on ``[lo, hi]``, which must bracket the root."""
    q = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(MAX_ITER):
        resid = cdf(q) - xi
        if resid == 0.0:
            return q
        if resid > 0:
            hi = q
        else:
            lo = q
        if hi - lo <= WIDTH_ULPS * math.ulp(q):
            return q
        dens = pdf(q)
        step = resid / dens if dens > 0 and math.isfinite(dens) else math.inf
        candidate = q - step
        if not (lo < candidate < hi) or not math.isfinite(candidate):
            candidate = 0.5 * (lo + hi)
        elif abs(resid) <= RESID_TOL:
            # One Newton step past the tolerance lands at working precision.
            return candidate
        q = candidate
    return q


# -- gamma ------------------------------------------------------------------


def gamma_cdf(q: float, params: GammaParams) -> float:
    if q <= 0:
        return 0.0
    return reg_inc_gamma_lower(params.shape, q / params.scale)


def _gamma_pdf(q: float, params: GammaParams) -> float:
    if q <= 0:
        return 0.0
    a, s = params.shape, params.scale
    z = q / s
    return math.exp((a - 1.0) * math.log(z) - z - ln_gamma(a)) / s


def gamma_quantile(xi: float, params: GammaParams) -> float:
    """``xi`` quantile of the gamma distribution (shape, scale)."""
    _check_level(xi)
    a, s = params.shape, params.scale
    hi = a * s * 64.0
    while gamma_cdf(hi, params) < xi:
        hi *= 2.0
    # Wilson-Hilferty start.
    z = normal_quantile_approx(xi)
    t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * math.sqrt(a))
    guess = a * s * t**3 if t > 0 else a * s * 0.5
    return _invert(
        lambda q: gamma_cdf(q, params),
        lambda q: _gamma_pdf(q, params),
        xi,
        0.0,
        hi,
        guess,
    )


def chi2_quantile(xi: float, df: float) -> float:
    return gamma_quantile(xi, GammaParams(df / 2.0, 2.0))


# -- beta and F -------------------------------------------------------------


def _beta_pdf(y: float, a: float, b: float) -> float:
    if y <= 0.0 or y >= 1.0:
        return 0.0
    return math.exp((a - 1.0) * math.log(y) + (b - 1.0) * math.log1p(-y) - ln_beta(a, b))


def _beta_guess(xi: float, a: float, b: float) -> float:
    # Starting point after Numerical Recipes' invbetai.
    if a >= 1.0 and b >= 1.0:
        pp = xi if xi < 0.5 else 1.0 - xi
        t = math.sqrt(-2.0 * math.log(pp))
        x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if xi < 0.5:
            x = -x
        al = (x * x - 3.0) / 6.0
        h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0))
        w = x * math.sqrt(al + h) / h - (1.0 / (2.0 * b - 1) - 1.0 / (2.0 * a - 1.0)) * (
            al + 5.0 / 6.0 - 2.0 / (3.0 * h)
        )
        return a / (a + b * math.exp(2.0 * w))
    lna = math.log(a / (a + b))
    lnb = math.log(b / (a + b))
    t = math.exp(a * lna) / a
    u = math.exp(b * lnb) / b
    w = t + u
    if xi < t / w:
        return (a * w * xi) ** (1.0 / a)
    return 1.0 - (b * w * (1.0 - xi)) ** (1.0 / b)


def beta_quantile(xi: float, a: float, b: float) -> float:
    """``xi`` quantile of Beta(a, b), i.e. the ``y`` with ``I_y(a, b) = xi``."""
    _check_level(xi)
    if not (a > 0 and b > 0):
        raise DomainError(f"beta parameters must be > 0, got a={a!r}, b={b!r}")
    return _invert(
        lambda y: reg_inc_beta(y, a, b),
        lambda y: _beta_pdf(y, a, b),
        xi,
        0.0,
        1.0,
        _beta_guess(xi, a, b),
    )


def f_cdf(q: float, params: FParams) -> float:
    if q <= 0:
        return 0.0
    if q == math.inf:
        return 1.0
    nu1, nu2 = params.nu1, params.nu2
    num = nu1 * q
    if num <= nu2:
        return reg_inc_beta(num / (num + nu2), nu1 / 2.0, nu2 / 2.0)
    return 1.0 - reg_inc_beta(nu2 / (num + nu2), nu2 / 2.0, nu1 / 2.0)


def f_quantile(xi: float, params: FParams) -> float:
    """``xi`` quantile of the F distribution with ``(nu1, nu2)`` degrees of freedom.

    Inverts the incomplete beta for ``y`` and maps back with
    ``q = nu2 * y / (nu1 * (1 - y))``. When ``y`` lands above one half the
    complementary problem is solved instead so that ``1 - y`` keeps its
    relative precision.
    """
    _check_level(xi)
    a, b = params.nu1 / 2.0, params.nu2 / 2.0
    y = beta_quantile(xi, a, b)
    if y <= 0.5:
        return params.nu2 * y / (params.nu1 * (1.0 - y))
    w = beta_quantile(1.0 - xi, b, a)
    return params.nu2 * (1.0 - w) / (params.nu1 * w)


# -- normal -----------------------------------------------------------------


def normal_quantile_approx(xi: float) -> float:
    """Rough normal quantile (~4.5e-4 absolute); used only as a starting guess."""
    pp = xi if xi < 0.5 else 1.0 - xi
    t = math.sqrt(-2.0 * math.log(pp))
    x = t - (2.515517 + t * (0.802853 + t * 0.010328)) / (
        1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))
    )
    return -x if xi < 0.5 else x


def normal_cdf(z: float) -> float:
    # Phi(z) = (1 + sign(z) P(1/2, z^2/2)) / 2
    if z == 0.0:
        return 0.5
    tail = 0.5 * reg_inc_gamma_upper(0.5, 0.5 * z * z)
    return 1.0 - tail if z > 0 else tail


def normal_quantile(xi: float) -> float:
    """Standard normal quantile through the chi-square(1) quantile."""
    _check_level(xi)
    if xi == 0.5:
        return 0.0
    level = abs(2.0 * xi - 1.0)
    z = math.sqrt(2.0 * gamma_quantile(level, GammaParams(0.5, 1.0)))
    return z if xi > 0.5 else -z


# -- discrete ---------------------------------------------------------------


def binomial_cdf(k: int, n: int, p: float) -> float:
    if k < 0:
        return 0.0
    if k >= n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0
    return reg_inc_beta(1.0 - p, n - k, k + 1) if p > 0.5 else 1.0 - reg_inc_beta(p, k + 1, n - k)


def poisson_cdf(k: int, mean: float) -> float:
    if k < 0:
        return 0.0
    if mean == 0.0:
        return 1.0
    return reg_inc_gamma_upper(k + 1, mean)


def negbinomial_cdf(k: int, size: int, p: float) -> float:
    """P(Y <= k) for Y counting failures before the ``size``-th success."""
    if k < 0:
        return 0.0
    if p == 1.0:
        return 1.0
    if p == 0.0:
        return 0.0
    return reg_inc_beta(p, size, k + 1)


def _scan(xi: float, pmf0: float, ratio: Callable[[int], float], kmax: int | None) -> int:
    # pmf(k + 1) = pmf(k) * ratio(k); accumulate until the CDF reaches xi.
    xi *= TIE_FUZZ
    k = 0
    pmf = pmf0
    cdf = pmf0
    while cdf < xi:
        if kmax is not None and k >= kmax:
            return kmax
        pmf *= ratio(k)
        k += 1
        cdf += pmf
        if pmf == 0.0 and k > 0:
            # Rounding kept the running sum a hair below xi.
            return k
    return k


def _step_from_guess(
    xi: float,
    guess: int,
    cdf: Callable[[int], float],
    log_pmf: Callable[[int], float],
    kmax: int | None,
) -> int:
    xi *= TIE_FUZZ
    k = max(0, guess if kmax is None else min(guess, kmax))
    c = cdf(k)
    if c >= xi:
        while k > 0:
            below = c - math.exp(log_pmf(k))
            if below < xi:
                break
            c = below
            k -= 1
        return k
    while c < xi:
        if kmax is not None and k >= kmax:
            return kmax
        k += 1
        c += math.exp(log_pmf(k))
    return k


def binomial_quantile(xi: float, n: int, p: float) -> int:
    """Smallest ``k`` in ``[0, n]`` with ``P(X <= k) >= xi`` for X ~ Bin(n, p)."""
    _check_level(xi)
    _check_prob(p)
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if p == 0.0:
        return 0
    if p == 1.0:
        return n
    q = 1.0 - p
    pmf0 = math.exp(n * math.log1p(-p))
    mean = n * p
    if pmf0 > 1e-280 and mean <= SCAN_MEAN_LIMIT:
        return _scan(xi, pmf0, lambda k: (n - k) / (k + 1) * p / q, n)
    sd = math.sqrt(mean * q)
    guess = int(math.floor(mean + normal_quantile_approx(xi) * sd + 0.5))
    log_p, log_q = math.log(p), math.log1p(-p)

    def log_pmf(k: int) -> float:
        return ln_gamma(n + 1) - ln_gamma(k + 1) - ln_gamma(n - k + 1) + k * log_p + (n - k) * log_q

    return _step_from_guess(xi, guess, lambda k: binomial_cdf(k, n, p), log_pmf, n)


def poisson_quantile(xi: float, mean: float) -> int:
    """Smallest ``k`` with ``P(X <= k) >= xi`` for X ~ Poisson(mean)."""
    _check_level(xi)
    if not (mean >= 0 and math.isfinite(mean)):
        raise DomainError(f"Poisson mean must be >= 0, got {mean!r}")
    if mean == 0.0:
        return 0
    if mean <= SCAN_MEAN_LIMIT:
        return _scan(xi, math.exp(-mean), lambda k: mean / (k + 1), None)
    guess = int(math.floor(mean + normal_quantile_approx(xi) * math.sqrt(mean) + 0.5))
    log_mean = math.log(mean)
    return _step_from_guess(
        xi,
        guess,
        lambda k: poisson_cdf(k, mean),
        lambda k: k * log_mean - mean - ln_gamma(k + 1),
        None,
    )


def negbinomial_quantile(xi: float, size: int, p: float) -> int:
    """Smallest ``k`` with ``P(Y <= k) >= xi``, Y ~ NB(size, p) counting failures."""
    _check_level(xi)
    if not (0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    if size < 1 or int(size) != size:
        raise DomainError(f"size must be a positive integer, got {size!r}")
    size = int(size)
    if p == 1.0:
        return 0
    q = 1.0 - p
    pmf0 = math.exp(size * math.log(p))
    mean = size * q / p
    if pmf0 > 1e-280 and mean <= SCAN_MEAN_LIMIT:
        return _scan(xi, pmf0, lambda k: (size + k) / (k + 1) * q, None)
    sd = math.sqrt(size * q) / p
    guess = int(math.floor(mean + normal_quantile_approx(xi) * sd + 0.5))
    log_p, log_q = math.log(p), math.log1p(-p)

    def log_pmf(k: int) -> float:
        return ln_gamma(size + k) - ln_gamma(k + 1) - ln_gamma(size) + size * log_p + k * log_q

    return _step_from_guess(xi, guess, lambda k: negbinomial_cdf(k, size, p), log_pmf, None)
