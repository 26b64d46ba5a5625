"""Fiducial (exact equal-tail) limits for binomial, Poisson and geometric data.

Each distribution gets two routes to the same interval:

* a closed form through F or gamma quantiles (``*_fiducial``), and
* a brute-force oracle that bisects the defining tail equations, with the
  tails summed term by term (``*_fiducial_oracle``).

The two share no numerical code beyond ``math``; the test suite holds them
to agreement within 1e-9.

Geometric data count failures before the first success, so ``Y = sum(X_j)``
over ``n`` observations is negative binomial NB(n, p) on ``{0, 1, ...}``.
The geometric upper limit is ``n F / (y + n F)`` with ``F`` the ``1 - alpha/2``
quantile of F(2n, 2y). The reciprocal of that expression exceeds one, so it
is kept only as :func:`geometric_upper_reciprocal` for the form check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .quantiles import FParams, GammaParams, f_quantile, gamma_quantile
from .special import DomainError

__all__ = [
    "BinomialObservation",
    "GeometricObservation",
    "Interval",
    "PoissonObservation",
    "binom_fiducial",
    "binom_fiducial_oracle",
    "binom_tail_ge",
    "binom_tail_le",
    "geometric_fiducial",
    "geometric_fiducial_oracle",
    "geometric_upper_candidates",
    "geometric_upper_reciprocal",
    "negbin_tail_le",
    "poisson_fiducial",
    "poisson_fiducial_oracle",
    "poisson_tail_le",
]

ORACLE_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float
    confidence: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise DomainError(f"interval lower {self.lower} exceeds upper {self.upper}")
        if not 0.0 < self.confidence < 1.0:
            raise DomainError(f"confidence must lie in (0, 1), got {self.confidence}")

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _check_count(name: str, value: int, minimum: int) -> None:
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")


@dataclass(frozen=True)
class BinomialObservation:
    n: int
    x: int

    def __post_init__(self):
        _check_count("n", self.n, 1)
        _check_count("x", self.x, 0)
        if self.x > self.n:
            raise DomainError(f"x must not exceed n (x={self.x}, n={self.n})")


@dataclass(frozen=True)
class PoissonObservation:
    n: int
    y: int

    def __post_init__(self):
        _check_count("n", self.n, 1)
        _check_count("y", self.y, 0)


@dataclass(frozen=True)
class GeometricObservation:
    n: int
    y: int

    def __post_init__(self):
        _check_count("n", self.n, 1)
        _check_count("y", self.y, 0)


def _check_alpha(alpha: float) -> None:
    if not (isinstance(alpha, (int, float)) and 0.0 < alpha < 1.0):
        raise DomainError(f"alpha must lie strictly in (0, 1), got {alpha!r}")


# -- closed forms -----------------------------------------------------------


def binom_fiducial(obs: BinomialObservation, alpha: float) -> Interval:
    """Equal-tail limits for a binomial proportion via F quantiles.

    Lower is 0 at ``x = 0`` and upper is 1 at ``x = n``.
    """
    _check_alpha(alpha)
    n, x = obs.n, obs.x
    if x == 0:
        lower = 0.0
    else:
        f = f_quantile(alpha / 2.0, FParams(2 * x, 2 * (n - x + 1)))
        lower = 1.0 / (1.0 + (n - x + 1) / (x * f))
    if x == n:
        upper = 1.0
    else:
        f = f_quantile(1.0 - alpha / 2.0, FParams(2 * (x + 1), 2 * (n - x)))
        upper = 1.0 / (1.0 + (n - x) / ((x + 1) * f))
    return Interval(lower, upper, 1.0 - alpha)


def poisson_fiducial(obs: PoissonObservation, alpha: float) -> Interval:
    """Garwood limits for the per-observation Poisson mean.

    Uses shape-scale gamma quantiles with scale 2, i.e. chi-square with
    ``2y`` and ``2(y + 1)`` degrees of freedom, divided by ``2n``.
    """
    _check_alpha(alpha)
    n, y = obs.n, obs.y
    lower = 0.0 if y == 0 else gamma_quantile(alpha / 2.0, GammaParams(y, 2.0)) / (2.0 * n)
    upper = gamma_quantile(1.0 - alpha / 2.0, GammaParams(y + 1, 2.0)) / (2.0 * n)
    return Interval(lower, upper, 1.0 - alpha)


def _geometric_lower(n: int, y: int, alpha: float) -> float:
    f = f_quantile(1.0 - alpha / 2.0, FParams(2 * (y + 1), 2 * n))
    return 1.0 / (1.0 + (y + 1) / n * f)


def _geometric_upper_f(n: int, y: int, alpha: float) -> float:
    return f_quantile(1.0 - alpha / 2.0, FParams(2 * n, 2 * y))


def geometric_upper_reciprocal(n: int, y: int, alpha: float) -> float:
    """The upper-limit expression with an outer reciprocal: ``(y + nF) / (nF)``.

    Always >= 1, so never a probability; exists for the form check only.
    """
    f = _geometric_upper_f(n, y, alpha)
    return (y + n * f) / (n * f)


def _geometric_upper(n: int, y: int, alpha: float) -> float:
    f = _geometric_upper_f(n, y, alpha)
    return n * f / (y + n * f)


def geometric_upper_candidates(n: int, y: int, alpha: float) -> dict[str, float]:
    """Both readings of the upper-limit formula, keyed ``"reciprocal"`` and ``"direct"``."""
    _check_alpha(alpha)
    if y < 1:
        raise DomainError("upper-limit candidates are defined for y >= 1")
    return {
        "reciprocal": geometric_upper_reciprocal(n, y, alpha),
        "direct": _geometric_upper(n, y, alpha),
    }


def geometric_fiducial(obs: GeometricObservation, alpha: float) -> Interval:
    """Equal-tail limits for the success probability of geometric data.

    ``obs.y`` is the total failure count over ``obs.n`` observations. The
    upper limit is 1 when ``y = 0``.
    """
    _check_alpha(alpha)
    n, y = obs.n, obs.y
    lower = _geometric_lower(n, y, alpha)
    upper = 1.0 if y == 0 else _geometric_upper(n, y, alpha)
    return Interval(lower, upper, 1.0 - alpha)


# -- oracles ----------------------------------------------------------------


def binom_tail_le(x: int, n: int, p: float) -> float:
    """P(X <= x) by direct summation with exact binomial coefficients."""
    return math.fsum(math.comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in range(0, x + 1))


def binom_tail_ge(x: int, n: int, p: float) -> float:
    """P(X >= x) by direct summation with exact binomial coefficients."""
    return math.fsum(math.comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in range(x, n + 1))


def poisson_tail_le(y: int, mean: float) -> float:
    if y < 0:
        return 0.0
    term = math.exp(-mean)
    terms = [term]
    for k in range(1, y + 1):
        term *= mean / k
        terms.append(term)
    return math.fsum(terms)


def negbin_tail_le(y: int, n: int, p: float) -> float:
    """P(Y <= y) for Y ~ NB(n, p) counting failures, by direct summation."""
    if y < 0:
        return 0.0
    return math.fsum(math.comb(n + k - 1, k) * p**n * (1.0 - p) ** k for k in range(0, y + 1))


def _bisect(
    f: Callable[[float], float], lo: float, hi: float, tol: float, relative: bool = False
) -> float:
    """Root of ``f`` on ``[lo, hi]`` where ``f(lo)`` and ``f(hi)`` differ in sign."""
    flo = f(lo)
    while True:
        mid = 0.5 * (lo + hi)
        width = hi - lo
        if width <= (tol * max(abs(mid), 1e-300) if relative else tol) or mid in (lo, hi):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid


def _assert_bracket(f: Callable[[float], float], lo: float, hi: float, what: str) -> None:
    flo, fhi = f(lo), f(hi)
    if not (flo < 0 < fhi or fhi < 0 < flo):
        raise ArithmeticError(f"{what}: tail does not cross alpha/2 on [{lo}, {hi}]")


def binom_fiducial_oracle(obs: BinomialObservation, alpha: float) -> Interval:
    """Bisect ``P(X >= x; p) = alpha/2`` for the lower and ``P(X <= x; p) = alpha/2`` for the upper."""
    _check_alpha(alpha)
    n, x = obs.n, obs.x
    half = alpha / 2.0
    if x == 0:
        lower = 0.0
    else:
        g = lambda p: binom_tail_ge(x, n, p) - half  # noqa: E731
        _assert_bracket(g, 0.0, 1.0, "binomial lower")
        lower = _bisect(g, 0.0, 1.0, ORACLE_TOL)
    if x == n:
        upper = 1.0
    else:
        h = lambda p: binom_tail_le(x, n, p) - half  # noqa: E731
        _assert_bracket(h, 0.0, 1.0, "binomial upper")
        upper = _bisect(h, 0.0, 1.0, ORACLE_TOL)
    return Interval(lower, upper, 1.0 - alpha)


def _expand_bracket(f: Callable[[float], float], hi: float) -> float:
    # f is increasing from negative at 0; double hi until it turns positive.
    while f(hi) <= 0:
        hi *= 2.0
    return hi


def poisson_fiducial_oracle(obs: PoissonObservation, alpha: float) -> Interval:
    """Bisect the Poisson tail equations in the per-observation mean."""
    _check_alpha(alpha)
    n, y = obs.n, obs.y
    half = alpha / 2.0
    start = (y + 1) / n * 2.0
    if y == 0:
        lower = 0.0
    else:
        # P(Y >= y; n lam) grows with lam.
        g = lambda lam: (1.0 - poisson_tail_le(y - 1, n * lam)) - half  # noqa: E731
        hi = _expand_bracket(g, start)
        lower = _bisect(g, 0.0, hi, ORACLE_TOL, relative=True)
    # P(Y <= y; n lam) falls with lam; negate so the bracket helper applies.
    h = lambda lam: half - poisson_tail_le(y, n * lam)  # noqa: E731
    hi = _expand_bracket(h, start)
    upper = _bisect(h, 0.0, hi, ORACLE_TOL, relative=True)
    return Interval(lower, upper, 1.0 - alpha)


def geometric_fiducial_oracle(obs: GeometricObservation, alpha: float) -> Interval:
    """Bisect the negative-binomial tail equations in p.

    Lower solves ``P(Y <= y; p) = alpha/2`` (increasing in p), upper solves
    ``P(Y >= y; p) = alpha/2`` (decreasing in p). Monotonicity is checked on
    the bracket before bisecting.
    """
    _check_alpha(alpha)
    n, y = obs.n, obs.y
    half = alpha / 2.0
    g = lambda p: negbin_tail_le(y, n, p) - half  # noqa: E731
    _assert_bracket(g, 0.0, 1.0, "geometric lower")
    lower = _bisect(g, 0.0, 1.0, ORACLE_TOL)
    if y == 0:
        upper = 1.0
    else:
        h = lambda p: (1.0 - negbin_tail_le(y - 1, n, p)) - half  # noqa: E731
        _assert_bracket(h, 0.0, 1.0, "geometric upper")
        upper = _bisect(h, 0.0, 1.0, ORACLE_TOL)
    return Interval(lower, upper, 1.0 - alpha)
