"""Attribute control charts (p, np, c, u, g) with exact quantile limits.

With a known parameter, each subgroup's limits are the ``alpha/2`` and
``1 - alpha/2`` quantiles of the count distribution at that subgroup's size.
Without one, the parameter is pooled from the data and plugged into the
same quantiles; the fiducial interval for the pooled parameter travels
along in ``parameter_source`` and does not widen the limits.

Statistic scales per chart:

====  ==============================  =====================================
kind  plotted statistic               count distribution at subgroup size m
====  ==============================  =====================================
P     count / m                       Bin(m, p)
NP    count                           Bin(m, p)
C     count                           Poisson(lam * m)
U     count / m                       Poisson(lam * m)
G     count (failures in m draws)     NB(m, p), failures before m-th success
====  ==============================  =====================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .fiducial import (
    BinomialObservation,
    GeometricObservation,
    Interval,
    PoissonObservation,
    binom_fiducial,
    geometric_fiducial,
    poisson_fiducial,
)
from .quantiles import binomial_quantile, negbinomial_quantile, poisson_quantile
from .special import DomainError

__all__ = [
    "DEFAULT_ALPHA",
    "ChartKind",
    "ChartPoint",
    "ChartResult",
    "Dataset",
    "ParameterSource",
    "Record",
    "build_chart",
    "exact_limits_known",
]

# Two-sided tail mass outside +/- 3 sigma of a normal.
DEFAULT_ALPHA = 0.0027


class ChartKind(str, Enum):
    P = "p"
    NP = "np"
    C = "c"
    U = "u"
    G = "g"

    @property
    def scaled(self) -> bool:
        return self in (ChartKind.P, ChartKind.U)

    @property
    def binomial(self) -> bool:
        return self in (ChartKind.P, ChartKind.NP)


@dataclass(frozen=True)
class Record:
    subgroup: str
    count: int
    size: int


@dataclass(frozen=True)
class Dataset:
    records: tuple[Record, ...]

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        for r in self.records:
            if r.count < 0:
                raise DomainError(f"subgroup {r.subgroup!r}: count must be >= 0")
            if r.size < 1:
                raise DomainError(f"subgroup {r.subgroup!r}: size must be >= 1")

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_count(self) -> int:
        return sum(r.count for r in self.records)

    @property
    def total_size(self) -> int:
        return sum(r.size for r in self.records)


@dataclass(frozen=True)
class ParameterSource:
    """Where the chart's parameter came from.

    ``kind`` is ``"known"`` or ``"estimated"``; ``interval`` is only set for
    estimated parameters.
    """

    kind: str
    value: float
    interval: Interval | None = None


@dataclass(frozen=True)
class ChartPoint:
    subgroup: str
    statistic: float
    center: float
    lcl: float
    ucl: float
    signal: bool


@dataclass(frozen=True)
class ChartResult:
    kind: ChartKind
    center: float
    alpha: float
    parameter_source: ParameterSource
    points: list[ChartPoint] = field(default_factory=list)

    @property
    def signals(self) -> list[ChartPoint]:
        return [p for p in self.points if p.signal]


def _check_param(kind: ChartKind, param: float) -> None:
    if not math.isfinite(param):
        raise DomainError(f"parameter must be finite, got {param!r}")
    if kind.binomial and not 0.0 <= param <= 1.0:
        raise DomainError(f"{kind.value} chart parameter p must lie in [0, 1], got {param}")
    if kind in (ChartKind.C, ChartKind.U) and param < 0:
        raise DomainError(f"{kind.value} chart rate must be >= 0, got {param}")
    if kind is ChartKind.G and not 0.0 < param <= 1.0:
        raise DomainError(f"g chart parameter p must lie in (0, 1], got {param}")


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly in (0, 1), got {alpha!r}")


def exact_limits_known(
    kind: ChartKind | str, param: float, size: int, alpha: float
) -> tuple[float, float]:
    """Quantile control limits on the plotted scale for one subgroup of ``size``."""
    kind = ChartKind(kind)
    _check_param(kind, param)
    _check_alpha(alpha)
    if int(size) != size or size < 1:
        raise DomainError(f"size must be a positive integer, got {size!r}")
    lo_level, hi_level = alpha / 2.0, 1.0 - alpha / 2.0
    if kind.binomial:
        lcl = binomial_quantile(lo_level, size, param)
        ucl = binomial_quantile(hi_level, size, param)
    elif kind is ChartKind.G:
        lcl = negbinomial_quantile(lo_level, size, param)
        ucl = negbinomial_quantile(hi_level, size, param)
    else:
        mean = param * size
        lcl = poisson_quantile(lo_level, mean)
        ucl = poisson_quantile(hi_level, mean)
    if kind.scaled:
        return lcl / size, ucl / size
    return float(lcl), float(ucl)


def _expected(kind: ChartKind, param: float, size: int) -> float:
    if kind is ChartKind.P or kind is ChartKind.U:
        return param
    if kind is ChartKind.NP or kind is ChartKind.C:
        return param * size
    return size * (1.0 - param) / param


def _estimate(kind: ChartKind, data: Dataset, alpha: float) -> ParameterSource:
    total, size = data.total_count, data.total_size
    if kind.binomial:
        interval = binom_fiducial(BinomialObservation(size, total), alpha)
        return ParameterSource("estimated", total / size, interval)
    if kind is ChartKind.G:
        interval = geometric_fiducial(GeometricObservation(size, total), alpha)
        return ParameterSource("estimated", size / (size + total), interval)
    interval = poisson_fiducial(PoissonObservation(size, total), alpha)
    return ParameterSource("estimated", total / size, interval)


def build_chart(
    data: Dataset,
    kind: ChartKind | str,
    alpha: float = DEFAULT_ALPHA,
    known_param: float | None = None,
) -> ChartResult:
    """Build one chart.

    Each point carries its own center line (expected statistic at its
    subgroup size). ``ChartResult.center`` is that line for p and u charts,
    and its value at the mean subgroup size for np, c and g charts.
    """
    kind = ChartKind(kind)
    _check_alpha(alpha)
    if len(data) == 0:
        raise DomainError("no records")
    if kind.binomial:
        for r in data.records:
            if r.count > r.size:
                raise DomainError(f"subgroup {r.subgroup!r}: count {r.count} exceeds size {r.size}")
    if known_param is not None:
        _check_param(kind, known_param)
        source = ParameterSource("known", float(known_param))
    else:
        source = _estimate(kind, data, alpha)
    param = source.value

    limits: dict[int, tuple[float, float]] = {}
    points = []
    for r in data.records:
        if r.size not in limits:
            limits[r.size] = exact_limits_known(kind, param, r.size, alpha)
        lcl, ucl = limits[r.size]
        stat = r.count / r.size if kind.scaled else float(r.count)
        points.append(
            ChartPoint(
                subgroup=r.subgroup,
                statistic=stat,
                center=_expected(kind, param, r.size),
                lcl=lcl,
                ucl=ucl,
                signal=stat < lcl or stat > ucl,
            )
        )
    mean_size = data.total_size / len(data)
    if kind.scaled:
        center = param
    elif kind is ChartKind.G:
        center = mean_size * (1.0 - param) / param
    else:
        center = param * mean_size
    return ChartResult(
        kind=kind, center=center, alpha=alpha, parameter_source=source, points=points
    )
