"""Exact and fiducial control limits for binomial, Poisson and geometric count data."""

from .charts import ChartKind, ChartResult, Dataset, Record, build_chart, exact_limits_known
from .fiducial import (
    BinomialObservation,
    GeometricObservation,
    Interval,
    PoissonObservation,
    binom_fiducial,
    binom_fiducial_oracle,
    geometric_fiducial,
    geometric_fiducial_oracle,
    poisson_fiducial,
    poisson_fiducial_oracle,
)
from .simulation import CoverageReport, normal_approx_interval, run_coverage
from .special import ConvergenceError, DomainError

__version__ = "0.1.0"

__all__ = [
    "BinomialObservation",
    "ChartKind",
    "ChartResult",
    "ConvergenceError",
    "CoverageReport",
    "Dataset",
    "DomainError",
    "GeometricObservation",
    "Interval",
    "PoissonObservation",
    "Record",
    "binom_fiducial",
    "binom_fiducial_oracle",
    "build_chart",
    "exact_limits_known",
    "geometric_fiducial",
    "geometric_fiducial_oracle",
    "normal_approx_interval",
    "poisson_fiducial",
    "poisson_fiducial_oracle",
    "run_coverage",
]
