"""Exit criteria. Each test's first docstring line is echoed in the run summary."""

import json
import math
import time
from pathlib import Path

import pytest

from attrlimits.cli import main
from attrlimits.fiducial import (
    BinomialObservation,
    GeometricObservation,
    PoissonObservation,
    binom_fiducial,
    binom_fiducial_oracle,
    geometric_fiducial,
    geometric_fiducial_oracle,
    geometric_upper_candidates,
    poisson_fiducial,
    poisson_fiducial_oracle,
)
from attrlimits.quantiles import (
    FParams,
    binomial_quantile,
    f_cdf,
    f_quantile,
    negbinomial_quantile,
    poisson_quantile,
)
from attrlimits.simulation import run_coverage
from attrlimits.special import reg_inc_beta, reg_inc_gamma_lower

from oracles import binom_cdf, binom_sf_ge, negbin_cdf, poisson_cdf

pytestmark = pytest.mark.acceptance

GOLDEN = Path(__file__).parent / "golden"
DATA = Path(__file__).parent / "data"
ALPHAS = (0.01, 0.05, 0.10)
TOL = 1e-9
XI_GRID = (0.001, 0.01, 0.025, 0.05, 0.5, 0.95, 0.975, 0.99, 0.999)
SEED = 7
REPS = 100_000
COVERAGE_FLOOR = 0.95 - 3 * math.sqrt(0.95 * 0.05 / REPS)


def _binomial_grid():
    for alpha in ALPHAS:
        for n in range(1, 26):
            for x in range(1, n):
                yield alpha, BinomialObservation(n, x)


def test_ac01_binomial_closed_form_matches_tail_bisection():
    """AC1 binomial F-quantile limits equal tail-bisection limits within 1e-9 (n<=25, 3 alphas, <10 s)"""
    start = time.perf_counter()
    worst, cases = 0.0, 0
    for alpha, obs in _binomial_grid():
        a, b = binom_fiducial(obs, alpha), binom_fiducial_oracle(obs, alpha)
        worst = max(worst, abs(a.lower - b.lower), abs(a.upper - b.upper))
        cases += 1
    elapsed = time.perf_counter() - start
    assert cases == 900
    assert worst <= TOL
    assert elapsed < 10.0


def test_ac02_binomial_tail_residuals():
    """AC2 lower limit in P(X>=x) and upper limit in P(X<=x) return alpha/2 within 1e-9"""
    worst = 0.0
    for alpha, obs in _binomial_grid():
        iv = binom_fiducial(obs, alpha)
        worst = max(
            worst,
            abs(binom_sf_ge(obs.x, obs.n, iv.lower) - alpha / 2),
            abs(binom_cdf(obs.x, obs.n, iv.upper) - alpha / 2),
        )
    assert worst <= TOL


def test_ac03_poisson_closed_form_matches_tail_bisection():
    """AC3 Poisson gamma-quantile limits equal tail-bisection limits within 1e-9 (n<=10, y<=40, <10 s)"""
    start = time.perf_counter()
    worst = 0.0
    for alpha in ALPHAS:
        for n in range(1, 11):
            for y in range(0, 41):
                obs = PoissonObservation(n, y)
                a, b = poisson_fiducial(obs, alpha), poisson_fiducial_oracle(obs, alpha)
                worst = max(worst, abs(a.lower - b.lower), abs(a.upper - b.upper))
    assert worst <= TOL
    assert time.perf_counter() - start < 10.0


def test_ac04_geometric_upper_form_resolution():
    """AC4 exactly one reading of the geometric upper limit matches the NB oracle; adopted form in [0,1]"""
    matches = {"reciprocal": True, "direct": True}
    lower_worst = 0.0
    for alpha in ALPHAS:
        for n in range(1, 11):
            for y in range(1, 41):
                obs = GeometricObservation(n, y)
                oracle = geometric_fiducial_oracle(obs, alpha)
                for name, value in geometric_upper_candidates(n, y, alpha).items():
                    if abs(value - oracle.upper) > TOL:
                        matches[name] = False
                adopted = geometric_fiducial(obs, alpha)
                assert 0.0 <= adopted.lower <= adopted.upper <= 1.0
                assert adopted.upper == geometric_upper_candidates(n, y, alpha)["direct"]
                lower_worst = max(lower_worst, abs(adopted.lower - oracle.lower))
    assert sum(matches.values()) == 1, matches
    assert matches["direct"]
    assert lower_worst <= TOL


EDGE_CASES = [
    (1, 0.05),
    (2, 0.01),
    (3, 0.1),
    (4, 0.2),
    (5, 0.05),
    (6, 0.0027),
    (7, 0.5),
    (8, 0.3),
    (10, 0.05),
    (12, 0.01),
    (15, 0.1),
    (20, 0.05),
    (25, 0.001),
    (30, 0.05),
    (40, 0.9),
    (50, 0.05),
    (75, 0.02),
    (100, 0.05),
    (250, 0.1),
    (1000, 0.01),
]


def test_ac05_edge_conventions_exact():
    """AC5 binom x=0 lower=0, x=n upper=1, Poisson y=0 lower=0, geometric y=0 upper=1, exactly, 20 (n, alpha)"""
    assert len(EDGE_CASES) == 20
    for n, alpha in EDGE_CASES:
        assert binom_fiducial(BinomialObservation(n, 0), alpha).lower == 0.0
        assert binom_fiducial(BinomialObservation(n, n), alpha).upper == 1.0
        assert poisson_fiducial(PoissonObservation(n, 0), alpha).lower == 0.0
        assert geometric_fiducial(GeometricObservation(n, 0), alpha).upper == 1.0


def test_ac06_analytic_spot_values():
    """AC6 binom upper at x=0 is 1-(alpha/2)^(1/n) and Poisson upper at y=0, n=1 is -ln(alpha/2), within 1e-12"""
    for n, alpha in EDGE_CASES:
        upper = binom_fiducial(BinomialObservation(n, 0), alpha).upper
        assert abs(upper - (1 - (alpha / 2) ** (1 / n))) <= 1e-12
    for alpha in (0.001, 0.01, 0.05, 0.1, 0.3, 0.9):
        upper = poisson_fiducial(PoissonObservation(1, 0), alpha).upper
        assert abs(upper + math.log(alpha / 2)) <= 1e-12


def _galois(q, cdf, xi):
    return cdf(q) >= xi and (q == 0 or cdf(q - 1) < xi)


def test_ac07_discrete_quantile_galois():
    """AC7 binomial/Poisson/NB quantiles satisfy CDF(Q)>=xi>CDF(Q-1) against CDF-scan oracles"""
    probs = (0.02, 0.1, 0.25, 0.5, 0.75, 0.95)
    means = (0.1, 0.5, 1, 2.5, 4, 7.5, 12, 20, 30)
    for xi in XI_GRID:
        for n in range(1, 31):
            for p in probs:
                assert _galois(binomial_quantile(xi, n, p), lambda k: binom_cdf(k, n, p), xi)
                assert _galois(negbinomial_quantile(xi, n, p), lambda k: negbin_cdf(k, n, p), xi)
        for mean in means:
            assert _galois(poisson_quantile(xi, mean), lambda k: poisson_cdf(k, mean), xi)


def test_ac08_special_function_accuracy():
    """AC8 incomplete beta/gamma match binomial/Poisson tail sums within 1e-11; F round-trip within 1e-12"""
    worst_beta = 0.0
    for n in range(1, 26):
        for x in range(1, n + 1):
            for i in range(1, 20):
                p = 0.05 * i
                worst_beta = max(
                    worst_beta, abs(reg_inc_beta(p, x, n - x + 1) - binom_sf_ge(x, n, p))
                )
    worst_gamma = 0.0
    for y in range(1, 51):
        for mu in (0.01, 0.1, 0.5, 1, 2, 5, 10, 20, 35, 50, 75):
            worst_gamma = max(
                worst_gamma, abs(reg_inc_gamma_lower(y, mu) - (1 - poisson_cdf(y - 1, mu)))
            )
    worst_f = 0.0
    for nu1 in (1, 2, 3, 6, 10, 24, 50):
        for nu2 in (1, 2, 4, 9, 20, 52):
            params = FParams(nu1, nu2)
            for xi in XI_GRID:
                worst_f = max(worst_f, abs(f_cdf(f_quantile(xi, params), params) - xi))
    assert worst_beta <= 1e-11
    assert worst_gamma <= 1e-11
    assert worst_f <= 1e-12


def test_ac09_monte_carlo_coverage():
    """AC9 fiducial coverage >= 0.95 - 3 SE for binomial, Poisson, geometric at 100k reps in < 60 s"""
    start = time.perf_counter()
    reports = [
        run_coverage("binom", 0.1, 50, 0.05, REPS, SEED),
        run_coverage("poisson", 1.5, 4, 0.05, REPS, SEED),
        run_coverage("geom", 0.3, 5, 0.05, REPS, SEED),
    ]
    assert time.perf_counter() - start < 60.0
    assert COVERAGE_FLOOR == pytest.approx(0.9479, abs=1e-4)
    for r in reports:
        assert r.fiducial_coverage >= COVERAGE_FLOOR, r


def test_ac10_normal_undercovers_sparse_binomial():
    """AC10 normal-approximation coverage < fiducial coverage at binomial n=50, p=0.02, matching the frozen report"""
    r = run_coverage("binom", 0.02, 50, 0.05, REPS, SEED)
    assert r.normal_coverage < r.fiducial_coverage
    frozen = json.loads((GOLDEN / "simulate_binom_p0.02_n50.json").read_text())
    assert frozen["normal_coverage"] < frozen["fiducial_coverage"]
    assert r.normal_coverage == frozen["normal_coverage"]
    assert r.fiducial_coverage == frozen["fiducial_coverage"]


def _cli(argv):
    import io

    out, err = io.StringIO(), io.StringIO()
    assert main(argv, out, err) == 0, err.getvalue()
    return out.getvalue()


def test_ac11_cli_golden_files():
    """AC11 limits, chart and simulate reproduce their golden JSON byte for byte"""
    cases = [
        (
            ["limits", "binom", "--n", "50", "--x", "4", "--alpha", "0.05"],
            "limits_binom_n50_x4.json",
        ),
        (
            ["chart", "--kind", "p", "--input", str(DATA / "subgroups.csv"), "--alpha", "0.0027"],
            "chart_p_estimated.json",
        ),
        (
            [
                "simulate",
                "binom",
                "--param",
                "0.1",
                "--n",
                "50",
                "--alpha",
                "0.05",
                "--reps",
                str(REPS),
                "--seed",
                str(SEED),
            ],
            "simulate_binom_p0.1_n50.json",
        ),
    ]
    for argv, name in cases:
        assert _cli(argv).encode() == (GOLDEN / name).read_bytes(), name
