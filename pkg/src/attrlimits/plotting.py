"""Matplotlib rendering of control charts and coverage reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .charts import ChartResult  # noqa: E402
from .simulation import CoverageReport  # noqa: E402

__all__ = ["chart_figure", "coverage_figure", "save_figure"]

_STYLE = {
    "svg.hashsalt": "attrlimits",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

_LABELS = {
    "p": "fraction nonconforming",
    "np": "number nonconforming",
    "c": "defects",
    "u": "defects per unit",
    "g": "failures between successes",
}


def chart_figure(result: ChartResult, figsize=(7.0, 3.5)):
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=figsize)
        idx = np.arange(len(result.points))
        stat = np.array([p.statistic for p in result.points])
        lcl = np.array([p.lcl for p in result.points])
        ucl = np.array([p.ucl for p in result.points])
        center = np.array([p.center for p in result.points])
        sig = np.array([p.signal for p in result.points], dtype=bool)

        ax.step(idx, ucl, where="mid", color="0.35", lw=1.0, label="UCL")
        ax.step(idx, lcl, where="mid", color="0.35", lw=1.0, ls="--", label="LCL")
        ax.step(idx, center, where="mid", color="tab:green", lw=0.9, label="center")
        ax.plot(idx, stat, color="tab:blue", lw=0.8, marker="o", ms=3.5, label=result.kind.value)
        if sig.any():
            ax.plot(
                idx[sig],
                stat[sig],
                ls="none",
                marker="o",
                ms=6,
                mfc="none",
                mec="tab:red",
                mew=1.4,
                label="signal",
            )

        ax.set_xticks(idx)
        ax.set_xticklabels([p.subgroup for p in result.points], rotation=90 if len(idx) > 12 else 0)
        ax.set_xlabel("subgroup")
        ax.set_ylabel(_LABELS[result.kind.value])
        src = result.parameter_source
        ax.set_title(
            f"{result.kind.value} chart, alpha={result.alpha:g}, {src.kind} parameter {src.value:.4g}"
        )
        ax.legend(loc="best", frameon=False, fontsize=7)
        fig.tight_layout()
    return fig


def coverage_figure(report: CoverageReport, figsize=(4.0, 3.0)):
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=figsize)
        ax.bar(
            [0, 1],
            [report.fiducial_coverage, report.normal_coverage],
            color=["tab:blue", "tab:orange"],
            width=0.6,
        )
        ax.axhline(1.0 - report.alpha, color="0.3", lw=0.8, ls="--")
        ax.set_xticks([0, 1])
        ax.set_xticklabels(["fiducial", "normal"])
        ax.set_ylim(min(report.normal_coverage, 1.0 - report.alpha) - 0.05, 1.0)
        ax.set_ylabel("empirical coverage")
        ax.set_title(f"{report.distribution}, n={report.n}, param={report.true_param:g}")
        fig.tight_layout()
    return fig


def save_figure(fig, target, fmt: str | None = None) -> None:
    """Write ``fig`` to a path or binary stream.

    Date metadata is dropped so repeated runs give identical files.
    """
    if fmt is None:
        fmt = Path(target).suffix.lstrip(".").lower() if isinstance(target, (str, Path)) else "svg"
    metadata = {"Date": None} if fmt in ("svg", "pdf") else None
    with plt.rc_context(_STYLE):
        fig.savefig(target, format=fmt, metadata=metadata)
    plt.close(fig)
