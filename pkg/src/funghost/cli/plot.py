"""
报告的 SVG 图，依赖可选的 matplotlib(pip install funghost[plot])
"""

import math
from typing import Optional

from funutil import getLogger

from .output import Report

logger = getLogger("funghost")


def _finite(x) -> bool:
    return x is not None and math.isfinite(float(x))


def _error_curve(ax, report: Report) -> None:
    ok = [r for r in report.rows if not r["diverged"] and _finite(r["abs_error"]) and r["abs_error"] > 0]
    bad = [r for r in report.rows if r["diverged"]]
    ax.loglog([r["steps"] for r in ok], [r["abs_error"] for r in ok], "o-", label="|V - V_ref|")
    if bad:
        top = max((r["abs_error"] for r in ok), default=1.0)
        ax.scatter([r["steps"] for r in bad], [top] * len(bad), marker="x", color="red", label="diverged")
    threshold = report.meta.get("n_min_ghost")
    if threshold:
        ax.axvline(threshold, color="gray", linestyle="--", label="ghost threshold")
    ax.set_xlabel("time steps N")
    ax.set_ylabel("absolute error at S(0)")


def _table1(ax, report: Report) -> None:
    xs = [r["eps_ratio"] for r in report.rows]
    ax.loglog(xs, [r["n_theoretical"] for r in report.rows], "o-", label="theoretical")
    actual = [(r["eps_ratio"], r["n_actual"]) for r in report.rows if r.get("n_actual")]
    if actual:
        ax.loglog(*zip(*actual), "s--", label="actual")
    ax.set_xlabel("eps / dS")
    ax.set_ylabel("minimum time steps")


def _profile(ax, report: Report) -> None:
    for step in sorted({r["step"] for r in report.rows}):
        rows = [r for r in report.rows if r["step"] == step]
        ax.plot([r["s"] for r in rows], [r["value"] for r in rows], "o-", label=f"k={step}")
    barrier = report.meta.get("barrier")
    if barrier:
        ax.axvline(barrier, color="gray", linestyle="--", label="barrier")
    ax.set_xlabel("S")
    ax.set_ylabel("V")


def _stability(ax, report: Report) -> None:
    xs = [r["eps_ratio"] for r in report.rows]
    ax.loglog(xs, [r["dt_ghost"] for r in report.rows], "o-", label="exact")
    asym = [(r["eps_ratio"], r["dt_asymptotic"]) for r in report.rows if _finite(r.get("dt_asymptotic"))]
    if asym:
        ax.loglog(*zip(*asym), "--", label="asymptotic")
    ax.set_xlabel("eps / dS")
    ax.set_ylabel("max dt")


PLOTTERS = {
    "error-curve": _error_curve,
    "table1": _table1,
    "profile": _profile,
    "stability": _stability,
}


def plot_report(report: Report, path: str) -> Optional[str]:
    """
    把报告画成 SVG
    :return: 写出的文件路径，不支持的子命令或缺少 matplotlib 时返回 None
    """
    plotter = PLOTTERS.get(report.command)
    if plotter is None:
        logger.info(f"no plot for {report.command}")
        return None
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        logger.warning("matplotlib is not installed, skipping svg; pip install funghost[plot]")
        return None

    fig, ax = plt.subplots(figsize=(7, 4.5))
    plotter(ax, report)
    ax.set_title(report.command)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.success(f"{report.command}: wrote plot to {path}")
    return path
