"""
子命令实现，每个函数读取 RunConfig 并返回 Report
"""

from dataclasses import replace
from typing import List, Optional

import numpy as np
from funutil import getLogger
from tqdm import tqdm

from funghost.analytic import inputs_from, one_touch_price
from funghost.core import (
    BracketInvalid,
    SchemeConfig,
    SpatialGrid,
    build_barrier_on_node,
    build_uniform,
    default_smax,
)
from funghost.schemes import count_sign_changes, profile_window, read_price, solve
from funghost.stability import (
    dt_max_ghost,
    epsilon_scan,
    find_threshold,
    n_steps,
    stability_report,
)

from .config import ErrorCurveConfig, GridKind, RunConfig
from .output import Report

logger = getLogger("funghost")


def build_grid(config: RunConfig, smax: Optional[float] = None) -> SpatialGrid:
    """按配置构造网格，smax 未给出时取默认的 S_max"""
    if smax is None:
        smax = config.grid.smax or default_smax(config.market, config.contract.maturity)
    if config.grid.kind == GridKind.ON_NODE:
        return build_barrier_on_node(smax, config.grid.space_steps, config.contract.barrier)
    return build_uniform(smax, config.grid.space_steps, config.contract.barrier)


def _reference(config: RunConfig) -> float:
    return one_touch_price(inputs_from(config.market, config.contract))


def _price_row(
    config: RunConfig,
    grid: SpatialGrid,
    scheme: SchemeConfig,
    reference: float,
    progress: bool = False,
) -> dict:
    result = solve(config.market, config.contract, grid, scheme, progress=progress)
    price = None if result.diverged else read_price(result, grid, config.market.spot)
    return {
        "scheme": result["scheme"],
        "steps": scheme.steps,
        "dt": result["dt"],
        "space_steps": grid.space_steps,
        "smax": grid.smax,
        "eps_ratio": grid.epsilon_ratio,
        "price": price,
        "analytic": reference,
        "abs_error": None if price is None else abs(price - reference),
        "diverged": result.diverged,
        "diverged_at_step": result.diverged_at_step,
    }


def cmd_price(config: RunConfig) -> Report:
    """S(0) 处的有限差分价格与解析参考价"""
    grid = build_grid(config)
    row = _price_row(
        config, grid, config.scheme, _reference(config), progress=not config.output.quiet
    )
    if row["diverged"]:
        logger.info(f"price: N={row['steps']} diverged at step {row['diverged_at_step']}")
    else:
        logger.info(f"price: {row['price']:.6f} vs analytic {row['analytic']:.6f}")
    return Report(
        command="price",
        columns=list(row),
        rows=[row],
        meta={"grid": grid.describe()},
    )


def cmd_table1(config: RunConfig) -> Report:
    """不同 S_max 下 ghost 几何、理论阈值与实测阈值"""
    maturity = config.contract.maturity
    rows = []
    for smax in tqdm(config.table1.smax_values, desc="table1", disable=config.output.quiet, ncols=120):
        grid = build_uniform(smax, config.grid.space_steps, config.contract.barrier)
        row = {
            "smax": smax,
            "eps": grid.epsilon,
            "eps_ratio": grid.epsilon_ratio,
            "n_theoretical": n_steps(dt_max_ghost(grid, config.market, maturity), maturity),
            "n_actual": None,
            "status": "skipped",
        }
        if config.table1.empirical:
            try:
                row["n_actual"] = find_threshold(
                    config.market,
                    config.contract,
                    grid,
                    divergence_bound=config.scheme.divergence_bound,
                )
                row["status"] = "ok"
            except BracketInvalid as e:
                logger.warning(f"table1: smax={smax} failed: {e}")
                row["status"] = "failed"
        rows.append(row)
    return Report(
        command="table1",
        columns=["smax", "eps", "eps_ratio", "n_theoretical", "n_actual", "status"],
        rows=rows,
        meta={"space_steps": config.grid.space_steps, "barrier": config.contract.barrier},
    )


def sweep_steps(curve: ErrorCurveConfig) -> List[int]:
    """[n_min, n_max] 上的对数等距点，加上 [band_min, band_max] 上的稠密点"""
    if not 1 <= curve.n_min < curve.n_max:
        raise ValueError(f"need 1 <= n_min < n_max, got {curve.n_min}, {curve.n_max}")
    steps = set(np.rint(np.geomspace(curve.n_min, curve.n_max, curve.points)).astype(int))
    if curve.band_points > 0 and curve.band_min < curve.band_max:
        steps |= set(np.rint(np.linspace(curve.band_min, curve.band_max, curve.band_points)).astype(int))
    return sorted(int(n) for n in steps)


def cmd_error_curve(config: RunConfig) -> Report:
    """S(0) 处绝对误差随时间步数的变化，发散的点只记录标志"""
    grid = build_grid(config)
    reference = _reference(config)
    maturity = config.contract.maturity
    rows = []
    for steps in tqdm(sweep_steps(config.error_curve), desc="error-curve", disable=config.output.quiet, ncols=120):
        scheme = replace(config.scheme, steps=steps, snapshot_steps=())
        rows.append(_price_row(config, grid, scheme, reference))
    n_ghost = n_steps(dt_max_ghost(grid, config.market, maturity), maturity)
    diverged = [r["steps"] for r in rows if r["diverged"]]
    logger.info(
        f"error-curve: {len(diverged)} of {len(rows)} runs diverged, ghost threshold {n_ghost}"
    )
    return Report(
        command="error-curve",
        columns=["steps", "dt", "price", "analytic", "abs_error", "diverged", "diverged_at_step"],
        rows=rows,
        meta={"grid": grid.describe(), "n_min_ghost": n_ghost, "scheme": config.scheme.kind.value},
    )


def cmd_profile(config: RunConfig) -> Report:
    """障碍附近若干早期时间层上的解，以及单调性诊断"""
    grid = build_grid(config)
    width = config.profile.width
    rebate = config.contract.rebate
    scheme = replace(config.scheme, snapshot_steps=config.profile.snapshot_steps)
    result = solve(config.market, config.contract, grid, scheme, progress=not config.output.quiet)
    start, stop = profile_window(grid, width)

    rows = []
    sign_changes = {}
    for t, k, values in result["snapshots"]:
        changes = count_sign_changes(values, grid, rebate, width)
        sign_changes[k] = changes
        for i in range(start, stop):
            rows.append(
                {
                    "step": k,
                    "t": t,
                    "index": i,
                    "s": float(grid.nodes[i]),
                    "value": float(values[i]),
                    "sign_changes": changes,
                }
            )
    logger.info(f"profile: {result['scheme']} on {grid!r}, sign changes by step {sign_changes}")
    return Report(
        command="profile",
        columns=["step", "t", "index", "s", "value", "sign_changes"],
        rows=rows,
        meta={
            "scheme": result["scheme"],
            "grid": grid.describe(),
            "barrier": grid.barrier,
            "sign_changes": sign_changes,
            "diverged": result.diverged,
        },
    )


def cmd_stability(config: RunConfig) -> Report:
    """理论阈值汇总，CSV 行为 ε/δS 扫描"""
    grid = build_grid(config)
    maturity = config.contract.maturity
    report = stability_report(
        grid,
        config.market,
        config.contract,
        steps=config.scheme.steps,
        iterations=config.stability.iterations,
    )
    rows = epsilon_scan(grid, config.market, maturity, config.stability.eps_ratios, maturity)
    logger.info(
        f"stability: n_min_standard={report.n_min_standard} n_min_ghost={report.n_min_ghost} "
        f"binding row {report.binding_row}"
    )
    return Report(
        command="stability",
        columns=["eps_ratio", "eps", "dt_ghost", "n_ghost", "dt_asymptotic", "n_asymptotic"],
        rows=rows,
        meta={"report": dict(report)},
    )


COMMANDS = {
    "price": cmd_price,
    "table1": cmd_table1,
    "error-curve": cmd_error_curve,
    "profile": cmd_profile,
    "stability": cmd_stability,
}
