"""
时间推进主循环

声明:
k = 0..N−1 对应物理时间 t_k = T − kδt，第 k 步使用 t_k 处取样的 (r_k, q_k, σ_k)，
隐式格式在整个步长内使用同一组参数。发散判据: 任一值非有限或 |V_i| > B·rebate，
一旦发散立即停止推进。
"""

from typing import Optional

import numpy as np
from funutil import getLogger
from tqdm import tqdm

from funghost.core import (
    BaseScheme,
    ContractSpec,
    MarketParams,
    OutOfDomain,
    SchemeConfig,
    SchemeKind,
    SolveResult,
    SpatialGrid,
    build_operator,
)

from .explicit import ExplicitEuler
from .theta import CrankNicolson, ImplicitEuler
from .trbdf2 import TRBDF2

logger = getLogger("funghost")


def get_scheme(config: SchemeConfig) -> BaseScheme:
    """按配置返回时间推进格式实例"""
    kind = SchemeKind.parse(config.kind)
    if kind == SchemeKind.EXPLICIT:
        return ExplicitEuler()
    if kind == SchemeKind.CRANK_NICOLSON:
        return CrankNicolson()
    if kind == SchemeKind.IMPLICIT:
        return ImplicitEuler()
    if kind == SchemeKind.TRBDF2:
        return TRBDF2(alpha=config.alpha)
    raise ValueError(f"unknown scheme {config.kind}")


def initial_condition(grid: SpatialGrid, rebate: float = 1.0) -> np.ndarray:
    """V(S, T) = rebate·1_{S ≥ L⁺}"""
    values = np.where(grid.nodes >= grid.barrier, rebate, 0.0)
    if grid.on_node and not grid.truncated:
        values[grid.barrier_index] = rebate
    return values


def solve(
    market: MarketParams,
    contract: ContractSpec,
    grid: SpatialGrid,
    scheme: SchemeConfig,
    progress: bool = False,
) -> SolveResult:
    """
    求解一触即付期权的 PDE
    :param market: 市场参数
    :param contract: 合约
    :param grid: 空间网格
    :param scheme: 时间推进配置
    :param progress: 是否显示进度条
    :return: SolveResult
    :raises SingularSystem: 隐式子步的三对角消元失败
    """
    steps = scheme.steps
    dt = contract.maturity / steps
    rebate = contract.rebate
    bound = scheme.divergence_bound * (abs(rebate) or 1.0)
    stepper = get_scheme(scheme)
    wanted = set(scheme.snapshot_steps)

    values = initial_condition(grid, rebate)
    values[grid.barrier_index:] = rebate
    snapshots = [(contract.maturity, 0, values.copy())] if 0 in wanted else []

    diverged_at: Optional[int] = None
    sampled, op = None, None
    for k in tqdm(range(steps), desc=stepper.name, disable=not progress, ncols=120):
        t = contract.maturity - k * dt
        params = market.at(max(t, 0.0))
        if params != sampled:
            sampled = params
            op = build_operator(grid, market, t, dt, rebate)
        values = stepper.step(values, (op, op, op))

        if not np.all(np.isfinite(values)) or np.max(np.abs(values)) > bound:
            diverged_at = k + 1
            logger.info(
                f"{stepper.name} run with N={steps} diverged at step {diverged_at}"
            )
            break
        if k + 1 in wanted:
            snapshots.append((contract.maturity - (k + 1) * dt, k + 1, values.copy()))

    return SolveResult(
        final_values=values,
        diverged=diverged_at is not None,
        diverged_at_step=diverged_at,
        snapshots=snapshots,
        scheme=stepper.name,
        steps=steps,
        space_steps=grid.space_steps,
        dt=dt,
        rebate=rebate,
        barrier=grid.barrier,
        on_node=grid.on_node,
    )


def read_price(result: SolveResult, grid: SpatialGrid, s: float) -> float:
    """
    在 s 处线性插值读取价格

    障碍不在网格点上时，[S_{u-1}, L⁺] 上沿 ghost 插值直线取值(在 L⁺ 处等于 rebate)。
    """
    nodes = grid.nodes
    if s < nodes[0] or s > nodes[-1]:
        raise OutOfDomain(f"s={s} outside grid [{nodes[0]}, {nodes[-1]}]")
    values = result.final_values
    if grid.on_node or grid.truncated:
        return float(np.interp(s, nodes, values))
    u = grid.barrier_index
    rebate = result.get("rebate", 1.0)
    xp = np.concatenate([nodes[:u], [grid.barrier], nodes[u:]])
    fp = np.concatenate([values[:u], [rebate], values[u:]])
    return float(np.interp(s, xp, fp))
