"""
显式 Euler 的稳定性阈值

声明:
稳定性条件为 ‖I+Ã‖∞ ≤ 1。记 x_i = S_i/δS:
- 标准行(非负对角): δt(r + σ²x_i²) ≤ 1
- ghost 行 u−1: ρ = (S_u−L⁺)/(L⁺−S_{u−1})，c_up = σ²x²/2 + (r−q)x/2，
  c_low = σ²x²/2 − (r−q)x/2，X = r + σ²x² + c_up·ρ。
  对角非负分支: δt·X ≤ 1；对角为负分支: δt(X + c_low) ≤ 2。
  两分支的并集即 δt ≤ 2/(X + c_low)，r=q=0 时为 4δS²/(σ²S_{u−1}²(3+ρ))。
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from funutil import getLogger

from funghost.core import (
    AssumptionViolated,
    ContractSpec,
    MarketParams,
    SpatialGrid,
    build_operator,
)

from .spectrum import dominant_eigenvalue, norm_check

logger = getLogger("funghost")

STEP_RTOL = 1e-12


def n_steps(dt_max: float, maturity: float, strict: bool = False) -> int:
    """
    阈值 δt_max 对应的最少时间步数 n = ceil(T/δt_max)
    :param strict: 为 True 时返回使 δt 严格小于 δt_max 的最小步数
    """
    if math.isinf(dt_max):
        return 1
    ratio = maturity / dt_max
    if strict:
        return int(math.floor(ratio * (1 + STEP_RTOL))) + 1
    return max(int(math.ceil(ratio * (1 - STEP_RTOL))), 1)


def _require_rate(r: float) -> None:
    if r < 0:
        raise AssumptionViolated(f"stability analysis assumes r_k >= 0, got r={r}")


@dataclass(frozen=True)
class OffDiagonalCheck:
    """
    - max_spacing: 保持 S_1 不变时所有内部行成立的最大 δS；S_1 = δS 的均匀网格上条件与 δS 无关
    - min_price: 条件成立的最低价格水平，低于它的节点是违反的行
    """

    holds: bool
    violating_rows: Tuple[int, ...]
    max_spacing: float
    min_price: float = 0.0


def check_offdiag_nonneg(grid: SpatialGrid, market: MarketParams, t: float) -> OffDiagonalCheck:
    """
    检查非对角元非负: |r_k − q_k| ≤ σ_k²S_i/δS, i = 1..u−1
    :return: 是否成立、违反的行、使所有内部行成立的最大 δS(按 S_1 不变计)、条件成立的最低价格
    """
    r, q, sigma = market.at(t)
    drift = abs(r - q)
    rows = np.arange(1, grid.barrier_index)
    x = rows.astype(float)
    violating = tuple(int(i) for i in rows[sigma * sigma * x < drift])
    if drift == 0:
        max_spacing = math.inf
        min_price = 0.0
    else:
        max_spacing = sigma * sigma * float(grid.nodes[1]) / drift
        min_price = drift * grid.spacing / (sigma * sigma)
    if violating:
        logger.warning(
            f"negative off-diagonals on rows {violating[:5]}..., |r-q|={drift} sigma={sigma}"
        )
    return OffDiagonalCheck(
        holds=not violating,
        violating_rows=violating,
        max_spacing=max_spacing,
        min_price=min_price,
    )


def _standard_bound(x: float, r: float, sigma: float) -> float:
    rate = r + sigma * sigma * x * x
    return math.inf if rate <= 0 else 1.0 / rate


def dt_max_interior(
    grid: SpatialGrid,
    market: MarketParams,
    t: float,
    at: Union[None, str, float] = None,
) -> float:
    """
    标准条件 δt(r_k + σ_k²S²/δS²) ≤ 1 给出的最大步长
    :param at: None 取内部行 1..u−1 的最小值；"smax" 取 S = S_max；
               "barrier" 取障碍下方最后一个 PDE 行 S_{u−1}；数值则直接作为 S
    """
    r, _, sigma = market.at(t)
    _require_rate(r)
    if at is None or at == "barrier":
        x = float(grid.barrier_index - 1)
    elif at == "smax":
        x = float(grid.space_steps)
    elif isinstance(at, str):
        raise ValueError(f"unknown evaluation point {at!r}")
    else:
        x = float(at) / grid.spacing
    return _standard_bound(x, r, sigma)


def ghost_threshold(
    spacing: float,
    last_interior: float,
    epsilon: float,
    sigma: float,
    r: float = 0.0,
    q: float = 0.0,
    monotone: bool = False,
) -> float:
    """
    ghost 行 u−1 的最大步长
    :param spacing: δS
    :param last_interior: S_{u−1}
    :param epsilon: ε = L⁺ − S_{u−1}
    :param monotone: 为 True 时只取对角非负分支 δt·X ≤ 1
    """
    _require_rate(r)
    x = last_interior / spacing
    ratio = (spacing - epsilon) / epsilon
    diffusion = 0.5 * sigma * sigma * x * x
    convection = 0.5 * (r - q) * x
    c_up = diffusion + convection
    c_low = diffusion - convection
    rate = r + 2.0 * diffusion + c_up * ratio
    if monotone:
        return math.inf if rate <= 0 else 1.0 / rate
    total = rate + c_low
    return math.inf if total <= 0 else 2.0 / total


def dt_max_ghost(grid: SpatialGrid, market: MarketParams, t: float) -> float:
    """
    ghost 行的 ‖·‖∞ 条件给出的最大步长；障碍在网格点上时等同于 dt_max_interior
    """
    if grid.on_node:
        return dt_max_interior(grid, market, t)
    r, q, sigma = market.at(t)
    return ghost_threshold(
        grid.spacing, grid.last_interior, grid.epsilon, sigma, r, q
    )


def dt_max_ghost_monotone(grid: SpatialGrid, market: MarketParams, t: float) -> float:
    """修正后的 ghost 行对角元保持非负(显式格式单调)的最大步长"""
    if grid.on_node:
        return dt_max_interior(grid, market, t)
    r, q, sigma = market.at(t)
    return ghost_threshold(
        grid.spacing, grid.last_interior, grid.epsilon, sigma, r, q, monotone=True
    )


def dt_max_ghost_asymptotic(grid: SpatialGrid, market: MarketParams, t: float) -> float:
    """
    ε → 0 的首项 4δS·ε/(σ²S_{u−1}²)，仅适用于 r = q = 0
    ε 接近 δS/2 时首项已不准确(ε = δS/2 时是精确值的两倍)。
    """
    r, q, sigma = market.at(t)
    if r != 0 or q != 0:
        raise AssumptionViolated(f"asymptotic ghost bound needs r=q=0, got r={r}, q={q}")
    s = grid.last_interior
    return 4.0 * grid.spacing * grid.epsilon / (sigma * sigma * s * s)


def row_thresholds(grid: SpatialGrid, market: MarketParams, t: float) -> np.ndarray:
    """每一行的最大步长，冻结行为 inf"""
    r, _, sigma = market.at(t)
    _require_rate(r)
    u = grid.barrier_index
    bounds = np.full(grid.size, math.inf)
    for i in range(u - 1):
        bounds[i] = _standard_bound(float(i), r, sigma)
    bounds[u - 1] = dt_max_ghost(grid, market, t)
    return bounds


def epsilon_scan(
    grid: SpatialGrid,
    market: MarketParams,
    t: float,
    ratios: Iterable[float],
    maturity: float = 1.0,
) -> List[dict]:
    """
    固定 δS、S_{u−1}、σ，扫描 ε/δS，对比精确与渐近的 ghost 阈值
    """
    r, q, sigma = market.at(t)
    rows = []
    for ratio in ratios:
        epsilon = ratio * grid.spacing
        exact = ghost_threshold(grid.spacing, grid.last_interior, epsilon, sigma, r, q)
        row = {
            "eps_ratio": ratio,
            "eps": epsilon,
            "dt_ghost": exact,
            "n_ghost": n_steps(exact, maturity),
            "dt_asymptotic": None,
            "n_asymptotic": None,
        }
        if r == 0 and q == 0:
            asym = 4.0 * grid.spacing * epsilon / (sigma * sigma * grid.last_interior**2)
            row["dt_asymptotic"] = asym
            row["n_asymptotic"] = n_steps(asym, maturity)
        rows.append(row)
    return rows


class StabilityReport(dict):
    """
    稳定性报告
    继承自dict，基础属性包括：
        - dt_max_standard / n_min_standard: 内部行条件
        - n_min_smax / n_min_smax_strict: S = S_max 处的标准条件，后者要求 δt 严格小于阈值
        - dt_max_ghost / n_min_ghost: ghost 行条件
        - binding_row: 取到最小步长的行
        - epsilon / epsilon_ratio: ghost 几何
    """

    def __init__(self, grid: SpatialGrid, market: MarketParams, t: float, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._grid = grid
        self._market = market
        self._t = t

    @property
    def dt_max_standard(self) -> float:
        return self["dt_max_standard"]

    @property
    def dt_max_ghost(self) -> float:
        return self["dt_max_ghost"]

    @property
    def n_min_standard(self) -> int:
        return self["n_min_standard"]

    @property
    def n_min_ghost(self) -> int:
        return self["n_min_ghost"]

    @property
    def binding_row(self) -> int:
        return self["binding_row"]

    @property
    def epsilon(self) -> float:
        return self["epsilon"]

    @property
    def epsilon_ratio(self) -> float:
        return self["epsilon_ratio"]

    def norm_at(self, dt: float) -> float:
        """步长 dt 下的 ‖I+Ã‖∞"""
        return norm_check(build_operator(self._grid, self._market, self._t, dt))


def stability_report(
    grid: SpatialGrid,
    market: MarketParams,
    contract: ContractSpec,
    steps: Optional[int] = None,
    t: Optional[float] = None,
    iterations: int = 500,
) -> StabilityReport:
    """
    汇总一个配置的理论阈值；给定 steps 时附带该步长下的范数与主特征值估计
    :param t: 取样时间，默认取第一步的 t = T
    """
    t = contract.maturity if t is None else t
    maturity = contract.maturity
    r, q, _ = market.at(t)
    offdiag = check_offdiag_nonneg(grid, market, t)

    dt_standard = dt_max_interior(grid, market, t)
    dt_smax = dt_max_interior(grid, market, t, at="smax")
    dt_ghost = dt_max_ghost(grid, market, t)
    dt_monotone = dt_max_ghost_monotone(grid, market, t)
    dt_asym = None
    if r == 0 and q == 0 and not grid.on_node:
        dt_asym = dt_max_ghost_asymptotic(grid, market, t)

    bounds = row_thresholds(grid, market, t)
    report = StabilityReport(
        grid,
        market,
        t,
        smax=grid.smax,
        space_steps=grid.space_steps,
        barrier_index=grid.barrier_index,
        epsilon=grid.epsilon,
        epsilon_ratio=grid.epsilon_ratio,
        on_node=grid.on_node,
        offdiag_nonneg=offdiag.holds,
        dt_max_standard=dt_standard,
        n_min_standard=n_steps(dt_standard, maturity),
        dt_max_smax=dt_smax,
        n_min_smax=n_steps(dt_smax, maturity),
        n_min_smax_strict=n_steps(dt_smax, maturity, strict=True),
        dt_max_ghost=dt_ghost,
        n_min_ghost=n_steps(dt_ghost, maturity),
        dt_max_ghost_monotone=dt_monotone,
        n_min_ghost_monotone=n_steps(dt_monotone, maturity),
        dt_max_ghost_asymptotic=dt_asym,
        n_min_ghost_asymptotic=None if dt_asym is None else n_steps(dt_asym, maturity),
        binding_row=int(np.argmin(bounds)),
    )
    if steps is not None:
        dt = maturity / steps
        op = build_operator(grid, market, t, dt, contract.rebate)
        estimate = dominant_eigenvalue(op, iterations=iterations)
        report.update(
            steps=steps,
            dt=dt,
            norm=norm_check(op),
            spectral_radius=estimate.value,
            spectral_converged=estimate.converged,
        )
    return report
