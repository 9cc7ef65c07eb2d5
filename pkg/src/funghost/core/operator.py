"""
三对角算子 A^k 的组装与 ghost point 消去

声明:
系数均已乘以 δt(无量纲)。第 i 行:
    A_{i,i-1} = δt(σ²S_i²/(2δS²) − (r−q)S_i/(2δS))
    A_{i,i}   = δt(−r − σ²S_i²/δS²)
    A_{i,i+1} = δt(σ²S_i²/(2δS²) + (r−q)S_i/(2δS))
i ≥ u 的行被冻结在 rebate 上。第 u−1 行通过线性插值把 ghost 值 V_u
消去，得到修正后的对角元和一个非齐次源项。
"""

from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .grid import SpatialGrid
from .term import MarketParams


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """
    三对角算子(A 或 Ã)
    - lower/diag/upper: 长度 M+1 的系数数组，lower[0] = upper[M] = 0
    - source: ghost/Dirichlet 数据带来的非齐次项
    - frozen: 被固定在 rebate 上的行(i ≥ u)
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    source: np.ndarray
    frozen: np.ndarray

    @property
    def size(self) -> int:
        return len(self.diag)

    @classmethod
    def zeros(cls, size: int) -> "TridiagonalOperator":
        return cls(
            lower=np.zeros(size),
            diag=np.zeros(size),
            upper=np.zeros(size),
            source=np.zeros(size),
            frozen=np.zeros(size, dtype=bool),
        )

    def matvec(self, values: np.ndarray) -> np.ndarray:
        """Ã·V(不含源项)"""
        result = self.diag * values
        result[1:] += self.lower[1:] * values[:-1]
        result[:-1] += self.upper[:-1] * values[1:]
        return result

    def scaled(self, factor: float) -> "TridiagonalOperator":
        return replace(
            self,
            lower=self.lower * factor,
            diag=self.diag * factor,
            upper=self.upper * factor,
            source=self.source * factor,
        )

    def row(self, i: int) -> Tuple[float, float, float]:
        return float(self.lower[i]), float(self.diag[i]), float(self.upper[i])


def lower_boundary_row(
    grid: SpatialGrid, r: float, q: float, dt: float
) -> Tuple[float, float, float]:
    """
    S_0 = 0 处的边界行: V₀ᵏ⁺¹ = V₀ᵏ + δt[(r−q)S₀(V₁ᵏ−V₀ᵏ)/δS − rV₀ᵏ]

    S_0 = 0 使对流项消失，返回 (lower, diag, upper) = (0, −δt·r, 0)，与 q 无关。
    """
    drift = (r - q) * float(grid.nodes[0]) / grid.spacing
    return 0.0, dt * (-r - drift), dt * drift


def assemble_interior(
    grid: SpatialGrid, r: float, q: float, sigma: float, dt: float
) -> TridiagonalOperator:
    """
    组装未消去 ghost 的算子 A^k
    :param grid: 均匀网格
    :param r: r_k
    :param q: q_k
    :param sigma: σ_k
    :param dt: 时间步长 δt
    :return: 第 0 行为边界行，1..u−1 行按差分公式，i ≥ u 的行冻结
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    size = grid.size
    u = grid.barrier_index
    x = grid.nodes / grid.spacing
    diffusion = 0.5 * sigma * sigma * x * x
    convection = 0.5 * (r - q) * x

    lower = dt * (diffusion - convection)
    diag = dt * (-r - 2.0 * diffusion)
    upper = dt * (diffusion + convection)

    lower[0], diag[0], upper[0] = lower_boundary_row(grid, r, q, dt)

    frozen = np.zeros(size, dtype=bool)
    frozen[u:] = True
    lower[frozen] = 0.0
    diag[frozen] = 0.0
    upper[frozen] = 0.0
    return TridiagonalOperator(
        lower=lower,
        diag=diag,
        upper=upper,
        source=np.zeros(size),
        frozen=frozen,
    )


def ghost_weights(grid: SpatialGrid) -> Tuple[float, float]:
    """
    ghost 值插值权重: V_u = w_rebate·rebate − w_inner·V_{u-1}
    w_rebate = δS/(L⁺ − S_{u-1})，w_inner = (S_u − L⁺)/(L⁺ − S_{u-1})
    """
    if grid.on_node:
        return 1.0, 0.0
    return grid.spacing / grid.epsilon, grid.ghost_ratio


def ghost_value(values: np.ndarray, grid: SpatialGrid, rebate: float = 1.0) -> float:
    """由线性插值得到的 ghost 值 V_u"""
    w_rebate, w_inner = ghost_weights(grid)
    return w_rebate * rebate - w_inner * float(values[grid.barrier_index - 1])


def eliminate_ghost(
    op: TridiagonalOperator, grid: SpatialGrid, rebate: float = 1.0
) -> TridiagonalOperator:
    """
    消去第 u−1 行对 ghost 值的依赖

    diag[u−1] ← A_{u−1,u−1} − A_{u−1,u}·(S_u−L⁺)/(L⁺−S_{u−1})
    source[u−1] ← A_{u−1,u}·δS/(L⁺−S_{u−1})·rebate
    upper[u−1] ← 0
    障碍在网格点上时退化为 Dirichlet 行 V_u = rebate。
    """
    row = grid.barrier_index - 1
    coupling = float(op.upper[row])
    w_rebate, w_inner = ghost_weights(grid)

    diag = op.diag.copy()
    upper = op.upper.copy()
    source = op.source.copy()
    diag[row] -= coupling * w_inner
    source[row] += coupling * w_rebate * rebate
    upper[row] = 0.0
    return replace(op, diag=diag, upper=upper, source=source)


def build_operator(
    grid: SpatialGrid,
    market: MarketParams,
    t: float,
    dt: float,
    rebate: float = 1.0,
) -> TridiagonalOperator:
    """在时刻 t 取样 (r, q, σ)，组装并消去 ghost 后的 Ã"""
    r, q, sigma = market.at(max(t, 0.0))
    return eliminate_ghost(assemble_interior(grid, r, q, sigma, dt), grid, rebate)
