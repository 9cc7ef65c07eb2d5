"""
空间网格

声明:
均匀网格 S_i = i·δS, i=0..M，S_0 = 0。障碍 L⁺ 所在的单元由 u 标记：
S_{u-1} < L⁺ ≤ S_u，ε = L⁺ − S_{u-1}。
"""

import math
from dataclasses import dataclass

import numpy as np
from funutil import getLogger

from .errors import BarrierBelowFirstCell, GridError
from .term import MarketParams

logger = getLogger("funghost")

ON_NODE_RTOL = 1e-12


@dataclass(frozen=True)
class ContractSpec:
    """
    一触即付(one-touch)合约
    - barrier: 上障碍 L⁺
    - maturity: 到期时间 T(年)
    - rebate: 触及时支付的金额
    """

    barrier: float
    maturity: float
    rebate: float = 1.0

    def __post_init__(self):
        if self.barrier <= 0:
            raise ValueError(f"barrier must be positive, got {self.barrier}")
        if self.maturity <= 0:
            raise ValueError(f"maturity must be positive, got {self.maturity}")


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    """
    均匀空间网格及障碍的相对位置
    - nodes: S_0..S_M
    - spacing: δS
    - barrier: 障碍 L⁺
    - barrier_index: u，满足 S_{u-1} < L⁺ ≤ S_u
    - epsilon: ε = L⁺ − S_{u-1}，0 < ε ≤ δS
    - on_node: L⁺ 恰好落在 S_u 上(相对误差 1e-12)
    - truncated: L⁺ 超出 S_M，计算域在 S_M 处截断
    """

    nodes: np.ndarray
    spacing: float
    barrier: float
    barrier_index: int
    epsilon: float
    on_node: bool
    truncated: bool = False

    @property
    def size(self) -> int:
        """网格点数 M+1"""
        return len(self.nodes)

    @property
    def space_steps(self) -> int:
        return len(self.nodes) - 1

    @property
    def smax(self) -> float:
        return float(self.nodes[-1])

    @property
    def epsilon_ratio(self) -> float:
        return self.epsilon / self.spacing

    @property
    def ghost_ratio(self) -> float:
        """(S_u − L⁺)/(L⁺ − S_{u-1})，在障碍落在网格点上时为 0"""
        if self.on_node:
            return 0.0
        return (self.spacing - self.epsilon) / self.epsilon

    @property
    def last_interior(self) -> float:
        """S_{u-1}"""
        return float(self.nodes[self.barrier_index - 1])

    def describe(self) -> dict:
        return {
            "smax": self.smax,
            "space_steps": self.space_steps,
            "spacing": self.spacing,
            "barrier": self.barrier,
            "barrier_index": self.barrier_index,
            "epsilon": self.epsilon,
            "epsilon_ratio": self.epsilon_ratio,
            "on_node": self.on_node,
        }

    def __repr__(self) -> str:
        return (
            f"SpatialGrid(M={self.space_steps}, dS={self.spacing:.6g}, u={self.barrier_index}, "
            f"eps={self.epsilon:.6g}, on_node={self.on_node})"
        )


def default_smax(market: MarketParams, maturity: float) -> float:
    """
    S_max = S(0)·exp((r(T)−q(T)−σ²(T)/2)T + 4σ(T)√T)，参数取 t = T 处的值
    """
    if maturity <= 0:
        raise ValueError(f"maturity must be positive, got {maturity}")
    r, q, sigma = market.at(maturity)
    return market.spot * math.exp(
        (r - q - 0.5 * sigma * sigma) * maturity + 4.0 * sigma * math.sqrt(maturity)
    )


def _locate(spacing: float, barrier: float):
    """返回 (u, on_node)"""
    ratio = barrier / spacing
    nearest = round(ratio)
    if abs(ratio - nearest) <= ON_NODE_RTOL * max(ratio, 1.0):
        return int(nearest), True
    return int(math.ceil(ratio)), False


def _grid(nodes: np.ndarray, spacing: float, barrier: float) -> SpatialGrid:
    space_steps = len(nodes) - 1
    if barrier <= nodes[1] * (1 + ON_NODE_RTOL):
        raise BarrierBelowFirstCell(
            f"barrier={barrier} is not above S_1={nodes[1]}, no interior rows left"
        )
    if space_steps < 3:
        raise GridError(f"need at least 3 space steps, got {space_steps}")

    u, on_node = _locate(spacing, barrier)
    truncated = False
    if u > space_steps:
        logger.warning(
            f"barrier={barrier} above smax={nodes[-1]}, domain truncated at S_M"
        )
        u, on_node, truncated = space_steps, True, True
    epsilon = spacing if on_node else barrier - float(nodes[u - 1])
    return SpatialGrid(
        nodes=nodes,
        spacing=spacing,
        barrier=barrier,
        barrier_index=u,
        epsilon=epsilon,
        on_node=on_node,
        truncated=truncated,
    )


def build_uniform(smax: float, space_steps: int, barrier: float) -> SpatialGrid:
    """
    构造 [0, smax] 上的均匀网格，障碍一般不在网格点上(使用 ghost point)
    :param smax: 网格上界
    :param space_steps: 空间步数 M
    :param barrier: 障碍 L⁺
    :return: SpatialGrid
    """
    if smax <= 0:
        raise GridError(f"smax must be positive, got {smax}")
    if space_steps < 1:
        raise GridError(f"space_steps must be positive, got {space_steps}")
    spacing = smax / space_steps
    nodes = np.arange(space_steps + 1, dtype=float) * spacing
    return _grid(nodes, spacing, barrier)


def build_barrier_on_node(smax_hint: float, space_steps: int, barrier: float) -> SpatialGrid:
    """
    拉伸均匀网格，使障碍恰好落在第 u 个网格点上

    u = round(L⁺·M/smax_hint)，限制在 [2, M−1]；δS = L⁺/u；S_max = M·δS。
    """
    if space_steps < 3:
        raise GridError(f"need at least 3 space steps, got {space_steps}")
    if barrier >= smax_hint:
        raise GridError(f"barrier={barrier} must be below smax_hint={smax_hint}")
    u = min(max(int(round(barrier * space_steps / smax_hint)), 2), space_steps - 1)
    spacing = barrier / u
    nodes = np.arange(space_steps + 1, dtype=float) * spacing
    nodes[u] = barrier
    return _grid(nodes, spacing, barrier)
