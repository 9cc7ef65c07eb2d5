"""
经验发散阈值

声明:
对整数 N 二分，找出显式格式不发散的最小步数。假设在阈值附近稳定性关于 N 单调，
由区间端点校验代替全局假设。
"""

import math
from typing import Dict, Optional, Tuple

from funutil import getLogger
from tqdm import tqdm

from funghost.core import (
    BracketInvalid,
    ContractSpec,
    MarketParams,
    SchemeConfig,
    SchemeKind,
    SpatialGrid,
)
from funghost.schemes import solve

from .thresholds import dt_max_ghost, n_steps

logger = getLogger("funghost")


class DivergenceProbe:
    """对同一配置反复做显式求解，并缓存每个 N 的结果"""

    def __init__(
        self,
        market: MarketParams,
        contract: ContractSpec,
        grid: SpatialGrid,
        divergence_bound: float = 10.0,
    ):
        self.market = market
        self.contract = contract
        self.grid = grid
        self.divergence_bound = divergence_bound
        self._cache: Dict[int, bool] = {}

    def __call__(self, steps: int) -> bool:
        if steps not in self._cache:
            scheme = SchemeConfig(
                kind=SchemeKind.EXPLICIT,
                steps=steps,
                divergence_bound=self.divergence_bound,
            )
            result = solve(self.market, self.contract, self.grid, scheme)
            self._cache[steps] = result.diverged
        return self._cache[steps]

    @property
    def runs(self) -> int:
        return len(self._cache)


def empirical_threshold(
    market: MarketParams,
    contract: ContractSpec,
    grid: SpatialGrid,
    n_lo: int,
    n_hi: int,
    divergence_bound: float = 10.0,
    progress: bool = False,
    probe: Optional[DivergenceProbe] = None,
) -> int:
    """
    二分查找显式格式不发散的最小步数
    :param n_lo: 会发散的步数
    :param n_hi: 不发散的步数
    :raises BracketInvalid: 端点不满足 发散/不发散
    """
    if not 1 <= n_lo < n_hi:
        raise BracketInvalid(f"need 1 <= n_lo < n_hi, got n_lo={n_lo}, n_hi={n_hi}")
    probe = probe or DivergenceProbe(market, contract, grid, divergence_bound)
    if not probe(n_lo):
        raise BracketInvalid(f"explicit run with N={n_lo} does not diverge")
    if probe(n_hi):
        raise BracketInvalid(f"explicit run with N={n_hi} diverges")

    lo, hi = n_lo, n_hi
    with tqdm(
        total=max(int(math.ceil(math.log2(hi - lo))), 1),
        desc=f"bisect eps/dS={grid.epsilon_ratio:.3f}",
        disable=not progress,
        ncols=120,
    ) as bar:
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if probe(mid):
                lo = mid
            else:
                hi = mid
            bar.update(1)
    logger.info(f"empirical threshold {hi} for {grid!r} after {probe.runs} runs")
    return hi


def bracket_threshold(
    market: MarketParams,
    contract: ContractSpec,
    grid: SpatialGrid,
    start: Optional[int] = None,
    divergence_bound: float = 10.0,
    probe: Optional[DivergenceProbe] = None,
    max_expansions: int = 40,
) -> Tuple[int, int]:
    """
    以理论 ghost 阈值为起点自动确定二分区间 (n_lo, n_hi)
    """
    probe = probe or DivergenceProbe(market, contract, grid, divergence_bound)
    if start is None:
        start = n_steps(dt_max_ghost(grid, market, contract.maturity), contract.maturity)

    n_hi = max(int(start), 2)
    for _ in range(max_expansions):
        if not probe(n_hi):
            break
        n_hi = int(math.ceil(n_hi * 1.25))
    else:
        raise BracketInvalid(f"explicit runs still diverge at N={n_hi}")

    n_lo = max(int(n_hi * 0.9), 1)
    for _ in range(max_expansions):
        if n_lo < n_hi and probe(n_lo):
            return n_lo, n_hi
        if n_lo == 1:
            break
        n_hi = n_lo
        n_lo = max(int(n_lo * 0.8), 1)
    raise BracketInvalid(f"no diverging step count found below N={n_hi}")


def find_threshold(
    market: MarketParams,
    contract: ContractSpec,
    grid: SpatialGrid,
    divergence_bound: float = 10.0,
    progress: bool = False,
) -> int:
    """自动确定区间并二分"""
    probe = DivergenceProbe(market, contract, grid, divergence_bound)
    n_lo, n_hi = bracket_threshold(market, contract, grid, probe=probe)
    return empirical_threshold(
        market, contract, grid, n_lo, n_hi, progress=progress, probe=probe
    )
