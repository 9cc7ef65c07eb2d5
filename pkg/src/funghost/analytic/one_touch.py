"""
一触即付期权(上障碍)的解析价格与 Monte-Carlo 参考价

声明:
- settlement="hit": 触及时立即支付(与 PDE 中障碍处保持 rebate 的边界条件一致)
- settlement="maturity": 触及后在到期日支付
r = 0 时两者相同。
"""

import math
from dataclasses import dataclass

import numpy as np
from funutil import getLogger
from scipy.stats import norm

from funghost.core import ContractSpec, DomainError, MarketParams

logger = getLogger("funghost")

SETTLEMENTS = ("hit", "maturity")


@dataclass(frozen=True)
class AnalyticInputs:
    spot: float
    barrier: float
    maturity: float
    vol: float
    rate: float = 0.0
    dividend: float = 0.0
    rebate: float = 1.0

    def __post_init__(self):
        if self.spot <= 0 or self.barrier <= 0:
            raise ValueError(f"spot and barrier must be positive, got {self.spot}, {self.barrier}")
        if self.vol <= 0:
            raise ValueError(f"vol must be positive, got {self.vol}")
        if self.maturity <= 0:
            raise ValueError(f"maturity must be positive, got {self.maturity}")

    @property
    def touched(self) -> bool:
        return self.spot >= self.barrier


def _check_settlement(settlement: str) -> None:
    if settlement not in SETTLEMENTS:
        raise ValueError(f"settlement must be one of {SETTLEMENTS}, got {settlement!r}")


def hit_probability(inputs: AnalyticInputs) -> float:
    """
    风险中性测度下 [0, T] 内触及上障碍的概率
    P = Φ((−b+νT)/(σ√T)) + e^{2νb/σ²}Φ((−b−νT)/(σ√T))，b = ln(L/S)，ν = r − q − σ²/2
    """
    b = math.log(inputs.barrier / inputs.spot)
    nu = inputs.rate - inputs.dividend - 0.5 * inputs.vol**2
    vol_sqrt_t = inputs.vol * math.sqrt(inputs.maturity)
    nu_t = nu * inputs.maturity
    return float(
        norm.cdf((-b + nu_t) / vol_sqrt_t)
        + math.exp(2.0 * nu * b / inputs.vol**2) * norm.cdf((-b - nu_t) / vol_sqrt_t)
    )


def one_touch_price(
    inputs: AnalyticInputs, settlement: str = "hit", strict: bool = False
) -> float:
    """
    一触即付期权价格
    :param inputs: 常数参数
    :param settlement: "hit" 或 "maturity"
    :param strict: spot ≥ barrier 时抛出 DomainError，否则直接返回 rebate
    :return: 价格，位于 [0, rebate]
    """
    _check_settlement(settlement)
    if inputs.touched:
        if strict:
            raise DomainError(
                f"spot={inputs.spot} already at or above barrier={inputs.barrier}",
                value=inputs.rebate,
            )
        return inputs.rebate

    if settlement == "maturity":
        return inputs.rebate * math.exp(-inputs.rate * inputs.maturity) * hit_probability(inputs)

    sigma2 = inputs.vol**2
    vol_sqrt_t = inputs.vol * math.sqrt(inputs.maturity)
    mu = (inputs.rate - inputs.dividend - 0.5 * sigma2) / sigma2
    lam = math.sqrt(mu * mu + 2.0 * inputs.rate / sigma2)
    ratio = inputs.barrier / inputs.spot
    z = math.log(ratio) / vol_sqrt_t + lam * vol_sqrt_t
    return inputs.rebate * float(
        ratio ** (mu + lam) * norm.cdf(-z)
        + ratio ** (mu - lam) * norm.cdf(-z + 2.0 * lam * vol_sqrt_t)
    )


@dataclass(frozen=True)
class MonteCarloEstimate:
    price: float
    stderr: float
    paths: int
    steps: int


def one_touch_monte_carlo(
    inputs: AnalyticInputs,
    paths: int = 200_000,
    steps: int = 250,
    seed: int = 0,
    settlement: str = "hit",
) -> MonteCarloEstimate:
    """
    首次通过时间的 Monte-Carlo 估计，用 Brownian bridge 修正离散监测的漏判
    桥上在 (t_{j−1}, t_j) 内触及的概率为 exp(−2(h−x_{j−1})(h−x_j)/(σ²Δt))，h = ln L。
    """
    _check_settlement(settlement)
    if inputs.touched:
        return MonteCarloEstimate(price=inputs.rebate, stderr=0.0, paths=paths, steps=0)

    rng = np.random.default_rng(seed)
    dt = inputs.maturity / steps
    drift = (inputs.rate - inputs.dividend - 0.5 * inputs.vol**2) * dt
    diffusion = inputs.vol * math.sqrt(dt)
    level = math.log(inputs.barrier)

    log_spot = np.full(paths, math.log(inputs.spot))
    hit_time = np.full(paths, np.inf)
    alive = np.ones(paths, dtype=bool)
    for j in range(1, steps + 1):
        previous = log_spot
        log_spot = previous + drift + diffusion * rng.standard_normal(paths)
        crossed = log_spot >= level
        bridge = np.exp(
            np.minimum(-2.0 * (level - previous) * (level - log_spot) / (diffusion * diffusion), 0.0)
        )
        bridged = ~crossed & (rng.uniform(size=paths) < bridge)
        new_hits = alive & (crossed | bridged)
        hit_time[new_hits] = (j - 0.5) * dt if settlement == "hit" else inputs.maturity
        alive &= ~new_hits

    # exp(−r·inf) = 0 for r > 0 but not for r = 0
    payoff = np.zeros(paths)
    payoff[~alive] = inputs.rebate * np.exp(-inputs.rate * hit_time[~alive])
    return MonteCarloEstimate(
        price=float(payoff.mean()),
        stderr=float(payoff.std(ddof=1) / math.sqrt(paths)),
        paths=paths,
        steps=steps,
    )


def inputs_from(market: MarketParams, contract: ContractSpec) -> AnalyticInputs:
    """
    由 PDE 的市场参数与合约构造解析输入；期限结构非常数时取 t = T 处的值并记录警告
    """
    if not market.is_constant:
        logger.warning("analytic price uses the t=T sample of a non-constant term structure")
    r, q, sigma = market.at(contract.maturity)
    return AnalyticInputs(
        spot=market.spot,
        barrier=contract.barrier,
        maturity=contract.maturity,
        vol=sigma,
        rate=r,
        dividend=q,
        rebate=contract.rebate,
    )
