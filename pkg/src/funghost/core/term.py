"""
期限结构

声明:
利率 r(t)、股息率 q(t)、波动率 σ(t) 均为分段常数函数，区间左闭右开，
覆盖 [0, ∞)。最后一个断点之后按常数外推。
"""

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np


@dataclass(frozen=True)
class TermStructure:
    """
    分段常数期限结构
    - breakpoints: 内部断点(年)，严格递增
    - values: 各区间上的常数，长度为 len(breakpoints) + 1
    """

    breakpoints: Tuple[float, ...] = ()
    values: Tuple[float, ...] = (0.0,)

    def __post_init__(self):
        breakpoints = tuple(float(x) for x in self.breakpoints)
        values = tuple(float(x) for x in self.values)
        if len(values) != len(breakpoints) + 1:
            raise ValueError(
                f"values must have len(breakpoints)+1={len(breakpoints) + 1} entries, got {len(values)}"
            )
        if any(b <= a for a, b in zip(breakpoints, breakpoints[1:])):
            raise ValueError(f"breakpoints must be strictly increasing: {breakpoints}")
        if breakpoints and breakpoints[0] <= 0:
            raise ValueError(f"breakpoints must be positive: {breakpoints}")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value: float) -> "TermStructure":
        return cls(breakpoints=(), values=(value,))

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    def __call__(self, t: float) -> float:
        return sample(self, t)


def sample(ts: TermStructure, t: float) -> float:
    """
    在时间 t 处取值，右连续，超出最后一个断点后常数外推
    :param ts: 期限结构
    :param t: 时间(年)，t ≥ 0
    :return: 所在区间的常数
    """
    if t < 0:
        raise ValueError(f"t must be non-negative, got {t}")
    index = int(np.searchsorted(ts.breakpoints, t, side="right"))
    return ts.values[index]


Curve = Union[float, TermStructure]


def as_term_structure(curve: Curve) -> TermStructure:
    if isinstance(curve, TermStructure):
        return curve
    if isinstance(curve, (int, float)):
        return TermStructure.constant(curve)
    raise TypeError(f"cannot build a TermStructure from {curve!r}")


@dataclass(frozen=True)
class MarketParams:
    """
    市场参数
    - rate: 无风险利率 r(t)
    - dividend: 股息率 q(t)
    - vol: 波动率 σ(t)，各区间取值必须为正
    - spot: 标的现价 S(0)

    负利率在定价时允许，稳定性分析会拒绝(见 funghost.stability)。
    """

    spot: float
    rate: TermStructure = field(default_factory=lambda: TermStructure.constant(0.0))
    dividend: TermStructure = field(
        default_factory=lambda: TermStructure.constant(0.0)
    )
    vol: TermStructure = field(default_factory=lambda: TermStructure.constant(0.2))

    def __post_init__(self):
        object.__setattr__(self, "rate", as_term_structure(self.rate))
        object.__setattr__(self, "dividend", as_term_structure(self.dividend))
        object.__setattr__(self, "vol", as_term_structure(self.vol))
        if self.spot <= 0:
            raise ValueError(f"spot must be positive, got {self.spot}")
        if min(self.vol.values) <= 0:
            raise ValueError(f"vol values must be positive, got {self.vol.values}")

    def at(self, t: float) -> Tuple[float, float, float]:
        """返回 t 时刻的 (r, q, σ)"""
        return sample(self.rate, t), sample(self.dividend, t), sample(self.vol, t)

    @property
    def is_constant(self) -> bool:
        return self.rate.is_constant and self.dividend.is_constant and self.vol.is_constant
