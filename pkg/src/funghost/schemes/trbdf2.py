"""
TR-BDF2

先在 αδt 上做一次梯形(Crank-Nicolson)子步得到 U*，再在剩余的 (1−α)δt 上
用 U^k, U* 两层做 BDF2:

    (I − γÃ_new)U^{k+1} = U*/(α(2−α)) − (1−α)²/(α(2−α))·U^k + γ·source_new
    γ = (1−α)/(2−α)

α = 2 − √2 时两个子步的隐式矩阵相同，格式 L-稳定。
"""

from typing import Sequence

import numpy as np

from funghost.core import BaseScheme, SchemeKind, TridiagonalOperator
from funghost.core.base import TRBDF2_ALPHA

from .theta import solve_implicit, step_theta


def step_trbdf2(
    values: np.ndarray,
    ops: Sequence[TridiagonalOperator],
    alpha: float = TRBDF2_ALPHA,
) -> np.ndarray:
    """
    :param values: U^k
    :param ops: (t_k, t_k + αδt, t_{k+1}) 三个时间点上的算子，均以整步 δt 缩放
    :param alpha: 分裂参数，0 < α < 1
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    op_old, op_mid, op_new = ops
    intermediate = step_theta(values, op_mid.scaled(alpha), op_old.scaled(alpha), 0.5)

    gamma = (1.0 - alpha) / (2.0 - alpha)
    denominator = alpha * (2.0 - alpha)
    rhs = (
        intermediate / denominator
        - (1.0 - alpha) ** 2 / denominator * values
        + gamma * op_new.source
    )
    return solve_implicit(op_new, gamma, rhs)


class TRBDF2(BaseScheme):
    kind = SchemeKind.TRBDF2

    def __init__(self, alpha: float = TRBDF2_ALPHA, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.alpha = alpha

    def step(self, values, ops, *args, **kwargs) -> np.ndarray:
        return step_trbdf2(values, ops, self.alpha)
