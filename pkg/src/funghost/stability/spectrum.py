from dataclasses import dataclass

import numpy as np
from funutil import getLogger

from funghost.core import NoConvergence, TridiagonalOperator

logger = getLogger("funghost")


def norm_rows(op: TridiagonalOperator) -> np.ndarray:
    """I+Ã 每一行的绝对值和，冻结行恰好为 1"""
    return np.abs(1.0 + op.diag) + np.abs(op.lower) + np.abs(op.upper)


def norm_check(op: TridiagonalOperator) -> float:
    """‖I+Ã‖∞"""
    return float(np.max(norm_rows(op)))


def norm_argmax(op: TridiagonalOperator) -> int:
    return int(np.argmax(norm_rows(op)))


@dataclass(frozen=True)
class EigenEstimate:
    value: float
    iterations: int
    converged: bool


def dominant_eigenvalue(
    op: TridiagonalOperator,
    iterations: int = 500,
    tol: float = 1e-6,
    seed: int = 0,
    strict: bool = False,
) -> EigenEstimate:
    """
    幂迭代估计 I+Ã 在非冻结行上的谱半径
    每步用 ‖Bx‖∞/‖x‖∞ 估计 |λ|，而不是 Rayleigh 商 xᵀBx/xᵀx：B 非对称，前者始终不超过 ‖B‖∞，
    主特征值为实数时两者收敛到同一个 |λ|。相邻两次估计的相对变化小于 tol 即停止。
    :param strict: 未收敛时抛出 NoConvergence，否则只记录警告
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    active = ~op.frozen
    rng = np.random.default_rng(seed)
    x = np.where(active, rng.uniform(-1.0, 1.0, op.size), 0.0)
    x /= np.max(np.abs(x))

    estimate = np.nan
    for k in range(1, iterations + 1):
        y = x + op.matvec(x)
        y[~active] = 0.0
        scale = float(np.max(np.abs(y)))
        if scale == 0.0:
            return EigenEstimate(value=0.0, iterations=k, converged=True)
        previous, estimate = estimate, scale
        x = y / scale
        if abs(estimate - previous) <= tol * estimate:
            return EigenEstimate(value=estimate, iterations=k, converged=True)

    message = f"power iteration did not converge in {iterations} iterations, last={estimate}"
    if strict:
        raise NoConvergence(message)
    logger.warning(message)
    return EigenEstimate(value=estimate, iterations=iterations, converged=False)
