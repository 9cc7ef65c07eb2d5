"""
θ 格式

    (I − θÃ_new)V^{k+1} = (I + (1−θ)Ã_old)V^k + θ·source_new + (1−θ)·source_old

θ = 1/2 为 Crank-Nicolson，θ = 1 为隐式 Euler，θ = 0 退化为显式 Euler。
"""

import numpy as np

from funghost.core import BaseScheme, SchemeKind, TridiagonalOperator, solve_tridiagonal


def solve_implicit(op: TridiagonalOperator, weight: float, rhs: np.ndarray) -> np.ndarray:
    """求解 (I − weight·Ã)x = rhs，冻结行是单位方程"""
    return solve_tridiagonal(
        -weight * op.lower,
        1.0 - weight * op.diag,
        -weight * op.upper,
        rhs,
    )


def step_theta(
    values: np.ndarray,
    op_new: TridiagonalOperator,
    op_old: TridiagonalOperator,
    theta: float = 0.5,
) -> np.ndarray:
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    explicit_weight = 1.0 - theta
    rhs = values + theta * op_new.source
    if explicit_weight > 0:
        rhs = rhs + explicit_weight * (op_old.matvec(values) + op_old.source)
    if theta == 0:
        return rhs
    return solve_implicit(op_new, theta, rhs)


class ThetaScheme(BaseScheme):
    def __init__(self, theta: float = 0.5, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.theta = theta

    def step(self, values, ops, *args, **kwargs) -> np.ndarray:
        return step_theta(values, ops[-1], ops[0], self.theta)


class CrankNicolson(ThetaScheme):
    kind = SchemeKind.CRANK_NICOLSON

    def __init__(self, *args, **kwargs):
        super().__init__(0.5, *args, **kwargs)


class ImplicitEuler(ThetaScheme):
    kind = SchemeKind.IMPLICIT

    def __init__(self, *args, **kwargs):
        super().__init__(1.0, *args, **kwargs)
