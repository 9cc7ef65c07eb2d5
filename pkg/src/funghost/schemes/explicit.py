import numpy as np

from funghost.core import BaseScheme, SchemeKind, TridiagonalOperator


def step_explicit(values: np.ndarray, op: TridiagonalOperator) -> np.ndarray:
    """
    显式 Euler 一步: V^{k+1} = V^k + ÃV^k + source
    冻结行的系数与源项均为 0，值保持不变。
    """
    return values + op.matvec(values) + op.source


class ExplicitEuler(BaseScheme):
    kind = SchemeKind.EXPLICIT

    def step(self, values, ops, *args, **kwargs) -> np.ndarray:
        return step_explicit(values, ops[0])
