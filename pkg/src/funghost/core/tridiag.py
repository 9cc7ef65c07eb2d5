"""
Thomas 算法(不选主元的三对角消元)

    b0    c0    0   ...
    a1    b1    c1  ...
    0     a2    b2  ...
                ...        a_{n-1}  b_{n-1}

a[0] 和 c[n-1] 不参与计算。
"""

import numpy as np

from .errors import SingularSystem

PIVOT_FLOOR = 1e-300


def solve_tridiagonal(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """
    求解三对角线性方程组
    :param lower: 次对角线 a，a[0] 忽略
    :param diag: 主对角线 b
    :param upper: 超对角线 c，c[n-1] 忽略
    :param rhs: 右端项
    :return: 解向量
    :raises SingularSystem: 某个主元的绝对值小于 1e-300
    """
    a, b, c, d = (np.asarray(v, dtype=float).tolist() for v in (lower, diag, upper, rhs))
    n = len(b)
    c_prime = [0.0] * n
    d_prime = [0.0] * n

    pivot = b[0]
    if abs(pivot) < PIVOT_FLOOR:
        raise SingularSystem(f"pivot {pivot!r} below floor at row 0")
    c_prime[0] = c[0] / pivot if n > 1 else 0.0
    d_prime[0] = d[0] / pivot
    for i in range(1, n):
        pivot = b[i] - a[i] * c_prime[i - 1]
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularSystem(f"pivot {pivot!r} below floor at row {i}")
        c_prime[i] = c[i] / pivot if i < n - 1 else 0.0
        d_prime[i] = (d[i] - a[i] * d_prime[i - 1]) / pivot

    x = [0.0] * n
    x[-1] = d_prime[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] * x[i + 1]
    return np.asarray(x)
