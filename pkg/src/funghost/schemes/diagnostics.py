"""
障碍附近的单调性诊断

取障碍下方 w 个网格点 V_{u−w}..V_{u−1}，末尾补上障碍处的值 rebate，
统计相邻差分的符号变化次数。单调的解给出 0。
"""

from typing import Tuple

import numpy as np

from funghost.core import SpatialGrid

DIFF_ATOL = 1e-10


def profile_window(grid: SpatialGrid, width: int = 6, above: int = 1) -> Tuple[int, int]:
    """障碍附近窗口的行号范围 [start, stop)"""
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    u = grid.barrier_index
    return max(u - width, 0), min(u + above + 1, grid.size)


def barrier_sequence(
    values: np.ndarray, grid: SpatialGrid, rebate: float = 1.0, width: int = 6
) -> np.ndarray:
    u = grid.barrier_index
    start = max(u - width, 0)
    return np.append(values[start:u], rebate)


def count_sign_changes(
    values: np.ndarray, grid: SpatialGrid, rebate: float = 1.0, width: int = 6
) -> int:
    """
    障碍下方相邻差分的符号变化次数
    :param values: 某一时间层的解
    :param width: 参与统计的障碍下方网格点数
    """
    diffs = np.diff(barrier_sequence(values, grid, rebate, width))
    signs = np.sign(diffs[np.abs(diffs) > DIFF_ATOL * max(abs(rebate), 1.0)])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
