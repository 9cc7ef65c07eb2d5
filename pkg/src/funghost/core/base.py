import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .operator import TridiagonalOperator


class SchemeKind(str, Enum):
    EXPLICIT = "explicit"
    CRANK_NICOLSON = "crank-nicolson"
    IMPLICIT = "implicit"
    TRBDF2 = "tr-bdf2"

    @classmethod
    def parse(cls, value) -> "SchemeKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "explicit-euler": cls.EXPLICIT,
            "euler": cls.EXPLICIT,
            "cn": cls.CRANK_NICOLSON,
            "cranknicolson": cls.CRANK_NICOLSON,
            "implicit-euler": cls.IMPLICIT,
            "trbdf2": cls.TRBDF2,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


TRBDF2_ALPHA = 2.0 - math.sqrt(2.0)


@dataclass(frozen=True)
class SchemeConfig:
    """
    时间推进配置
    - kind: 格式
    - steps: 时间步数 N ≥ 1
    - divergence_bound: 发散判据 B，|V_i| > B·rebate 视为发散，B > 1
    - alpha: TR-BDF2 的分裂参数，默认 2 − √2
    - snapshot_steps: 需要保存的时间层 k
    """

    kind: SchemeKind = SchemeKind.EXPLICIT
    steps: int = 100
    divergence_bound: float = 10.0
    alpha: float = TRBDF2_ALPHA
    snapshot_steps: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind.parse(self.kind))
        object.__setattr__(self, "snapshot_steps", tuple(int(k) for k in self.snapshot_steps))
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if self.divergence_bound <= 1:
            raise ValueError(f"divergence_bound must be > 1, got {self.divergence_bound}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


class SolveResult(dict):
    """
    求解结果
    继承自 dict，便于直接序列化，基础属性包括：
        - final_values: 最终时间层(t = 0)上各网格点的值
        - snapshots: [(t, k, values), ...]
        - diverged: 是否发散
        - diverged_at_step: 首次发散的步数 k
    """

    def __init__(
        self,
        final_values: np.ndarray,
        diverged: bool = False,
        diverged_at_step: Optional[int] = None,
        snapshots: Optional[List[Tuple[float, int, np.ndarray]]] = None,
        *args: Any,
        **kwargs: Any,
    ) -> None:
        base_dict = {
            "final_values": final_values,
            "diverged": diverged,
            "diverged_at_step": diverged_at_step,
            "snapshots": snapshots or [],
        }
        base_dict.update(kwargs)
        super().__init__(base_dict)

    @property
    def final_values(self) -> np.ndarray:
        return self["final_values"]

    @property
    def diverged(self) -> bool:
        return self["diverged"]

    @property
    def diverged_at_step(self) -> Optional[int]:
        return self.get("diverged_at_step")

    @property
    def snapshots(self) -> List[Tuple[float, int, np.ndarray]]:
        return self["snapshots"]

    def snapshot(self, step: int) -> np.ndarray:
        for _, k, values in self.snapshots:
            if k == step:
                return values
        raise KeyError(f"no snapshot stored for step {step}")

    @property
    def meta(self) -> dict:
        """除数值数组外的元数据"""
        return {k: v for k, v in self.items() if k not in {"final_values", "snapshots"}}

    def __repr__(self) -> str:
        return (
            f"SolveResult(scheme='{self.get('scheme')}', steps={self.get('steps')}, "
            f"diverged={self.diverged}, diverged_at_step={self.diverged_at_step})"
        )


class BaseScheme:
    kind: SchemeKind = None

    def __init__(self, *args, **kwargs):
        """
        时间推进格式基类
        :param args: 位置参数
        :param kwargs: 关键字参数
        """
        pass

    @property
    def name(self) -> str:
        return self.kind.value

    def step(
        self,
        values: np.ndarray,
        ops: Sequence[TridiagonalOperator],
        *args: Any,
        **kwargs: Any,
    ) -> np.ndarray:
        """
        推进一个时间步
        :param values: 第 k 层的值
        :param ops: (旧时间层, 中间时间层, 新时间层) 的算子，已消去 ghost
        :return: 第 k+1 层的值
        """
        raise NotImplementedError()
