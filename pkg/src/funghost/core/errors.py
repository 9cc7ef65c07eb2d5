class FunGhostError(Exception):
    """funghost 所有异常的基类"""


class GridError(FunGhostError, ValueError):
    """网格构造参数不合法"""


class BarrierBelowFirstCell(GridError):
    """障碍位于第一个网格单元内(L⁺ ≤ S_1)，没有可用的内部 PDE 行"""


class AssumptionViolated(FunGhostError, ValueError):
    """稳定性公式的前提不成立(例如 r_k < 0)"""


class SingularSystem(FunGhostError, ArithmeticError):
    """三对角消元时主元过小"""


class NoConvergence(FunGhostError, RuntimeError):
    """幂迭代未收敛"""


class BracketInvalid(FunGhostError, ValueError):
    """经验阈值搜索区间的端点不满足 发散/不发散 的前提"""


class OutOfDomain(FunGhostError, ValueError):
    """读取价格的位置不在网格范围内"""


class DomainError(FunGhostError, ValueError):
    """解析公式输入不在适用范围内"""

    def __init__(self, message: str, value: float = None):
        super().__init__(message)
        self.value = value


class ConfigError(FunGhostError, ValueError):
    """配置文件无法解析或取值不一致"""
