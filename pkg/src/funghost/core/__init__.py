from .errors import (
    AssumptionViolated,
    BarrierBelowFirstCell,
    BracketInvalid,
    ConfigError,
    DomainError,
    FunGhostError,
    GridError,
    NoConvergence,
    OutOfDomain,
    SingularSystem,
)
from .term import MarketParams, TermStructure, sample
from .grid import (
    ContractSpec,
    SpatialGrid,
    build_barrier_on_node,
    build_uniform,
    default_smax,
)
from .operator import (
    TridiagonalOperator,
    assemble_interior,
    build_operator,
    eliminate_ghost,
    ghost_value,
    lower_boundary_row,
)
from .tridiag import solve_tridiagonal
from .base import BaseScheme, SchemeConfig, SchemeKind, SolveResult

__all__ = [
    "AssumptionViolated",
    "BarrierBelowFirstCell",
    "BracketInvalid",
    "ConfigError",
    "DomainError",
    "FunGhostError",
    "GridError",
    "NoConvergence",
    "OutOfDomain",
    "SingularSystem",
    "MarketParams",
    "TermStructure",
    "sample",
    "ContractSpec",
    "SpatialGrid",
    "build_barrier_on_node",
    "build_uniform",
    "default_smax",
    "TridiagonalOperator",
    "assemble_interior",
    "build_operator",
    "eliminate_ghost",
    "ghost_value",
    "lower_boundary_row",
    "solve_tridiagonal",
    "BaseScheme",
    "SchemeConfig",
    "SchemeKind",
    "SolveResult",
]
