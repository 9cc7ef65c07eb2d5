from .analytic import AnalyticInputs, one_touch_monte_carlo, one_touch_price
from .core import (
    ContractSpec,
    MarketParams,
    SchemeConfig,
    SchemeKind,
    SolveResult,
    SpatialGrid,
    TermStructure,
    build_barrier_on_node,
    build_uniform,
    default_smax,
)
from .schemes import read_price, solve
from .stability import (
    dt_max_ghost,
    dt_max_interior,
    empirical_threshold,
    n_steps,
    stability_report,
)

__all__ = [
    "AnalyticInputs",
    "ContractSpec",
    "MarketParams",
    "SchemeConfig",
    "SchemeKind",
    "SolveResult",
    "SpatialGrid",
    "TermStructure",
    "build_barrier_on_node",
    "build_uniform",
    "default_smax",
    "dt_max_ghost",
    "dt_max_interior",
    "empirical_threshold",
    "n_steps",
    "one_touch_monte_carlo",
    "one_touch_price",
    "read_price",
    "solve",
    "stability_report",
]
