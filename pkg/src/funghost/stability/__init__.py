from .spectrum import EigenEstimate, dominant_eigenvalue, norm_argmax, norm_check, norm_rows
from .thresholds import (
    OffDiagonalCheck,
    StabilityReport,
    check_offdiag_nonneg,
    dt_max_ghost,
    dt_max_ghost_asymptotic,
    dt_max_ghost_monotone,
    dt_max_interior,
    epsilon_scan,
    ghost_threshold,
    n_steps,
    row_thresholds,
    stability_report,
)
from .empirical import (
    DivergenceProbe,
    bracket_threshold,
    empirical_threshold,
    find_threshold,
)

__all__ = [
    "EigenEstimate",
    "dominant_eigenvalue",
    "norm_argmax",
    "norm_check",
    "norm_rows",
    "OffDiagonalCheck",
    "StabilityReport",
    "check_offdiag_nonneg",
    "dt_max_ghost",
    "dt_max_ghost_asymptotic",
    "dt_max_ghost_monotone",
    "dt_max_interior",
    "epsilon_scan",
    "ghost_threshold",
    "n_steps",
    "row_thresholds",
    "stability_report",
    "DivergenceProbe",
    "bracket_threshold",
    "empirical_threshold",
    "find_threshold",
]
