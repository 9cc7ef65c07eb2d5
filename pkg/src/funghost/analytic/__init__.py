from .one_touch import (
    SETTLEMENTS,
    AnalyticInputs,
    MonteCarloEstimate,
    hit_probability,
    inputs_from,
    one_touch_monte_carlo,
    one_touch_price,
)

__all__ = [
    "SETTLEMENTS",
    "AnalyticInputs",
    "MonteCarloEstimate",
    "hit_probability",
    "inputs_from",
    "one_touch_monte_carlo",
    "one_touch_price",
]
