from .explicit import ExplicitEuler, step_explicit
from .theta import CrankNicolson, ImplicitEuler, ThetaScheme, step_theta
from .trbdf2 import TRBDF2, step_trbdf2
from .solver import get_scheme, initial_condition, read_price, solve
from .diagnostics import barrier_sequence, count_sign_changes, profile_window

__all__ = [
    "CrankNicolson",
    "ExplicitEuler",
    "ImplicitEuler",
    "TRBDF2",
    "ThetaScheme",
    "barrier_sequence",
    "count_sign_changes",
    "get_scheme",
    "initial_condition",
    "profile_window",
    "read_price",
    "solve",
    "step_explicit",
    "step_theta",
    "step_trbdf2",
]
