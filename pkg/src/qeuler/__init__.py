"""Certified evaluation of q-analogue Euler sums, their stuffle algebra and identities."""
from .classical import (
    EulerSumSpec,
    alt_zeta_value,
    constants,
    euler_linear_closed,
    euler_sum,
    parse_euler_sum,
    zeta_value,
)
from .jackson import QFunction, q_derivative, q_integral
from .numerics import DEFAULT_PRECISION, Precision, QParam, QReal, TruncationError, q_bracket
from .qseries import (
    HSpec,
    SeriesSpec,
    ShiftedSumSpec,
    h_function,
    hurwitz,
    q_harmonic,
    q_log,
    q_polylog,
    s_sum,
    series,
    shifted_sum,
    zeta_partial,
)
from .stuffle import FormalSum, Letter, li_star, s_as_li_star, stuffle, subsequence_expansion

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION", "EulerSumSpec", "FormalSum", "HSpec", "Letter", "Precision", "QFunction",
    "QParam", "QReal", "SeriesSpec", "ShiftedSumSpec", "TruncationError", "alt_zeta_value",
    "constants", "euler_linear_closed", "euler_sum", "h_function", "hurwitz", "li_star",
    "parse_euler_sum", "q_bracket", "q_derivative", "q_harmonic", "q_integral", "q_log",
    "q_polylog", "s_as_li_star", "s_sum", "series", "shifted_sum", "stuffle",
    "subsequence_expansion", "zeta_partial", "zeta_value",
]
