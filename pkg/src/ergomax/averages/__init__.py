from ergomax.averages.alpha import (
    AlphaMethod,
    AlphaResult,
    alpha_bruteforce,
    alpha_karp,
    compute_alpha,
)
from ergomax.averages.horizons import HorizonTable, horizon_sup, horizon_table, limsup_tail
from ergomax.averages.minimax import MinimaxCheck, minimax_inequality_check
from ergomax.averages.time_averages import (
    ExtremeDiagnostics,
    TimeAverageProfile,
    exact_inf_of_sup,
    exact_inf_time_average,
    sup_inf_over_periodic,
    supsup_infinf_diagnostics,
    time_average_series,
)

__all__ = [
    "AlphaMethod",
    "AlphaResult",
    "alpha_bruteforce",
    "alpha_karp",
    "compute_alpha",
    "HorizonTable",
    "horizon_sup",
    "horizon_table",
    "limsup_tail",
    "MinimaxCheck",
    "minimax_inequality_check",
    "ExtremeDiagnostics",
    "TimeAverageProfile",
    "exact_inf_of_sup",
    "exact_inf_time_average",
    "sup_inf_over_periodic",
    "supsup_infinf_diagnostics",
    "time_average_series",
]
