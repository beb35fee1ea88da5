"""
Dimension 模組
"""

from .lyapunov import (
    BRANCH_ENTROPY,
    BRANCH_FIBRE,
    DimensionReport,
    branch,
    chi,
    dim_fibre,
    dim_level_set,
    dimension_report,
    entropy,
    lyapunov_dim,
    marginal_entropy,
)
from .pressure import (
    PressureMinimum,
    dim_variational,
    inf_q_pressure,
    minimize_pressure,
    phi_s,
    pressure,
    pressure_bruteforce,
    pressure_dual,
    weight_sweep,
)

__all__ = [
    "BRANCH_ENTROPY",
    "BRANCH_FIBRE",
    "DimensionReport",
    "PressureMinimum",
    "branch",
    "chi",
    "dim_fibre",
    "dim_level_set",
    "dim_variational",
    "dimension_report",
    "entropy",
    "inf_q_pressure",
    "lyapunov_dim",
    "marginal_entropy",
    "minimize_pressure",
    "phi_s",
    "pressure",
    "pressure_bruteforce",
    "pressure_dual",
    "weight_sweep",
]
