"""
Scheduler 模組
"""

from .frequency import (
    FrequencyVector,
    from_mapping,
    from_values,
    lebesgue,
    load_alpha,
    parse_alpha,
    point_mass,
    uniform,
)
from .sequence import (
    conditional_deviation,
    deviation,
    deviation_of_indices,
    freq_sequence,
    marginal_deviation,
    schedule_indices,
    weave,
)

__all__ = [
    "FrequencyVector",
    "conditional_deviation",
    "deviation",
    "deviation_of_indices",
    "freq_sequence",
    "from_mapping",
    "from_values",
    "lebesgue",
    "load_alpha",
    "marginal_deviation",
    "parse_alpha",
    "point_mass",
    "schedule_indices",
    "uniform",
    "weave",
]
