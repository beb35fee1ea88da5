"""
Estimator 模組
"""

from .sampling import PointCloud, sample_fibre_points, sample_points, sample_word
from .scaling import (
    ScalingFit,
    box_count_dim,
    box_occupancy,
    default_scales,
    dominant_ratio,
    grid_entropy_dim,
)
from .fibre import estimate_dim_fibre, local_dim_fibre

__all__ = [
    "PointCloud",
    "ScalingFit",
    "box_count_dim",
    "box_occupancy",
    "default_scales",
    "dominant_ratio",
    "estimate_dim_fibre",
    "grid_entropy_dim",
    "local_dim_fibre",
    "sample_fibre_points",
    "sample_points",
    "sample_word",
]
