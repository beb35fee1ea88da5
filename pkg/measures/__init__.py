"""
Measures 模組
"""

from .bernoulli import (
    FibreCoding,
    FundamentalInterval,
    fibre_consistency,
    fundamental_interval,
    m_fibre_mass,
    mu_cylinder,
    nu_interval,
    sample_w,
)

__all__ = [
    "FibreCoding",
    "FundamentalInterval",
    "fibre_consistency",
    "fundamental_interval",
    "m_fibre_mass",
    "mu_cylinder",
    "nu_interval",
    "sample_w",
]
