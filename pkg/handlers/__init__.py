"""
Handlers 模組
"""

from .family import setup_family_handlers
from .dimension import setup_dimension_handlers
from .expansion import setup_expansion_handlers
from .estimate import setup_estimate_handlers
from .history import setup_history_handlers

__all__ = [
    "setup_family_handlers",
    "setup_dimension_handlers",
    "setup_expansion_handlers",
    "setup_estimate_handlers",
    "setup_history_handlers",
]
