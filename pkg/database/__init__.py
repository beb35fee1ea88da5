"""
Database 模組
"""

from .db import RunStore

__all__ = ["RunStore"]
