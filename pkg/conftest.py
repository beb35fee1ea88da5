"""
共用 fixtures：S1（帶符號三進位）、S2（S1 上的偏斜 α）、S3（3/4 混合進位）
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from core.presets import mixed_base_family, signed_base_family  # noqa: E402
from scheduler.frequency import from_mapping, lebesgue, uniform  # noqa: E402

FAMILIES_DIR = Path(__file__).parent / "families"

S2_ALPHA = {
    (0, 0): Fraction(1, 4),
    (0, 1): Fraction(1, 8),
    (0, 2): Fraction(1, 8),
    (1, 0): Fraction(1, 6),
    (1, 1): Fraction(1, 6),
    (1, 2): Fraction(1, 6),
}


@pytest.fixture
def s1():
    return signed_base_family(3, Fraction(1, 2))


@pytest.fixture
def s1_uniform(s1):
    return uniform(s1)


@pytest.fixture
def s2_alpha(s1):
    return from_mapping(s1, S2_ALPHA)


@pytest.fixture
def s3():
    return mixed_base_family([3, 4], [Fraction(2, 5), Fraction(3, 5)])


@pytest.fixture
def s3_lebesgue(s3):
    return lebesgue(s3)


@pytest.fixture
def families_dir():
    return FAMILIES_DIR
