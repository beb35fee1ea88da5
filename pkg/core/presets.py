"""
常用的 GLS 冗餘族
"""

from fractions import Fraction
from typing import Sequence

from core.errors import ValidationError
from core.system import GlsFamily, new_family, new_gls_system, to_fraction


def base_system(N: int, flipped: bool = False):
    """等分 N 格的系統；flipped 時所有分支反向"""
    if N < 2:
        raise ValidationError(f"base must be at least 2, got {N}", "N")
    partition = [Fraction(k, N) for k in range(N + 1)]
    return new_gls_system(partition, [int(flipped)] * N)


def signed_base_family(N: int, p0=Fraction(1, 2)) -> GlsFamily:
    """
    有號 N 進位展開
    H0 = {(x+k)/N}，H1 = {(k+1-x)/N}，p = (p0, 1-p0)
    p0 ∈ (1/N, 1-1/N) 時支配條件成立
    """
    p0 = to_fraction(p0, "p0")
    if not 0 < p0 < 1:
        raise ValidationError(f"p0 must lie in (0,1), got {p0}", "p0")
    return new_family([base_system(N), base_system(N, flipped=True)], [p0, 1 - p0])


def mixed_base_family(bases: Sequence[int], weights: Sequence) -> GlsFamily:
    """混合進位：h_{(j,k)}(x) = (k+x)/M_j"""
    return new_family([base_system(M) for M in bases], weights)
