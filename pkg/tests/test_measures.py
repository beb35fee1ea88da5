from fractions import Fraction

import numpy as np
import pytest

from codec import Word
from core import HypothesisError, ValidationError
from measures import (
    FibreCoding,
    fibre_consistency,
    fundamental_interval,
    m_fibre_mass,
    mu_cylinder,
    nu_interval,
    sample_w,
)
from scheduler import lebesgue, point_mass


class TestCylinderMasses:
    def test_mu_examples(self, s1, s1_uniform, s2_alpha):
        assert mu_cylinder(s1_uniform, ((0, 1), (1, 2), (0, 0)), exact=True) == Fraction(1, 216)
        assert mu_cylinder(s2_alpha, ((0, 0), (0, 0))) == pytest.approx(1 / 16)
        assert mu_cylinder(point_mass(s1, (0, 0)), Word(((0, 0), (1, 1)), s1)) == 0

    def test_nu_examples(self, s1_uniform, s3):
        assert nu_interval(s1_uniform, (0, 1), exact=True) == Fraction(1, 4)
        assert nu_interval(s1_uniform, ()) == 1
        assert nu_interval(lebesgue(s3), (1, 1)) == pytest.approx(0.36)

    def test_fibre_mass_examples(self, s1_uniform, s2_alpha):
        assert m_fibre_mass(s2_alpha, ((0, 0), (1, 2)), exact=True) == Fraction(1, 6)
        assert m_fibre_mass(s1_uniform, ((0, 1),) * 5, exact=True) == Fraction(1, 3**5)
        assert m_fibre_mass(s1_uniform, ()) == 1

    def test_fibre_mass_zero_marginal(self, s1):
        with pytest.raises(HypothesisError):
            m_fibre_mass(point_mass(s1, (0, 0)), ((1, 0),))

    def test_additivity(self, s1, s2_alpha):
        word = ((0, 0), (1, 2))
        base_mu = mu_cylinder(s2_alpha, word, exact=True)
        base_m = m_fibre_mass(s2_alpha, word, exact=True)
        assert sum(mu_cylinder(s2_alpha, word + (e,), exact=True) for e in s1.digits) == base_mu
        for j in range(s1.J):
            extended = sum(
                m_fibre_mass(s2_alpha, word + (e,), exact=True) for e in s1.digits_of(j)
            )
            assert extended == base_m
        jword = (0, 1, 1)
        assert sum(nu_interval(s2_alpha, jword + (j,), exact=True) for j in range(2)) == nu_interval(
            s2_alpha, jword, exact=True
        )

    @pytest.mark.parametrize("name", ["s1_uniform", "s2_alpha"])
    def test_consistency(self, name, request):
        alpha = request.getfixturevalue(name)
        masses = fibre_consistency(alpha)
        assert all(masses[e] == alpha.exact_of(e) for e in alpha.digits)


class TestFundamentalInterval:
    def test_examples(self, s1):
        interval = fundamental_interval(s1, ((0, 1), (1, 1)))
        assert (interval.a, interval.b) == pytest.approx((4 / 9, 5 / 9))
        assert interval.depth == 2
        single = fundamental_interval(s1, ((1, 2),))
        assert (single.a, single.b) == pytest.approx((2 / 3, 1))

    def test_nesting(self, s3):
        rng = np.random.default_rng(2)
        word = ()
        outer = None
        for _ in range(10):
            e = s3.digits[int(rng.integers(s3.size))]
            word = word + (e,)
            inner = fundamental_interval(s3, word)
            if outer is not None:
                assert outer.a - 1e-15 <= inner.a <= inner.b <= outer.b + 1e-15
                assert inner.width / outer.width == pytest.approx(s3.digit_l[s3.index_of(e)])
            outer = inner

    def test_empty_word(self, s1):
        with pytest.raises(ValidationError):
            fundamental_interval(s1, ())


class TestSampleW:
    def test_point_mass(self, s1):
        assert set(sample_w(point_mass(s1, (0, 2)), 50, seed=1).jseq) == {0}

    def test_law_of_large_numbers(self, s1_uniform):
        coding = sample_w(s1_uniform, 100_000, seed=42)
        assert abs(np.mean(coding.jseq) - 0.5) < 0.01

    def test_seed_repeatability(self, s2_alpha):
        assert sample_w(s2_alpha, 200, seed=9) == sample_w(s2_alpha, 200, seed=9)
        assert sample_w(s2_alpha, 200, seed=9) != sample_w(s2_alpha, 200, seed=10)

    def test_coding_range(self, s1):
        with pytest.raises(ValidationError):
            FibreCoding(jseq=(0, 2), family=s1)
