from fractions import Fraction

import numpy as np
import pytest

from codec import Word, frequencies
from core import HypothesisError, ValidationError
from scheduler import (
    conditional_deviation,
    deviation,
    freq_sequence,
    from_mapping,
    from_values,
    lebesgue,
    load_alpha,
    marginal_deviation,
    parse_alpha,
    point_mass,
    uniform,
    weave,
)

E1, E2, E3 = (0, 0), (0, 1), (0, 2)


@pytest.fixture
def three_symbols():
    return from_values([E1, E2, E3], ["1/2", "1/3", "1/6"])


def random_alpha(rng, family, zeros=False):
    values = rng.dirichlet(np.ones(family.size))
    if zeros:
        values[rng.random(family.size) < 0.3] = 0
        if values.sum() == 0:
            values[0] = 1
        values = values / values.sum()
    return from_values(family.digits, values, family)


class TestFrequencyVector:
    def test_marginals(self, s2_alpha):
        assert s2_alpha.exact_marginals == {0: Fraction(1, 2), 1: Fraction(1, 2)}
        np.testing.assert_allclose(s2_alpha.marginals, [0.5, 0.5])

    def test_must_sum_to_one(self, s1):
        with pytest.raises(ValidationError):
            from_mapping(s1, {(0, 0): "1/2"})

    def test_negative_component(self, s1):
        with pytest.raises(ValidationError):
            from_mapping(s1, {(0, 0): "3/2", (0, 1): "-1/2"})

    def test_lebesgue(self, s3):
        alpha = lebesgue(s3)
        assert alpha.exact_of((0, 0)) == Fraction(2, 15)
        assert alpha.exact_of((1, 3)) == Fraction(3, 20)

    def test_conditional(self, s2_alpha, s1):
        cond = s2_alpha.conditional(0)
        assert cond.exact == (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
        with pytest.raises(HypothesisError):
            point_mass(s1, (0, 0)).conditional(1)

    def test_float_input_is_exact(self, s1):
        alpha = from_values(s1.digits, [1 / 6] * 6, s1)
        assert alpha.exact == (Fraction(1, 6),) * 6

    def test_sparse_float_draws_are_accepted(self, s1):
        rng = np.random.default_rng(41)
        for _ in range(1000):
            values = rng.dirichlet(np.ones(s1.size) * 0.3)
            alpha = from_values(s1.digits, values, s1)
            assert sum(alpha.exact) == 1
            assert all(a.denominator <= 10**9 for a in alpha.exact)
            np.testing.assert_allclose(alpha.values, values, rtol=0, atol=1e-8)

    def test_float_sum_off_by_more_than_tolerance(self, s1):
        with pytest.raises(ValidationError, match="sum to"):
            from_values(s1.digits, [0.2, 0.2, 0.2, 0.2, 0.1, 0.09999], s1)


class TestParse:
    def test_text_format(self, s1, families_dir, s2_alpha):
        assert load_alpha(str(families_dir / "skewed_alpha.txt"), s1) == s2_alpha

    def test_inline_and_json(self, s1, s1_uniform):
        inline = " ".join(f"{j},{k}:1/6" for j, k in s1.digits)
        assert parse_alpha(inline, s1) == s1_uniform
        assert parse_alpha('{"0,0": 1}', s1) == point_mass(s1, (0, 0))

    def test_builtins(self, s1, s1_uniform):
        assert load_alpha("uniform", s1) == s1_uniform
        assert load_alpha("lebesgue", s1) == lebesgue(s1)

    def test_file_path_with_colon(self, s1, s2_alpha, families_dir, tmp_path):
        folder = tmp_path / "run:1"
        folder.mkdir()
        target = folder / "alpha:skewed.txt"
        target.write_text((families_dir / "skewed_alpha.txt").read_text())
        assert load_alpha(str(target), s1) == s2_alpha

    def test_bad_token(self, s1):
        with pytest.raises(ValidationError):
            parse_alpha("0,0=1", s1)

    def test_unknown_digit(self, s1):
        with pytest.raises(ValidationError):
            parse_alpha("0,7:1", s1)


class TestFreqSequence:
    def test_hand_executed_example(self, three_symbols):
        word = freq_sequence(three_symbols, 6)
        assert word.digits == (E1, E2, E1, E3, E1, E2)

    def test_point_mass(self, s1):
        word = freq_sequence(point_mass(s1, (1, 2)), 10)
        assert set(word.digits) == {(1, 2)}

    def test_uniform_emits_each_digit_once(self, s1, s1_uniform):
        assert freq_sequence(s1_uniform, 6).digits == s1.digits

    def test_deviation_examples(self, three_symbols, s1_uniform):
        assert deviation(freq_sequence(three_symbols, 60), three_symbols) <= 4
        assert deviation(freq_sequence(s1_uniform, 600), s1_uniform) <= 7

    def test_constant_word_has_no_deviation(self, s1):
        alpha = point_mass(s1, (0, 1))
        assert deviation(Word(((0, 1),) * 20, s1), alpha) == 0

    def test_zero_length(self, s1_uniform):
        assert len(freq_sequence(s1_uniform, 0)) == 0

    def test_frequency_convergence(self, s2_alpha):
        n = 10_000
        tau = frequencies(freq_sequence(s2_alpha, n))
        gap = np.max(np.abs(tau.values - s2_alpha.values))
        assert gap <= (s2_alpha.size + 1) / n

    def test_deviation_bound_random(self, s3):
        rng = np.random.default_rng(3)
        for _ in range(20):
            alpha = random_alpha(rng, s3, zeros=True)
            assert deviation(freq_sequence(alpha, 20_000), alpha) <= alpha.size + 1


@pytest.mark.slow
def test_deviation_bound_acceptance():
    from core.presets import mixed_base_family

    rng = np.random.default_rng(11)
    for _ in range(50):
        bases = [int(b) for b in rng.integers(2, 5, size=2)]
        family = mixed_base_family(bases, ["1/2", "1/2"])
        alpha = random_alpha(rng, family)
        assert deviation(freq_sequence(alpha, 1_000_000), alpha) <= family.size + 1


class TestWeave:
    def test_alternating_uniform(self, s1, s1_uniform):
        word = weave((0, 1, 0, 1), s1_uniform, 4)
        assert word.digits == ((0, 0), (1, 0), (0, 1), (1, 1))

    def test_single_strand_matches_scheduler(self, s2_alpha):
        woven = weave((0,) * 12, s2_alpha, 12)
        direct = freq_sequence(s2_alpha.conditional(0), 12)
        assert woven.digits == direct.digits

    def test_projection_and_conditional_bound(self, s1, s2_alpha):
        rng = np.random.default_rng(5)
        jseq = tuple(int(j) for j in rng.integers(0, 2, size=2000))
        word = weave(jseq, s2_alpha, len(jseq))
        assert word.jseq == jseq
        for j, dev in conditional_deviation(word, s2_alpha).items():
            assert dev <= s1.systems[j].size + 1

    def test_undefined_conditional(self, s1):
        with pytest.raises(HypothesisError, match="undefined conditional frequencies"):
            weave((0, 1), point_mass(s1, (0, 0)), 2)

    def test_short_jseq(self, s1_uniform):
        with pytest.raises(ValidationError):
            weave((0,), s1_uniform, 2)


def test_marginal_deviation(s1_uniform):
    assert marginal_deviation((0, 1) * 50, s1_uniform) == pytest.approx(0.5)
    assert marginal_deviation((), s1_uniform) == 0.0
