import math
from fractions import Fraction

import numpy as np
import pytest

from core import (
    HypothesisError,
    ValidationError,
    check_domination,
    new_family,
    new_gls_system,
    signed_base_family,
)
from core.presets import mixed_base_family
from dimension import (
    dim_level_set,
    dim_variational,
    inf_q_pressure,
    lyapunov_dim,
    minimize_pressure,
    phi_s,
    pressure,
    pressure_bruteforce,
    pressure_dual,
)
from scheduler import from_values, point_mass


def random_alpha(rng, family, concentration=1.0):
    return from_values(family.digits, rng.dirichlet(np.ones(family.size) * concentration), family)


def random_system(rng):
    cells = rng.integers(2, 10, size=int(rng.integers(3, 6)))
    cuts = np.concatenate([[0], np.cumsum(cells)])
    partition = [Fraction(int(c), int(cuts[-1])) for c in cuts]
    flips = [int(t) for t in rng.integers(0, 2, size=len(cells))]
    return new_gls_system(partition, flips)


def random_family(rng):
    """兩個長度抖動、翻轉隨機的數系，權重取在支配條件允許的區間內"""
    while True:
        systems = [random_system(rng), random_system(rng)]
        longest = [max(b - a for a, b in zip(h.partition, h.partition[1:])) for h in systems]
        room = 1 - longest[0] - longest[1]
        if room > 0:
            break
    p0 = longest[0] + room * Fraction(int(rng.integers(1, 10)), 10)
    family = new_family(systems, [p0, 1 - p0])
    assert check_domination(family).holds
    return family


def assert_random_instance(family, alpha):
    assert dim_level_set(alpha, family) == lyapunov_dim(alpha, family)
    for s in (0.25, 0.75, 1.0, 1.5, 1.9):
        assert inf_q_pressure(family, alpha, s) == pytest.approx(
            pressure_dual(family, alpha, s), abs=1e-8
        )
    assert dim_variational(alpha, family) == pytest.approx(
        dim_level_set(alpha, family), abs=1e-6
    )


class TestPhi:
    @pytest.mark.parametrize(
        "s, expected",
        [(1.0, 0.5), (0.5, 0.5**0.5), (1.5, 0.5 * 3**-0.5), (0.0, 1.0)],
    )
    def test_single_digit(self, s1, s, expected):
        assert phi_s(s1, [(0, 0)], s) == pytest.approx(expected)

    def test_product_word(self, s1):
        assert phi_s(s1, [(0, 1), (1, 2)], 1.5) == pytest.approx(0.25 * (1 / 9) ** 0.5)

    @pytest.mark.parametrize("s", [-0.1, 2.0, float("nan")])
    def test_s_out_of_range(self, s1, s):
        with pytest.raises(ValidationError):
            phi_s(s1, [(0, 0)], s)


class TestPressure:
    def test_uniform_examples(self, s1, s1_uniform):
        assert pressure(s1, s1_uniform, 1.0) == pytest.approx(math.log(3))
        assert pressure(s1, s1_uniform, 2.0) == pytest.approx(0, abs=1e-12)

    def test_constant_shift_invariance(self, s1, s2_alpha):
        q = np.linspace(-1, 1, s1.size)
        base = pressure(s1, s2_alpha, 1.3, q)
        assert pressure(s1, s2_alpha, 1.3, q + 5.0) == pytest.approx(base, abs=1e-12)

    def test_q_by_digit(self, s1, s2_alpha):
        q = {e: 0.1 * i for i, e in enumerate(s1.digits)}
        assert pressure(s1, s2_alpha, 0.7, q) == pytest.approx(
            pressure(s1, s2_alpha, 0.7, [0.1 * i for i in range(s1.size)])
        )

    def test_q_wrong_length(self, s1, s2_alpha):
        with pytest.raises(ValidationError):
            pressure(s1, s2_alpha, 1.0, [0.0, 1.0])

    def test_requires_domination(self, s1_uniform):
        family = signed_base_family(3, Fraction(1, 5))
        with pytest.raises(HypothesisError):
            pressure(family, s1_uniform, 1.0)

    @pytest.mark.parametrize("name", ["s1", "s3"])
    @pytest.mark.parametrize("s", [0.4, 1.0, 1.6])
    def test_bruteforce_matches_closed_form(self, name, s, request):
        family = request.getfixturevalue(name)
        rng = np.random.default_rng(23)
        alpha = random_alpha(rng, family)
        q = rng.normal(size=family.size)
        expected = pressure(family, alpha, s, q)
        for n in range(1, 5 if family.size > 6 else 6):
            assert pressure_bruteforce(family, alpha, s, q, n=n) == pytest.approx(
                expected, abs=1e-10
            )

    def test_bruteforce_depth_must_be_positive(self, s1, s1_uniform):
        with pytest.raises(ValidationError):
            pressure_bruteforce(s1, s1_uniform, 1.0, n=0)


class TestInfimum:
    @pytest.mark.parametrize("s", [0.25, 0.75, 1.0, 1.5, 1.9])
    def test_matches_dual(self, s1, s2_alpha, s):
        assert inf_q_pressure(s1, s2_alpha, s) == pytest.approx(
            pressure_dual(s1, s2_alpha, s), abs=1e-8
        )

    def test_skewed_value_at_one(self, s1, s2_alpha):
        assert inf_q_pressure(s1, s2_alpha, 1.0) == pytest.approx(1.06917, abs=1e-5)

    def test_minimizer_is_centred(self, s3, s3_lebesgue):
        result = minimize_pressure(s3, s3_lebesgue, 1.2)
        assert abs(result.q.sum()) < 1e-9
        assert pressure(s3, s3_lebesgue, 1.2, result.q) == pytest.approx(result.value, abs=1e-10)

    def test_point_mass_needs_no_optimizer(self, s1):
        alpha = point_mass(s1, (1, 2))
        result = minimize_pressure(s1, alpha, 0.5)
        assert result.iterations == 0
        assert result.value == pytest.approx(0.5 * math.log(0.5))
        assert result.value == pytest.approx(pressure_dual(s1, alpha, 0.5))

    def test_zero_components_are_dropped(self, s1):
        alpha = from_values(s1.digits, ["1/2", "0", "1/4", "1/4", "0", "0"], s1)
        assert inf_q_pressure(s1, alpha, 1.4) == pytest.approx(
            pressure_dual(s1, alpha, 1.4), abs=1e-8
        )

    def test_decreasing_in_s(self, s1, s2_alpha):
        values = [inf_q_pressure(s1, s2_alpha, s) for s in np.linspace(0, 2, 21)]
        assert all(b < a for a, b in zip(values, values[1:]))


class TestDimVariational:
    def test_uniform_is_full(self, s1, s1_uniform):
        assert dim_variational(s1_uniform, s1) == pytest.approx(2, abs=1e-7)

    def test_skewed_signed_base(self, s1, s2_alpha):
        assert dim_variational(s2_alpha, s1) == pytest.approx(1.97320, abs=1e-5)
        assert dim_variational(s2_alpha, s1) == pytest.approx(lyapunov_dim(s2_alpha, s1), abs=1e-6)

    def test_entropy_ratio_branch(self, s1):
        skewed = from_values(s1.digits, ["0.97"] + ["0.006"] * 5, s1)
        assert dim_variational(skewed, s1) == pytest.approx(0.26405, abs=1e-5)
        assert dim_variational(skewed, s1) == pytest.approx(lyapunov_dim(skewed, s1), abs=1e-6)

    def test_point_mass(self, s1):
        assert dim_variational(point_mass(s1, (0, 0)), s1) == pytest.approx(0, abs=1e-7)

    @pytest.mark.parametrize("tol", [0, -1e-3])
    def test_bad_tolerance(self, s1, s1_uniform, tol):
        with pytest.raises(ValidationError):
            dim_variational(s1_uniform, s1, tol=tol)

    def test_requires_domination(self, s1_uniform):
        family = signed_base_family(3, Fraction(1, 5))
        with pytest.raises(HypothesisError):
            dim_variational(s1_uniform, family)

    def test_agrees_with_closed_form_random(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            bases = [int(b) for b in rng.integers(3, 6, size=2)]
            family = mixed_base_family(bases, ["1/2", "1/2"])
            alpha = random_alpha(rng, family)
            assert dim_variational(alpha, family) == pytest.approx(
                lyapunov_dim(alpha, family), abs=1e-6
            )

    def test_jittered_flipped_families(self):
        rng = np.random.default_rng(53)
        for _ in range(8):
            family = random_family(rng)
            assert_random_instance(family, random_alpha(rng, family, concentration=0.5))


@pytest.mark.slow
def test_variational_agreement_acceptance():
    rng = np.random.default_rng(97)
    for _ in range(100):
        family = random_family(rng)
        assert_random_instance(family, random_alpha(rng, family, concentration=0.5))
