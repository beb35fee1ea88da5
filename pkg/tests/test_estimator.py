import io
import math

import numpy as np
import pytest

from core import HypothesisError, ValidationError
from estimator import (
    PointCloud,
    box_count_dim,
    default_scales,
    dominant_ratio,
    estimate_dim_fibre,
    grid_entropy_dim,
    local_dim_fibre,
    sample_fibre_points,
    sample_points,
    sample_word,
)
from scheduler import freq_sequence, from_mapping, point_mass


def diagonal_cloud(size=4096):
    t = np.linspace(0, 1, size, endpoint=False)
    return PointCloud(points=np.column_stack([t, t]), depth=0, samples=size, seed=0)


class TestSampleWord:
    def test_point_mass(self, s1):
        word = sample_word(point_mass(s1, (1, 1)), 30, seed=4)
        assert set(word.digits) == {(1, 1)}

    def test_law_of_large_numbers(self, s2_alpha):
        word = sample_word(s2_alpha, 60_000, seed=8)
        share = sum(1 for e in word.digits if e == (0, 0)) / len(word)
        assert abs(share - 0.25) < 0.01

    def test_seed_repeatability(self, s2_alpha):
        assert sample_word(s2_alpha, 100, seed=1) == sample_word(s2_alpha, 100, seed=1)

    def test_depth_must_be_positive(self, s1_uniform):
        with pytest.raises(ValidationError):
            sample_word(s1_uniform, 0, seed=0)


class TestSamplePoints:
    def test_point_mass_goes_to_corner(self, s1):
        cloud = sample_points(s1, point_mass(s1, (0, 0)), 12, 1, seed=0)
        assert len(cloud) == 1
        assert cloud.points[0] == pytest.approx((0, 0), abs=1e-3)

    def test_inside_unit_square(self, s3, s3_lebesgue):
        cloud = sample_points(s3, s3_lebesgue, 10, 2000, seed=5)
        assert cloud.dim == 2
        assert np.all((cloud.points >= 0) & (cloud.points <= 1))

    def test_reproducible_across_workers(self, s1, s2_alpha):
        serial = sample_points(s1, s2_alpha, 8, 10_000, seed=12, workers=1)
        threaded = sample_points(s1, s2_alpha, 8, 10_000, seed=12, workers=4)
        np.testing.assert_array_equal(serial.points, threaded.points)

    def test_seed_changes_cloud(self, s1, s1_uniform):
        a = sample_points(s1, s1_uniform, 6, 100, seed=1)
        b = sample_points(s1, s1_uniform, 6, 100, seed=2)
        assert not np.array_equal(a.points, b.points)

    @pytest.mark.parametrize("n, M", [(0, 10), (5, 0)])
    def test_counts_must_be_positive(self, s1, s1_uniform, n, M):
        with pytest.raises(ValidationError):
            sample_points(s1, s1_uniform, n, M, seed=0)

    def test_csv_layout(self, s1, s1_uniform):
        stream = io.StringIO()
        sample_points(s1, s1_uniform, 4, 3, seed=0).to_csv(stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == "w,x"
        assert len(lines) == 4
        assert all(len(line.split(",")) == 2 for line in lines[1:])


class TestFibrePoints:
    def test_single_fibre(self, s1, s2_alpha):
        cloud = sample_fibre_points(s1, s2_alpha, 10, 500, seed=3)
        assert cloud.dim == 1
        assert 0 <= cloud.fibre_w <= 1
        assert np.all((cloud.points >= 0) & (cloud.points <= 1))
        np.testing.assert_array_equal(cloud.rows()[:, 0], cloud.fibre_w)

    def test_reproducible(self, s1, s2_alpha):
        a = sample_fibre_points(s1, s2_alpha, 10, 5000, seed=3, workers=1)
        b = sample_fibre_points(s1, s2_alpha, 10, 5000, seed=3, workers=3)
        assert a.fibre_w == b.fibre_w
        np.testing.assert_array_equal(a.points, b.points)

    def test_zero_marginal(self, s1):
        with pytest.raises(HypothesisError):
            sample_fibre_points(s1, point_mass(s1, (0, 1)), 5, 10, seed=0)


class TestScales:
    def test_default_scales(self, s1):
        assert default_scales(s1, 20_000) == pytest.approx([2.0**-k for k in range(1, 6)])
        assert default_scales(s1, 20_000, dim=1) == pytest.approx([3.0**-k for k in range(3, 8)])

    def test_dominant_ratio(self, s3):
        assert dominant_ratio(s3) == pytest.approx(0.6)
        assert dominant_ratio(s3, fibre=True) == pytest.approx(1 / 3)

    def test_too_few_samples(self, s1):
        with pytest.raises(ValidationError):
            default_scales(s1, 100)

    def test_needs_three_scales(self):
        with pytest.raises(ValidationError):
            grid_entropy_dim(diagonal_cloud(), [0.5, 0.25])

    @pytest.mark.parametrize("scales", [[0.5, 0.5, 0.25], [1.5, 0.5, 0.25], [0.5, 0.25, 0.0]])
    def test_bad_scales(self, scales):
        with pytest.raises(ValidationError):
            box_count_dim(diagonal_cloud(), scales)


class TestScalingFits:
    def test_segment_box_count(self):
        fit = box_count_dim(diagonal_cloud(), [2.0**-k for k in range(2, 7)])
        assert fit.slope == pytest.approx(1.0, abs=1e-9)
        assert fit.kind == "box-count"
        assert fit.scales[0] > fit.scales[-1]

    def test_segment_grid_entropy(self):
        fit = grid_entropy_dim(diagonal_cloud(), [2.0**-k for k in range(2, 7)])
        assert fit.slope == pytest.approx(1.0, abs=1e-9)
        assert fit.residual < 1e-9

    def test_single_point_is_degenerate(self, caplog):
        cloud = PointCloud(points=np.array([[0.3, 0.7]]), depth=1, samples=1, seed=0)
        fit = grid_entropy_dim(cloud, [0.5, 0.25, 0.125])
        assert fit.slope == 0
        assert "Degenerate" in caplog.text

    def test_uniform_fills_square(self, s1, s1_uniform):
        cloud = sample_points(s1, s1_uniform, 12, 20_000, seed=0)
        fit = grid_entropy_dim(cloud, default_scales(s1, 20_000))
        assert fit.slope == pytest.approx(2.0, abs=0.1)

    def test_skewed_measure(self, s1, s2_alpha):
        cloud = sample_points(s1, s2_alpha, 12, 20_000, seed=0)
        fit = grid_entropy_dim(cloud, default_scales(s1, 20_000))
        assert fit.slope == pytest.approx(1.9732, abs=0.1)

    def test_to_dict(self):
        record = box_count_dim(diagonal_cloud(), [0.5, 0.25, 0.125]).to_dict()
        assert set(record) == {"kind", "scales", "statistics", "slope", "intercept", "residual"}


class TestFibreDimension:
    def test_uniform_fibre_estimate(self, s1, s1_uniform):
        fit = estimate_dim_fibre(s1, s1_uniform, n=12, M=20_000, seed=0)
        assert fit.slope == pytest.approx(1.0, abs=0.1)

    def test_skewed_fibre_estimate(self, s1, s2_alpha):
        fit = estimate_dim_fibre(s1, s2_alpha, n=12, M=20_000, seed=0)
        assert fit.slope == pytest.approx(0.97320, abs=0.1)

    def test_one_digit_per_system_collapses_fibre(self, s1):
        alpha = from_mapping(s1, {(0, 0): "1/2", (1, 1): "1/2"})
        fit = estimate_dim_fibre(s1, alpha, n=12, M=20_000, seed=0)
        assert fit.slope == pytest.approx(0, abs=0.05)

    def test_local_dim_uniform_is_exact(self, s1, s1_uniform):
        word = sample_word(s1_uniform, 200, seed=6)
        assert local_dim_fibre(s1, s1_uniform, word) == [1.0] * 200

    def test_local_dim_skewed_random_word(self, s1, s2_alpha):
        word = sample_word(s2_alpha, 10_000, seed=3)
        assert local_dim_fibre(s1, s2_alpha, word)[-1] == pytest.approx(0.97320, abs=0.02)

    def test_local_dim_scheduled_word(self, s1, s2_alpha):
        ratios = local_dim_fibre(s1, s2_alpha, freq_sequence(s2_alpha, 10_000))
        assert len(ratios) == 10_000
        assert ratios[-1] == pytest.approx(0.97320, abs=5e-3)

    def test_local_dim_first_digit(self, s1, s2_alpha):
        ratios = local_dim_fibre(s1, s2_alpha, [(0, 0)])
        assert ratios == [pytest.approx(math.log(0.5) / math.log(1 / 3))]

    def test_zero_marginal(self, s1):
        with pytest.raises(HypothesisError):
            local_dim_fibre(s1, point_mass(s1, (0, 0)), [(1, 0)])

    def test_empty_word(self, s1, s1_uniform):
        with pytest.raises(ValidationError):
            local_dim_fibre(s1, s1_uniform, [])
