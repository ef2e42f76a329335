"""Unit tests for proximal operators and projections."""

import numpy as np
import pytest

from src.errors import NonFiniteEntryError
from src.prox import (
    group_soft_threshold_rows,
    project_nonneg,
    project_simplex_columns,
    prox_nonneg_l1,
)


class TestProxNonnegL1:
    """Test cases for the nonnegative soft threshold."""

    def test_examples(self):
        """Test max(0, x - threshold) on a few values."""
        np.testing.assert_allclose(
            prox_nonneg_l1(np.array([-1.0, 0.05, 0.3, 2.0]), 0.1), [0.0, 0.0, 0.2, 1.9]
        )

    def test_grid_search_oracle(self):
        """Test against brute-force minimization of (u-x)^2/2 + t|u| over u >= 0."""
        rng = np.random.default_rng(0)
        grid = np.arange(0.0, 5.0, 1e-4)
        for _ in range(50):
            x = rng.uniform(-2.0, 4.0)
            threshold = rng.uniform(0.0, 1.0)
            costs = 0.5 * (grid - x) ** 2 + threshold * grid
            expected = grid[np.argmin(costs)]
            assert prox_nonneg_l1(np.array([x]), threshold)[0] == pytest.approx(expected, abs=1e-3)

    def test_negative_threshold(self):
        """Test that a negative threshold is rejected."""
        with pytest.raises(ValueError):
            prox_nonneg_l1(np.ones(2), -1.0)

    def test_zero_threshold_is_orthant_projection(self):
        """Test that a zero threshold reduces to the nonnegative projection."""
        X = np.random.default_rng(3).normal(size=(4, 7))
        np.testing.assert_array_equal(prox_nonneg_l1(X, 0.0), project_nonneg(X))


class TestProjectNonneg:
    """Test cases for the orthant projection."""

    def test_clips_negative_entries(self):
        """Test that negatives become zero and positives are kept."""
        np.testing.assert_array_equal(project_nonneg(np.array([[-1.0, 2.0]])), [[0.0, 2.0]])


class TestProjectSimplexColumns:
    """Test cases for the column-wise simplex projection."""

    def test_examples(self):
        """Test hand-checked projections."""
        np.testing.assert_allclose(project_simplex_columns(np.array([0.5, 0.5])), [0.5, 0.5])
        np.testing.assert_allclose(project_simplex_columns(np.array([2.0, 0.0])), [1.0, 0.0])
        np.testing.assert_allclose(project_simplex_columns(np.array([0.0, 0.0, 0.0])), [1 / 3] * 3)

    def test_feasible_columns_unchanged(self):
        """Test that points already on the simplex are fixed points."""
        rng = np.random.default_rng(1)
        X = rng.dirichlet(np.ones(4), size=6).T
        np.testing.assert_allclose(project_simplex_columns(X), X, atol=1e-14)

    def test_sums_exact_for_large_inputs(self):
        """Test that column sums are one within 1e-12 even for +-1e8 inputs."""
        rng = np.random.default_rng(2)
        X = rng.uniform(-1e8, 1e8, size=(5, 200))
        projected = project_simplex_columns(X)
        assert np.all(projected >= 0)
        np.testing.assert_allclose(projected.sum(axis=0), 1.0, atol=1e-12, rtol=0)

    def test_beats_random_feasible_points(self):
        """Test that the projection is closer than 10^4 random simplex points."""
        rng = np.random.default_rng(3)
        for _ in range(100):
            x = rng.normal(0.0, 1.0, size=4)
            projected = project_simplex_columns(x)
            samples = rng.dirichlet(np.ones(4), size=10_000)
            best_random = np.min(np.linalg.norm(samples - x, axis=1))
            assert np.linalg.norm(projected - x) <= best_random + 1e-12

    @pytest.mark.parametrize("bad", [np.nan, -np.inf])
    def test_non_finite_input(self, bad):
        """Test that NaN and -inf inputs raise NonFiniteEntryError."""
        X = np.zeros((3, 2))
        X[1, 1] = bad
        with pytest.raises(NonFiniteEntryError) as excinfo:
            project_simplex_columns(X)
        assert (excinfo.value.row, excinfo.value.col) == (1, 1)


class TestGroupSoftThresholdRows:
    """Test cases for row-wise group shrinkage."""

    def test_shrinks_rows_by_norm(self):
        """Test h_r * max(0, 1 - t/|h_r|) row by row."""
        X = np.array([[3.0, 4.0], [0.3, 0.4], [0.0, 0.0]])
        shrunk = group_soft_threshold_rows(X, 1.0)
        np.testing.assert_allclose(shrunk, [[2.4, 3.2], [0.0, 0.0], [0.0, 0.0]])


class TestNonexpansive:
    """All three operators move two points no further apart."""

    @pytest.mark.parametrize(
        "operator",
        [
            lambda X: prox_nonneg_l1(X, 0.3),
            project_nonneg,
            project_simplex_columns,
        ],
        ids=["prox_nonneg_l1", "project_nonneg", "project_simplex_columns"],
    )
    def test_random_pairs(self, operator):
        """Test |op(x) - op(y)| <= |x - y| on random pairs."""
        rng = np.random.default_rng(11)
        for _ in range(200):
            X = rng.normal(scale=2.0, size=(5, 3))
            Y = rng.normal(scale=2.0, size=(5, 3))
            distance = np.linalg.norm(operator(X) - operator(Y))
            assert distance <= np.linalg.norm(X - Y) + 1e-12
