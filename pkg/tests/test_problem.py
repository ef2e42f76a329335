"""Unit tests for problem definition, validation and weight scaling."""

import numpy as np
import pytest

from src.errors import (
    ConfigError,
    DegenerateDictionaryError,
    DimensionMismatchError,
    EmptyClassError,
    NegativeDictionaryError,
    NonFiniteEntryError,
    ProblemValidationError,
    ZeroImageError,
)
from src.problem import (
    UNLABELED,
    Hyperparameters,
    Problem,
    RawWeights,
    SpatialGrid,
    Variant,
    build_class_weights,
    problem_violations,
    scale_hyperparameters,
    validate_problem,
)
from tests.helpers import make_random_problem


class TestVariant:
    """Test cases for variant parsing."""

    def test_parse_names_and_aliases(self):
        """Test that full names and short aliases map to the variants."""
        assert Variant.parse("quadratic") is Variant.QUADRATIC
        assert Variant.parse("Q") is Variant.QUADRATIC
        assert Variant.parse("cross-entropy") is Variant.CROSS_ENTROPY
        assert Variant.parse("ce") is Variant.CROSS_ENTROPY

    def test_parse_unknown(self):
        """Test that unknown names raise ConfigError."""
        with pytest.raises(ConfigError):
            Variant.parse("hinge")


class TestHyperparameters:
    """Test cases for hyperparameter invariants."""

    def test_defaults_are_valid(self):
        """Test that the default hyperparameters construct."""
        hyper = Hyperparameters()
        assert hyper.alpha > 1

    @pytest.mark.parametrize(
        "overrides",
        [
            {"lambda1": -1.0},
            {"epsilon_tv": 0.0},
            {"sigma_beta": -0.1},
            {"alpha": 1.0},
            {"stop_tol": 0.0},
            {"max_iters": -1},
        ],
    )
    def test_invalid_values_rejected(self, overrides):
        """Test that out-of-range values raise ConfigError."""
        with pytest.raises(ConfigError):
            Hyperparameters(**overrides)

    def test_zero_max_iters_allowed(self):
        """Test that max_iters = 0 is accepted."""
        assert Hyperparameters(max_iters=0).max_iters == 0


class TestSpatialGrid:
    """Test cases for the pixel lattice."""

    def test_uniform_beta(self):
        """Test that the uniform grid has beta = 1/P everywhere."""
        grid = SpatialGrid.uniform(3, 4)
        assert grid.num_pixels == 12
        np.testing.assert_allclose(grid.beta, np.full((3, 4), 1 / 12))

    def test_row_major_indexing(self):
        """Test pixel index and coordinates are inverse row-major maps."""
        grid = SpatialGrid.uniform(3, 4)
        assert grid.pixel_index(2, 1) == 9
        assert grid.coordinates(9) == (2, 1)

    def test_beta_shape_mismatch(self):
        """Test that a beta of the wrong shape is rejected."""
        with pytest.raises(DimensionMismatchError):
            SpatialGrid(2, 2, np.ones((3, 3)))

    def test_beta_is_read_only(self):
        """Test that beta cannot be modified in place."""
        grid = SpatialGrid.uniform(2, 2)
        with pytest.raises(ValueError):
            grid.beta[0, 0] = 1.0


class TestValidateProblem:
    """Test cases for problem validation."""

    def setup_method(self):
        self.problem = make_random_problem(seed=3)

    def test_valid_problem_returned_unchanged(self):
        """Test that a valid problem is returned as is."""
        assert validate_problem(self.problem) is self.problem
        assert problem_violations(self.problem) == []

    def test_all_violations_are_collected(self):
        """Test that every violation is reported, not only the first."""
        W = np.array(self.problem.dictionary)
        W[0, 0] = -1.0
        W[:, 1] = 0.0
        Y = np.array(self.problem.observations)
        Y[2, 3] = np.nan
        labels = np.array(self.problem.labels)
        labels[labels == 1] = UNLABELED
        broken = Problem(
            observations=Y,
            dictionary=W,
            labels=labels,
            grid=self.problem.grid,
            num_classes=self.problem.num_classes,
            num_clusters=self.problem.num_clusters,
        )

        with pytest.raises(ProblemValidationError) as excinfo:
            validate_problem(broken)

        kinds = {type(v) for v in excinfo.value.violations}
        assert {
            NegativeDictionaryError,
            DegenerateDictionaryError,
            NonFiniteEntryError,
            EmptyClassError,
        } <= kinds
        empty = [v for v in excinfo.value.violations if isinstance(v, EmptyClassError)]
        assert empty[0].class_id == 2

    def test_validation_is_idempotent(self):
        """Test that validating twice gives the same problem and the same violations."""
        assert validate_problem(validate_problem(self.problem)) is self.problem
        broken = self.problem.with_grid(SpatialGrid.uniform(2, 2))
        first = [str(v) for v in problem_violations(broken)]
        second = [str(v) for v in problem_violations(broken)]
        assert first and first == second

    def test_grid_must_hold_every_pixel(self):
        """Test that a grid with the wrong pixel count is a violation."""
        broken = self.problem.with_grid(SpatialGrid.uniform(2, 2))
        violations = problem_violations(broken)
        assert any(isinstance(v, DimensionMismatchError) for v in violations)

    def test_single_class_rejected(self):
        """Test that C = 1 is a violation."""
        problem = make_random_problem(seed=1, C=1)
        assert any(
            "num_classes" in str(v) for v in problem_violations(problem)
        )

    def test_unnormalized_beta_rejected(self):
        """Test that edge weights must sum to one."""
        grid = self.problem.grid.with_beta(np.ones((5, 8)))
        assert problem_violations(self.problem.with_grid(grid))

    def test_arrays_are_read_only(self):
        """Test that problem arrays cannot be modified in place."""
        with pytest.raises(ValueError):
            self.problem.observations[0, 0] = 0.0


class TestBuildClassWeights:
    """Test cases for class-balancing weights."""

    def test_two_branch_formula(self):
        """Test 1/sqrt(|class|) on labeled and 1/sqrt(|U|) on unlabeled pixels."""
        labels = np.array([0, 0, 0, 0, 1, UNLABELED, UNLABELED])
        weights = build_class_weights(labels, 2)
        np.testing.assert_allclose(weights.d, [0.5, 0.5, 0.5, 0.5, 1.0, 1 / np.sqrt(2), 1 / np.sqrt(2)])
        np.testing.assert_allclose(weights.d_squared[:4], 0.25)

    def test_fully_labeled(self):
        """Test that no unlabeled pixel is fine."""
        weights = build_class_weights(np.array([0, 1, 1]), 2)
        np.testing.assert_allclose(weights.d_squared, [1.0, 0.5, 0.5])

    def test_empty_class(self):
        """Test that a class without labeled pixels raises EmptyClassError with its 1-based id."""
        with pytest.raises(EmptyClassError) as excinfo:
            build_class_weights(np.array([0, 0, UNLABELED]), 2)
        assert excinfo.value.class_id == 2


class TestScaleHyperparameters:
    """Test cases for weight scaling."""

    def test_scaling_formula(self):
        """Test lambda0 = l0~/(L |Y|inf^2) and lambda_q = (P/C) lq~."""
        Y = np.array([[1.0, -2.0, 0.5], [0.0, 1.0, 1.5]])
        raw = RawWeights(lambda0_tilde=8.0, lambda_q_tilde=0.3, lambda1=2.0)
        hyper = scale_hyperparameters(raw, Y, num_classes=2)
        assert hyper.lambda0 == pytest.approx(8.0 / (2 * 4.0))
        assert hyper.lambda_q == pytest.approx(1.5 * 0.3)
        assert hyper.lambda1 == 2.0
        assert hyper.lambda_c == raw.lambda_c_tilde

    def test_zero_image(self):
        """Test that an all-zero image raises ZeroImageError."""
        with pytest.raises(ZeroImageError):
            scale_hyperparameters(RawWeights(), np.zeros((3, 4)), num_classes=2)
