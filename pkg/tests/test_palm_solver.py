"""Unit tests for the PALM solver."""

import time
from unittest.mock import patch

import numpy as np
import pytest

from src.errors import ConfigError, InfeasibleStateError
from src.objective import Block, lipschitz_constant, objective_value
from src.palm_solver import LipschitzCache, SolverConfig, palm_step, solve
from src.problem import Hyperparameters, Problem, build_class_weights
from src.solve_report import TRACE_COLUMNS, StopReason
from src.state import check_feasible
from tests.helpers import make_random_problem, make_random_state

MONOTONE_SLACK = 1e-10


class TestSolverConfig:
    """Test cases for solver configuration."""

    def test_defaults(self):
        """Test the documented defaults."""
        config = SolverConfig()
        assert config.alpha == 2.0
        assert config.stop_tol == 1e-4
        assert config.max_iters == 5000
        assert config.backtracking_enabled

    @pytest.mark.parametrize(
        "overrides", [{"alpha": 1.0}, {"stop_tol": 0.0}, {"max_iters": -1}, {"monitor_every": 0}]
    )
    def test_invalid(self, overrides):
        """Test that invalid settings raise ConfigError."""
        with pytest.raises(ConfigError):
            SolverConfig(**overrides)

    def test_from_hyperparameters(self):
        """Test that solver settings follow the hyperparameters with overrides."""
        hyper = Hyperparameters(alpha=3.0, stop_tol=1e-3, max_iters=12)
        config = SolverConfig.from_hyperparameters(hyper, monitor_every=5)
        assert (config.alpha, config.stop_tol, config.max_iters, config.monitor_every) == (3.0, 1e-3, 12, 5)


class TestPalmStep:
    """Test cases for a single sweep."""

    def test_step_keeps_feasibility_and_labels(self, random_instance):
        """Test that a sweep returns a feasible state with untouched labeled columns."""
        problem, state, weights = random_instance
        updated = palm_step(problem, state, weights, SolverConfig())
        check_feasible(problem, updated)
        labeled = problem.labeled_indices
        np.testing.assert_array_equal(updated.C[:, labeled], state.C[:, labeled])

    def test_step_does_not_increase_objective(self, random_instance):
        """Test monotone decrease over one sweep."""
        problem, state, weights = random_instance
        before = objective_value(problem, state, weights).total
        after = objective_value(problem, palm_step(problem, state, weights, SolverConfig()), weights).total
        assert after <= before + MONOTONE_SLACK


class TestSolve:
    """Test cases for the full iteration."""

    def test_monotone_and_converges(self, variant):
        """Test nonincreasing objective and the relative-change stopping rule."""
        for seed in range(10):
            problem = make_random_problem(seed=seed, variant=variant)
            initial = make_random_state(problem, seed=seed + 1)
            weights = build_class_weights(problem.labels, problem.num_classes)
            state, report = solve(problem, initial, weights, SolverConfig(max_iters=5000))

            trace = report.objective_trace
            assert all(b <= a + MONOTONE_SLACK for a, b in zip(trace, trace[1:]))
            assert report.stop_reason is StopReason.CONVERGED
            assert report.iterations < 5000
            assert report.backtracks == 0
            check_feasible(problem, state)

    def test_zero_iterations(self, random_instance):
        """Test that max_iters = 0 returns the initial state and one record."""
        problem, state, weights = random_instance
        final, report = solve(problem, state, weights, SolverConfig(max_iters=0))
        assert final is state
        assert report.stop_reason is StopReason.MAX_ITERS
        assert [r.iteration for r in report.records] == [0]

    def test_monitor_interval(self, random_instance):
        """Test that records are kept every monitor_every iterations and at the end."""
        problem, state, weights = random_instance
        config = SolverConfig(max_iters=7, monitor_every=3, stop_tol=1e-300)
        final, report = solve(problem, state, weights, config)
        assert [r.iteration for r in report.records] == [0, 3, 6, 7]
        assert report.final_objective.total == objective_value(problem, final, weights).total
        assert set(report.records[-1].lipschitz) >= {"H", "B", "Z", "Q"}

    def test_infeasible_initial_state(self, random_instance):
        """Test that an infeasible start is rejected."""
        problem, state, weights = random_instance
        with pytest.raises(InfeasibleStateError):
            solve(problem, state.with_block("H", -np.array(state.H)), weights, SolverConfig())

    def test_non_finite_iterate_stops(self, random_instance):
        """Test that NaN in a block update returns the last finite state, flagged."""
        problem, state, weights = random_instance

        def poisoned(problem, s):
            return np.full_like(np.asarray(s.H), np.nan)

        with patch("src.palm_solver.grad_H", side_effect=poisoned):
            final, report = solve(problem, state, weights, SolverConfig(max_iters=10))

        assert report.stop_reason is StopReason.NON_FINITE
        assert report.flagged
        assert final is state

    def test_backtracking_rescues_underestimated_constant(self, random_instance):
        """Test that an underestimated Lipschitz constant triggers backtracking, not ascent."""
        problem, state, weights = random_instance

        def too_small(*args):
            return lipschitz_constant(*args) * 1e-3

        with patch("src.palm_solver.lipschitz_constant", side_effect=too_small):
            _, report = solve(problem, state, weights, SolverConfig(max_iters=5))

        assert report.backtracks > 0
        trace = report.objective_trace
        assert all(b <= a + 5 * MONOTONE_SLACK for a, b in zip(trace, trace[1:]))

    def test_trace_rows(self, random_instance):
        """Test that the trace starts with the documented header."""
        problem, state, weights = random_instance
        _, report = solve(problem, state, weights, SolverConfig(max_iters=3, stop_tol=1e-300))
        rows = report.to_csv_rows()
        assert tuple(rows[0]) == TRACE_COLUMNS
        assert rows[1][0] == "0"
        assert rows[1][-1] == "nan"
        assert len(rows) == 5


class TestLipschitzCache:
    """Test cases for reuse of block Lipschitz constants."""

    def test_reused_until_dependency_changes(self, random_instance):
        """Test that L_B is reused while Z is unchanged and recomputed after."""
        problem, state, weights = random_instance
        cache = LipschitzCache(problem, weights)
        first = cache.get(state, Block.B)
        assert cache.get(state.with_block("H", np.array(state.H) * 2.0), Block.B) == first
        assert cache.computed == 1

        Z = np.zeros_like(state.Z)
        Z[0] = 1.0
        changed = cache.get(state.with_block("Z", Z), Block.B)
        assert cache.computed == 2
        assert changed == pytest.approx(
            lipschitz_constant(problem, state.with_block("Z", Z), Block.B, weights)
        )

    def test_constant_blocks_computed_once_per_solve(self, random_instance):
        """Test that L_H and L_CU are evaluated once over a whole solve."""
        problem, state, weights = random_instance
        with patch("src.palm_solver.lipschitz_constant", wraps=lipschitz_constant) as spy:
            solve(problem, state, weights, SolverConfig(max_iters=6, stop_tol=1e-300))
        blocks = [c.args[2] for c in spy.call_args_list]
        assert blocks.count(Block.H) == 1
        assert blocks.count(Block.CU) == 1
        assert blocks.count(Block.B) <= 6


class TestUnmixingOracle:
    """Test cases for the unmixing-only problem."""

    def test_exact_abundances_recovered(self):
        """Test that a noiseless problem with the true dictionary recovers H."""
        base = make_random_problem(seed=21)
        rng = np.random.default_rng(21)
        # atoms on disjoint band pairs keep W^T W well conditioned
        W = np.zeros((base.num_bands, base.num_atoms))
        for r in range(base.num_atoms):
            W[2 * r : 2 * r + 2, r] = rng.uniform(0.5, 1.0, size=2)
        H_true = rng.dirichlet(np.ones(base.num_atoms), size=base.num_pixels).T
        hyper = Hyperparameters(
            lambda0=1.0, lambda1=0.0, lambda2=0.0, lambda_h=0.0, lambda_q=0.0, lambda_c=0.0
        )
        problem = Problem(
            observations=W @ H_true,
            dictionary=W,
            labels=base.labels,
            grid=base.grid,
            num_classes=base.num_classes,
            num_clusters=base.num_clusters,
            hyper=hyper,
        )
        initial = make_random_state(problem, seed=22)
        weights = build_class_weights(problem.labels, problem.num_classes)
        state, _ = solve(problem, initial, weights, SolverConfig(max_iters=400, stop_tol=1e-300))
        assert np.sqrt(np.mean((state.H - H_true) ** 2)) < 1e-3


@pytest.mark.slow
class TestSweepCost:
    """Per-sweep wall time against the number of pixels."""

    @staticmethod
    def _seconds_per_sweep(cols, sweeps=3, repeats=3):
        problem = make_random_problem(seed=2, L=32, R=10, K=6, C=4, rows=40, cols=cols)
        state = make_random_state(problem, seed=3)
        weights = build_class_weights(problem.labels, problem.num_classes)
        config = SolverConfig(backtracking_enabled=False)
        best = float("inf")
        for _ in range(repeats):
            current = state
            start = time.perf_counter()
            for _ in range(sweeps):
                current = palm_step(problem, current, weights, config)
            best = min(best, (time.perf_counter() - start) / sweeps)
        return best

    def test_doubling_pixels_at_most_doubles_sweep_time(self):
        """Test that doubling P at fixed K keeps the sweep time within 2 x 1.5."""
        self._seconds_per_sweep(20, sweeps=1, repeats=1)
        small = self._seconds_per_sweep(40)
        large = self._seconds_per_sweep(80)
        assert large <= 2.0 * 1.5 * small
