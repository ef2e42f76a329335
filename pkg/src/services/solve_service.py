"""Service layer for initialization, PALM solve and result export."""

import logging
from dataclasses import dataclass

import numpy as np

from src.config import AppConfig
from src.exporters import ResultExporter
from src.initializer import InitConfig, initialize
from src.objective import predict_classes
from src.palm_solver import SolverConfig, solve
from src.problem import Problem, build_class_weights
from src.run_config import RunConfig
from src.solve_report import SolveReport
from src.state import State

# Get the dedicated logger for tqdm output
tqdm_logger = logging.getLogger("tqdm_logger")


@dataclass(frozen=True)
class RunResult:
    problem: Problem  # with the dictionary actually used
    state: State
    report: SolveReport

    @property
    def classification(self) -> np.ndarray:
        """Predicted 1-based class id per pixel."""
        return predict_classes(self.state) + 1


class SolveService:
    """Initializes every block, runs PALM and writes the solution files."""

    def __init__(self, exporter: ResultExporter, config: AppConfig):
        self.exporter = exporter
        self.config = config

    def init_config(self, run_config: RunConfig) -> InitConfig:
        return InitConfig(
            J=run_config.J,
            alpha_group=run_config.alpha_group,
            kmeans_restarts=run_config.kmeans_restarts,
            seed=run_config.seed,
            use_self_dictionary=run_config.use_self_dictionary,
            threads=self.config.THREADS,
        )

    def solver_config(
        self, problem: Problem, run_config: RunConfig, show_progress: bool
    ) -> SolverConfig:
        return SolverConfig.from_hyperparameters(
            problem.hyper,
            monitor_every=run_config.monitor_every,
            backtracking_enabled=run_config.backtracking,
            show_progress=show_progress,
        )

    def solve(
        self, problem: Problem, run_config: RunConfig, show_progress: bool = False
    ) -> RunResult:
        W, initial = initialize(problem, self.init_config(run_config))
        problem = problem.with_dictionary(W)
        weights = build_class_weights(problem.labels, problem.num_classes)
        tqdm_logger.info(
            f"Initialized {problem.num_atoms} atoms, K={problem.num_clusters}, "
            f"{problem.unlabeled_indices.size} unlabeled pixel(s)"
        )
        state, report = solve(
            problem, initial, weights, self.solver_config(problem, run_config, show_progress)
        )
        return RunResult(problem=problem, state=state, report=report)

    def export(self, result: RunResult) -> None:
        self.exporter.file_manager.ensure_output_dir()
        matrices = dict(result.state.blocks())
        matrices["W"] = result.problem.dictionary
        matrices["classification"] = result.classification[None, :].astype(np.float64)
        self.exporter.export_matrices(matrices)
        self.exporter.export_trace(result.report)
