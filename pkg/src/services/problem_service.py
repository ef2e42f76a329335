"""Service layer that turns input files into a Problem."""

import logging

import numpy as np

from src.config import AppConfig
from src.errors import DataError, DimensionMismatchError
from src.file_manager import FileManager
from src.matrix_io import read_matrix
from src.problem import UNLABELED, Problem, SpatialGrid
from src.problem_builder import assemble_problem
from src.run_config import RunConfig


def _row_vector(matrix: np.ndarray, length: int, name: str) -> np.ndarray:
    if matrix.size != length or min(matrix.shape) != 1:
        raise DimensionMismatchError(
            f"{name} has shape {matrix.shape}, expected a vector of {length} entries"
        )
    return matrix.ravel()


def _integral(values: np.ndarray, name: str) -> np.ndarray:
    if not np.all(np.isfinite(values)) or not np.array_equal(values, np.round(values)):
        raise DataError(f"{name} must hold integer values")
    return values.astype(np.int64)


class ProblemService:
    """Reads observations, dictionary, labels and grid from a data directory."""

    def __init__(self, file_manager: FileManager, config: AppConfig):
        self.file_manager = file_manager
        self.config = config

    def require_inputs(self, need_dictionary: bool = True) -> None:
        missing = self.file_manager.missing_run_inputs(need_dictionary)
        if missing:
            raise FileNotFoundError(f"Missing input file(s): {', '.join(missing)}")

    def read_labels(self, num_pixels: int) -> tuple[np.ndarray, int]:
        """0-based labels (UNLABELED off the training mask) and the class count."""
        fm = self.file_manager
        class_map = _integral(
            _row_vector(read_matrix(fm.input_path("classmap")), num_pixels, "classmap"),
            "classmap",
        )
        mask = _row_vector(read_matrix(fm.input_path("labelmask")), num_pixels, "labelmask")
        if np.any(class_map < 1):
            raise DataError("classmap ids must be >= 1")
        labels = np.where(mask > 0, class_map - 1, UNLABELED)
        return labels, int(class_map.max())

    def read_grid(self, num_pixels: int) -> SpatialGrid:
        shape = _integral(
            _row_vector(read_matrix(self.file_manager.input_path("grid")), 2, "grid"), "grid"
        )
        rows, cols = int(shape[0]), int(shape[1])
        if rows * cols != num_pixels:
            raise DimensionMismatchError(f"grid {rows}x{cols} does not hold {num_pixels} pixels")
        return SpatialGrid.uniform(rows, cols)

    def load_problem(self, run_config: RunConfig) -> Problem:
        """
        Build and validate the Problem described by the data directory.

        With the self-dictionary the W file is optional: when absent a single
        all-ones placeholder atom stands in until initialization replaces it.
        """
        fm = self.file_manager
        self.require_inputs(need_dictionary=not run_config.use_self_dictionary)
        Y = read_matrix(fm.input_path("Y"))
        if fm.has_input("W"):
            W = read_matrix(fm.input_path("W"))
        else:
            logging.info("No dictionary file; using a placeholder for the self-dictionary")
            W = np.ones((Y.shape[0], 1))
        labels, num_classes = self.read_labels(Y.shape[1])
        grid = self.read_grid(Y.shape[1])
        return assemble_problem(
            observations=Y,
            dictionary=W,
            labels=labels,
            grid=grid,
            num_classes=num_classes,
            num_clusters=run_config.K,
            raw=run_config.raw_weights(),
            variant=run_config.variant_enum,
            edge_weights=run_config.edge_weights,
        )
