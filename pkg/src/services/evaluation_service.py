"""Service layer for scoring a run against the scene's ground truth."""

import logging
import math

import numpy as np

from src.config import AppConfig
from src.errors import EmptyMaskError
from src.file_manager import FileManager
from src.matrix_io import read_matrix
from src.metrics import (
    abundance_rmse,
    classification_scores,
    pad_abundances,
    reconstruction_error,
)

EVAL_KEYS = ("kappa", "f1_mean", "overall_accuracy", "re", "rmse")


class EvaluationService:
    """Computes kappa, F1, overall accuracy, RE and RMSE from files."""

    def __init__(self, file_manager: FileManager, config: AppConfig):
        self.file_manager = file_manager
        self.config = config

    def require_inputs(self) -> None:
        missing = self.file_manager.missing_eval_inputs()
        if missing:
            raise FileNotFoundError(f"Missing file(s): {', '.join(missing)}")

    def _abundance_rmse(self, W_used: np.ndarray, H: np.ndarray) -> float:
        """RMSE against H_true, or NaN when the run's atoms are not the scene's."""
        fm = self.file_manager
        if not (fm.has_input("H_true") and fm.has_input("W")):
            logging.info("No ground-truth abundances; rmse reported as nan")
            return math.nan
        W_given = read_matrix(fm.input_path("W"))
        H_true = read_matrix(fm.input_path("H_true"))
        if not np.array_equal(W_given, W_used) or H_true.shape[0] > H.shape[0]:
            logging.warning("Run dictionary differs from the scene dictionary; rmse is nan")
            return math.nan
        return abundance_rmse(pad_abundances(H_true, H.shape[0]), H)

    def evaluate(self) -> dict[str, float]:
        """Scores over the pixels outside the training mask, keys in EVAL_KEYS order."""
        self.require_inputs()
        fm = self.file_manager
        Y = read_matrix(fm.input_path("Y"))
        class_map = read_matrix(fm.input_path("classmap")).ravel().astype(np.int64)
        train_mask = read_matrix(fm.input_path("labelmask")).ravel() > 0
        H = read_matrix(fm.output_path("H"))
        W_used = read_matrix(fm.output_path("W"))
        predicted = read_matrix(fm.output_path("classification")).ravel().astype(np.int64)

        test_mask = ~train_mask
        if not test_mask.any():
            raise EmptyMaskError("every pixel is a training pixel; nothing to evaluate")
        scores = classification_scores(
            predicted[test_mask] - 1, class_map[test_mask] - 1, int(class_map.max())
        )
        results = {
            "kappa": scores.kappa,
            "f1_mean": scores.f1_mean,
            "overall_accuracy": scores.overall_accuracy,
            "re": reconstruction_error(Y, W_used, H),
            "rmse": self._abundance_rmse(W_used, H),
        }
        logging.info(
            f"Evaluated {int(test_mask.sum())} test pixel(s): kappa {scores.kappa:.4f}, "
            f"f1_mean {scores.f1_mean:.4f}"
        )
        return {key: float(results[key]) for key in EVAL_KEYS}
