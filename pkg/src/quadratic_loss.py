"""Weighted quadratic classification loss (lambda1 / 2) |C D - Q Z D|_F^2."""

import numpy as np

from src.problem import Hyperparameters
from src.protocols import ClassificationLoss
from src.state import State
from src.utils import spectral_norm


class QuadraticLoss(ClassificationLoss):
    """Least-squares regression of the attributions on the cluster codes."""

    name = "quadratic"

    def _weighted_residual(self, state: State, d2: np.ndarray) -> np.ndarray:
        # (Q Z - C) D^2
        return (state.Q @ state.Z - state.C) * d2

    def value(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        residual = state.C - state.Q @ state.Z
        return 0.5 * hyper.lambda1 * float(np.sum(residual**2 * d2))

    def grad_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        return hyper.lambda1 * (state.Q.T @ self._weighted_residual(state, d2))

    def grad_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        return hyper.lambda1 * (self._weighted_residual(state, d2) @ state.Z.T)

    def grad_c(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        return -hyper.lambda1 * self._weighted_residual(state, d2)

    def lipschitz_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        # max_p |l2 B^T B + l1 d_p^2 Q^T Q| is attained at the largest d_p^2
        d2_max = float(np.max(d2)) if d2.size else 0.0
        curvature = (
            hyper.lambda2 * (state.B.T @ state.B)
            + hyper.lambda1 * d2_max * (state.Q.T @ state.Q)
        )
        return spectral_norm(curvature)

    def lipschitz_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        return hyper.lambda1 * spectral_norm((state.Z * d2) @ state.Z.T)

    def lipschitz_c(self, d2_unlabeled: np.ndarray, hyper: Hyperparameters) -> float:
        if d2_unlabeled.size == 0:
            return 0.0
        return hyper.lambda1 * float(np.max(d2_unlabeled))
