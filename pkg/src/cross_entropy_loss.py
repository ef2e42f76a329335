"""Weighted cross-entropy classification loss on sigmoid outputs, with weight decay on Q."""

import numpy as np
from scipy.special import expit, log_expit

from src.problem import Hyperparameters
from src.protocols import ClassificationLoss
from src.state import State
from src.utils import spectral_norm


class CrossEntropyLoss(ClassificationLoss):
    """
    One-layer network with sigmoid activations:

        -(lambda1 / 2) sum_p d_p^2 sum_i c_{i,p} log sigmoid(q_i z_p)

    plus (lambda_q / 2) |Q|_F^2.
    """

    name = "cross_entropy"

    def _logit_sensitivity(self, state: State, d2: np.ndarray) -> np.ndarray:
        # E_{i,p} = -d_p^2 c_{i,p} sigmoid(-q_i z_p)
        logits = state.Q @ state.Z
        return -d2 * state.C * expit(-logits)

    def value(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        logits = state.Q @ state.Z
        return -0.5 * hyper.lambda1 * float(np.sum(d2 * state.C * log_expit(logits)))

    def weight_decay(self, state: State, hyper: Hyperparameters) -> float:
        return 0.5 * hyper.lambda_q * float(np.sum(state.Q**2))

    def grad_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        return 0.5 * hyper.lambda1 * (state.Q.T @ self._logit_sensitivity(state, d2))

    def grad_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        sensitivity = self._logit_sensitivity(state, d2)
        return 0.5 * hyper.lambda1 * (sensitivity @ state.Z.T) + hyper.lambda_q * state.Q

    def grad_c(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        return -0.5 * hyper.lambda1 * d2 * log_expit(state.Q @ state.Z)

    def lipschitz_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        row_norms = np.sum(state.Q**2, axis=1)
        classification = hyper.lambda1 * float(np.sum(d2 * (row_norms @ state.C)))
        return classification + hyper.lambda2 * spectral_norm(state.B.T @ state.B)

    def lipschitz_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        return hyper.lambda1 * float(np.sum(d2)) + hyper.lambda_q

    def lipschitz_c(self, d2_unlabeled: np.ndarray, hyper: Hyperparameters) -> float:
        # the cost is linear in C
        return 0.0
