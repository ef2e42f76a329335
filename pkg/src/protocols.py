"""Abstract interface for the classification term of the cofactorization objective."""

from abc import ABC, abstractmethod

import numpy as np

from src.problem import Hyperparameters
from src.state import State


class ClassificationLoss(ABC):
    """
    Classification cost linking attributions C to the clustered codes Z through Q.

    `d2` is the squared class-balancing weight of every pixel. Gradients with
    respect to C cover all P columns; callers keep only the unlabeled ones.
    """

    name: str = "abstract"

    @abstractmethod
    def value(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        """Weighted classification cost."""
        pass

    def weight_decay(self, state: State, hyper: Hyperparameters) -> float:
        """Penalty on Q carried by this loss (none by default)."""
        return 0.0

    @abstractmethod
    def grad_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        """Gradient of the classification cost with respect to Z."""
        pass

    @abstractmethod
    def grad_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        """Gradient of the classification cost and weight decay with respect to Q."""
        pass

    @abstractmethod
    def grad_c(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> np.ndarray:
        """Gradient of the classification cost with respect to C."""
        pass

    @abstractmethod
    def lipschitz_z(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        """Lipschitz constant of the full Z-gradient, coupling term included."""
        pass

    @abstractmethod
    def lipschitz_q(self, state: State, d2: np.ndarray, hyper: Hyperparameters) -> float:
        """Lipschitz constant of the Q-gradient."""
        pass

    @abstractmethod
    def lipschitz_c(self, d2_unlabeled: np.ndarray, hyper: Hyperparameters) -> float:
        """Lipschitz constant of the classification part of the C_U-gradient."""
        pass
