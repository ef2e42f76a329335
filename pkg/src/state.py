"""Optimization state (H, B, Z, Q, C) and its feasibility check."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from src.errors import InfeasibleStateError
from src.problem import UNLABELED, Problem, frozen_array

SIMPLEX_TOL = 1e-12
BLOCK_NAMES = ("H", "B", "Z", "Q", "C")


@dataclass(frozen=True)
class State:
    H: np.ndarray  # R x P abundances
    B: np.ndarray  # R x K centroids
    Z: np.ndarray  # K x P cluster attributions
    Q: np.ndarray  # C x K classifier
    C: np.ndarray  # C x P class attributions

    def __post_init__(self):
        for name in BLOCK_NAMES:
            object.__setattr__(self, name, frozen_array(getattr(self, name)))

    def with_block(self, name: str, value: np.ndarray) -> "State":
        return replace(self, **{name: value})

    def blocks(self) -> dict[str, np.ndarray]:
        return {name: getattr(self, name) for name in BLOCK_NAMES}

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(block)) for block in self.blocks().values())


def one_hot(labels: np.ndarray, num_classes: int) -> np.ndarray:
    """C x P matrix with one-hot labeled columns and zero unlabeled columns."""
    labels = np.asarray(labels, dtype=np.int64)
    encoded = np.zeros((num_classes, labels.shape[0]))
    labeled = np.flatnonzero(labels != UNLABELED)
    encoded[labels[labeled], labeled] = 1.0
    return encoded


def _simplex_violation(matrix: np.ndarray, name: str) -> list[str]:
    messages = []
    if matrix.size == 0:
        return messages
    if np.any(matrix < 0):
        messages.append(f"{name} has negative entries")
    sums = matrix.sum(axis=0)
    worst = float(np.max(np.abs(sums - 1.0))) if sums.size else 0.0
    if worst > SIMPLEX_TOL:
        messages.append(f"{name} columns deviate from the simplex by {worst:.3e}")
    return messages


def state_violations(problem: Problem, state: State) -> list[str]:
    """Pure feasibility check of `state` against `problem`; empty list means feasible."""
    R, P = problem.num_atoms, problem.num_pixels
    K, num_classes = problem.num_clusters, problem.num_classes
    expected = {
        "H": (R, P),
        "B": (R, K),
        "Z": (K, P),
        "Q": (num_classes, K),
        "C": (num_classes, P),
    }
    messages = [
        f"{name} has shape {getattr(state, name).shape}, expected {shape}"
        for name, shape in expected.items()
        if getattr(state, name).shape != shape
    ]
    if messages:
        return messages
    if not state.is_finite():
        messages.append("state has non-finite entries")
    if np.any(state.H < 0):
        messages.append("H has negative entries")
    if np.any(state.B < 0):
        messages.append("B has negative entries")
    messages.extend(_simplex_violation(state.Z, "Z"))
    messages.extend(_simplex_violation(state.C[:, problem.unlabeled_indices], "C_U"))
    labeled = problem.labeled_indices
    truth = one_hot(problem.labels, num_classes)[:, labeled]
    if not np.array_equal(state.C[:, labeled], truth):
        messages.append("labeled columns of C differ from the one-hot ground truth")
    return messages


def check_feasible(problem: Problem, state: State) -> State:
    messages = state_violations(problem, state)
    if messages:
        raise InfeasibleStateError("; ".join(messages))
    return state
