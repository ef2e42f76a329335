"""Builders for small seeded random problems and feasible states."""

import numpy as np

from src.problem import (
    UNLABELED,
    Hyperparameters,
    Problem,
    SpatialGrid,
    Variant,
)
from src.state import State, one_hot

DEFAULT_HYPER = Hyperparameters(
    lambda0=1.0,
    lambda1=1.0,
    lambda2=1.0,
    lambda_h=0.1,
    lambda_q=0.5,
    lambda_c=0.01,
    epsilon_tv=0.1,
)


def make_labels(rng: np.random.Generator, num_pixels: int, num_classes: int, per_class: int = 2):
    """Labels with `per_class` labeled pixels per class at random positions."""
    labels = np.full(num_pixels, UNLABELED, dtype=np.int64)
    positions = rng.choice(num_pixels, size=per_class * num_classes, replace=False)
    labels[positions] = np.repeat(np.arange(num_classes), per_class)
    return labels


def make_random_problem(
    seed: int = 0,
    variant: Variant = Variant.QUADRATIC,
    L: int = 12,
    R: int = 5,
    K: int = 4,
    C: int = 3,
    rows: int = 5,
    cols: int = 8,
    hyper: Hyperparameters = DEFAULT_HYPER,
    random_beta: bool = True,
) -> Problem:
    rng = np.random.default_rng(seed)
    P = rows * cols
    W = rng.uniform(0.1, 1.0, size=(L, R))
    H = rng.dirichlet(np.ones(R), size=P).T
    Y = W @ H + 0.01 * rng.standard_normal((L, P))
    grid = SpatialGrid.uniform(rows, cols)
    if random_beta:
        beta = rng.uniform(0.5, 1.5, size=(rows, cols))
        grid = grid.with_beta(beta / beta.sum())
    return Problem(
        observations=Y,
        dictionary=W,
        labels=make_labels(rng, P, C),
        grid=grid,
        num_classes=C,
        num_clusters=K,
        variant=variant,
        hyper=hyper,
    )


def random_simplex_columns(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    columns = rng.dirichlet(np.ones(rows), size=cols).T
    return columns / columns.sum(axis=0, keepdims=True)


def make_random_state(problem: Problem, seed: int = 1) -> State:
    """A feasible state with strictly positive H and B."""
    rng = np.random.default_rng(seed)
    R, P = problem.num_atoms, problem.num_pixels
    K, C = problem.num_clusters, problem.num_classes
    attributions = one_hot(problem.labels, C)
    unlabeled = problem.unlabeled_indices
    attributions[:, unlabeled] = random_simplex_columns(rng, C, unlabeled.size)
    return State(
        H=rng.uniform(0.05, 1.0, size=(R, P)),
        B=rng.uniform(0.05, 1.0, size=(R, K)),
        Z=random_simplex_columns(rng, K, P),
        Q=rng.normal(0.0, 1.0, size=(C, K)),
        C=attributions,
    )
