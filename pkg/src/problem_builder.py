"""Assembles a validated Problem from raw arrays and user-facing weights."""

import logging

import numpy as np

from src.errors import ProblemValidationError, ZeroImageError
from src.problem import (
    Hyperparameters,
    Problem,
    RawWeights,
    SpatialGrid,
    Variant,
    problem_violations,
    scale_hyperparameters,
    validate_problem,
)
from src.vtv import compute_edge_weights

logger = logging.getLogger(__name__)


def raw_violations(
    observations: np.ndarray,
    dictionary: np.ndarray,
    labels: np.ndarray,
    grid: SpatialGrid,
    num_classes: int,
    num_clusters: int,
) -> list:
    """
    Every violation of the raw arrays, found before any quantity is derived
    from them (default weights, uniform beta).
    """
    unscaled = Problem(
        observations=observations,
        dictionary=dictionary,
        labels=labels,
        grid=SpatialGrid.uniform(grid.rows, grid.cols),
        num_classes=num_classes,
        num_clusters=num_clusters,
        hyper=Hyperparameters(),
    )
    violations = problem_violations(unscaled)
    Y = unscaled.observations
    if Y.size and np.all(np.isfinite(Y)) and not np.any(Y):
        violations.append(ZeroImageError("observations are identically zero"))
    return violations


def assemble_problem(
    observations: np.ndarray,
    dictionary: np.ndarray,
    labels: np.ndarray,
    grid: SpatialGrid,
    num_classes: int,
    num_clusters: int,
    raw: RawWeights,
    variant: Variant = Variant.QUADRATIC,
    edge_weights: bool = True,
) -> Problem:
    """
    Check the raw arrays, then scale the weights to the image, derive edge
    weights from its panchromatic gradient (or keep the grid's own beta)
    and validate the result.
    """
    violations = raw_violations(
        observations, dictionary, labels, grid, num_classes, num_clusters
    )
    if violations:
        logger.error(f"Input validation failed with {len(violations)} violation(s)")
        raise ProblemValidationError(violations)

    hyper = scale_hyperparameters(raw, observations, num_classes)
    if edge_weights:
        grid = compute_edge_weights(observations, grid, hyper.sigma_beta)
    problem = Problem(
        observations=observations,
        dictionary=dictionary,
        labels=labels,
        grid=grid,
        num_classes=num_classes,
        num_clusters=num_clusters,
        variant=variant,
        hyper=hyper,
    )
    logger.info(
        f"Problem: L={problem.num_bands}, P={problem.num_pixels}, R={problem.num_atoms}, "
        f"C={num_classes}, K={num_clusters}, variant={variant.value}, "
        f"lambda0={hyper.lambda0:.4g}, lambda_q={hyper.lambda_q:.4g}"
    )
    return validate_problem(problem)
