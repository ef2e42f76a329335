"""
Initial estimates for every block: self-dictionary candidate selection,
group-lasso pruning, nonnegative least squares and k-means.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed
from scipy.optimize import nnls
from scipy.spatial.distance import cdist

from src.config import AppConfig
from src.errors import (
    AllRowsPrunedError,
    ConfigError,
    EmptyClassError,
    TooFewPointsError,
    ZeroVectorError,
)
from src.problem import Problem
from src.prox import group_soft_threshold_rows
from src.state import State, check_feasible, one_hot
from src.utils import child_seeds, spectral_norm

logger = logging.getLogger(__name__)

Q_INIT_SCALE = 0.01


@dataclass(frozen=True)
class InitConfig:
    J: int = AppConfig.DEFAULT_J
    alpha_group: float | None = None  # None: fraction * max|Y~^T Y|
    group_lasso_iters: int = AppConfig.DEFAULT_GROUP_LASSO_ITERS
    group_lasso_tol: float = AppConfig.DEFAULT_GROUP_LASSO_TOL
    kmeans_restarts: int = AppConfig.DEFAULT_KMEANS_RESTARTS
    kmeans_iters: int = AppConfig.DEFAULT_KMEANS_ITERS
    row_prune_tol: float = AppConfig.DEFAULT_ROW_PRUNE_TOL
    seed: int = AppConfig.DEFAULT_SEED
    use_self_dictionary: bool = False
    accelerate: bool = True
    threads: int = AppConfig.DEFAULT_THREADS

    def __post_init__(self):
        if self.J < 1:
            raise ConfigError(f"J must be >= 1, got {self.J}")
        if self.alpha_group is not None and self.alpha_group < 0:
            raise ConfigError(f"alpha_group must be >= 0, got {self.alpha_group}")
        if self.kmeans_restarts < 1:
            raise ConfigError(f"kmeans_restarts must be >= 1, got {self.kmeans_restarts}")
        if self.kmeans_iters < 1:
            raise ConfigError(f"kmeans_iters must be >= 1, got {self.kmeans_iters}")
        if self.group_lasso_iters < 1:
            raise ConfigError(
                f"group_lasso_iters must be >= 1, got {self.group_lasso_iters}"
            )


@dataclass(frozen=True)
class KMeansResult:
    centroids: np.ndarray  # d x K
    assignments: np.ndarray  # n
    sse: float
    history: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class CandidateSet:
    """Candidate spectra in class-major, cluster-minor order."""

    spectra: np.ndarray  # L x n
    pixel_indices: np.ndarray  # n
    class_ids: np.ndarray  # n, 0-based
    members: tuple[np.ndarray, ...]  # pixel indices of each cluster
    centroids: np.ndarray  # L x n, centroid of each candidate's cluster

    @property
    def size(self) -> int:
        return self.spectra.shape[1]


# --- k-means -------------------------------------------------------------


def within_cluster_sse(
    points: np.ndarray, centroids: np.ndarray, assignments: np.ndarray
) -> float:
    """Sum of squared distances of every column of `points` to its centroid."""
    residual = points - centroids[:, assignments]
    return float(np.sum(residual**2))


def _assign(points: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    distances = cdist(points.T, centroids.T, metric="sqeuclidean")
    assignments = np.argmin(distances, axis=1)
    return assignments, distances[np.arange(points.shape[1]), assignments]


def _kmeans_plus_plus(points: np.ndarray, K: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[1]
    chosen = [int(rng.integers(n))]
    closest = cdist(points.T, points[:, chosen].T, metric="sqeuclidean")[:, 0]
    for _ in range(1, K):
        total = closest.sum()
        if total > 0:
            index = int(rng.choice(n, p=closest / total))
        else:
            # All remaining points coincide with a chosen centroid
            remaining = np.setdiff1d(np.arange(n), chosen)
            index = int(rng.choice(remaining))
        chosen.append(index)
        distance = cdist(points.T, points[:, [index]].T, metric="sqeuclidean")[:, 0]
        closest = np.minimum(closest, distance)
    return points[:, chosen].copy()


def _update_centroids(
    points: np.ndarray, assignments: np.ndarray, K: int
) -> np.ndarray:
    centroids = np.zeros((points.shape[0], K))
    counts = np.bincount(assignments, minlength=K)
    for k in np.flatnonzero(counts):
        centroids[:, k] = points[:, assignments == k].mean(axis=1)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        distances = np.sum((points - centroids[:, assignments]) ** 2, axis=0)
        farthest = np.argsort(-distances, kind="stable")
        for k, index in zip(empty, farthest):
            logger.debug(f"Re-seeding empty cluster {k} at point {index}")
            centroids[:, k] = points[:, index]
    return centroids


def lloyd(points: np.ndarray, initial_centroids: np.ndarray, max_iters: int) -> KMeansResult:
    """
    Lloyd iterations from the given centroids until assignments stop changing.

    The SSE history holds one value per assignment step and never increases.
    """
    points = np.asarray(points, dtype=np.float64)
    centroids = np.array(initial_centroids, dtype=np.float64)
    K = centroids.shape[1]
    assignments, distances = _assign(points, centroids)
    history = [float(distances.sum())]
    for _ in range(max_iters):
        centroids = _update_centroids(points, assignments, K)
        new_assignments, distances = _assign(points, centroids)
        history.append(float(distances.sum()))
        if np.array_equal(new_assignments, assignments):
            break
        assignments = new_assignments
    return KMeansResult(centroids, assignments, history[-1], history)


def _kmeans_restart(points: np.ndarray, K: int, seed: int, max_iters: int) -> KMeansResult:
    rng = np.random.default_rng(seed)
    return lloyd(points, _kmeans_plus_plus(points, K, rng), max_iters)


def kmeans_detailed(
    points: np.ndarray, K: int, config: InitConfig, seed: int | None = None
) -> KMeansResult:
    """Best of `config.kmeans_restarts` k-means++ seeded Lloyd runs (lowest SSE)."""
    points = np.asarray(points, dtype=np.float64)
    n = points.shape[1]
    if K < 1 or n < K:
        raise TooFewPointsError(f"k-means needs at least K={K} points, got {n}")
    seeds = child_seeds(config.seed if seed is None else seed, config.kmeans_restarts)
    if config.threads > 1 and len(seeds) > 1:
        results = Parallel(n_jobs=config.threads)(
            delayed(_kmeans_restart)(points, K, s, config.kmeans_iters) for s in seeds
        )
    else:
        results = [_kmeans_restart(points, K, s, config.kmeans_iters) for s in seeds]
    # min() keeps the first restart among equal SSEs
    return min(results, key=lambda result: result.sse)


def kmeans(
    points: np.ndarray, K: int, config: InitConfig, seed: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Cluster the columns of `points`; returns (d x K centroids, n assignments)."""
    result = kmeans_detailed(points, K, config, seed)
    return result.centroids, result.assignments


# --- candidate selection ---------------------------------------------------


def spectral_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Angle in radians between two spectra, in [0, pi]."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    norm_a, norm_b = np.linalg.norm(a), np.linalg.norm(b)
    if norm_a == 0 or norm_b == 0:
        raise ZeroVectorError("spectral angle is undefined for a zero vector")
    cosine = np.clip(np.dot(a, b) / (norm_a * norm_b), -1.0, 1.0)
    return float(np.arccos(cosine))


def spectral_angles(points: np.ndarray, references: np.ndarray) -> np.ndarray:
    """n x m matrix of angles between the columns of `points` and `references`."""
    norms_p = np.linalg.norm(points, axis=0)
    norms_r = np.linalg.norm(references, axis=0)
    if np.any(norms_p == 0) or np.any(norms_r == 0):
        raise ZeroVectorError("spectral angle is undefined for a zero vector")
    cosine = (points.T @ references) / np.outer(norms_p, norms_r)
    return np.arccos(np.clip(cosine, -1.0, 1.0))


def _medoid(spectra: np.ndarray) -> int:
    return int(np.argmin(cdist(spectra.T, spectra.T).sum(axis=1)))


def select_candidates(problem: Problem, config: InitConfig) -> CandidateSet:
    """
    Cluster each class's labeled spectra into (at most) J groups and keep,
    per group, the member whose smallest spectral angle to every other
    group's centroid is largest. A lone group falls back to its medoid.
    Ties go to the smallest pixel index.
    """
    Y = problem.observations
    labels = problem.labels
    seeds = child_seeds(config.seed, problem.num_classes)

    groups: list[tuple[int, np.ndarray, np.ndarray]] = []  # (class, members, centroid)
    for class_index in range(problem.num_classes):
        pixels = np.flatnonzero(labels == class_index)
        if pixels.size == 0:
            raise EmptyClassError(class_index + 1)
        spectra = Y[:, pixels]
        distinct = np.unique(spectra, axis=1).shape[1]
        J = min(config.J, distinct)
        if J < config.J:
            logger.warning(
                f"Class {class_index + 1} has only {distinct} distinct labeled spectra; "
                f"using J={J}"
            )
        centroids, assignments = kmeans(spectra, J, config, seed=seeds[class_index])
        for j in range(J):
            members = pixels[assignments == j]
            if members.size == 0:
                logger.debug(f"Dropping empty cluster {j} of class {class_index + 1}")
                continue
            groups.append((class_index, members, centroids[:, j]))

    all_centroids = np.column_stack([centroid for _, _, centroid in groups])
    selected = []
    for g, (_, members, _) in enumerate(groups):
        spectra = Y[:, members]
        others = np.delete(all_centroids, g, axis=1)
        if others.shape[1] == 0:
            selected.append(int(members[_medoid(spectra)]))
            continue
        score = spectral_angles(spectra, others).min(axis=1)
        selected.append(int(members[np.argmax(score)]))

    pixel_indices = np.array(selected, dtype=np.int64)
    logger.info(
        f"Selected {pixel_indices.size} candidate spectra from "
        f"{problem.num_classes} class(es)"
    )
    return CandidateSet(
        spectra=Y[:, pixel_indices].copy(),
        pixel_indices=pixel_indices,
        class_ids=np.array([c for c, _, _ in groups], dtype=np.int64),
        members=tuple(members for _, members, _ in groups),
        centroids=all_centroids,
    )


# --- group lasso -----------------------------------------------------------


def group_lasso_objective(
    Y: np.ndarray, candidates: np.ndarray, H: np.ndarray, alpha_group: float
) -> float:
    residual = Y - candidates @ H
    return 0.5 * float(np.sum(residual**2)) + alpha_group * float(
        np.sum(np.linalg.norm(H, axis=1))
    )


def default_alpha_group(Y: np.ndarray, candidates: np.ndarray) -> float:
    return AppConfig.DEFAULT_ALPHA_GROUP_FRACTION * float(np.max(np.abs(candidates.T @ Y)))


def solve_group_lasso(
    Y: np.ndarray,
    candidates: np.ndarray,
    alpha_group: float,
    iters: int,
    tol: float,
    accelerate: bool = True,
) -> np.ndarray:
    """
    Row-sparse regression of Y on the candidate spectra by (accelerated)
    proximal gradient, starting from zero.

    Args:
        Y: L x P observations.
        candidates: L x n candidate spectra.
        alpha_group: weight of the sum of row l2 norms.
        iters: maximum number of iterations.
        tol: stop once the relative objective change falls below this.
        accelerate: use Nesterov momentum (FISTA).

    Returns:
        n x P coefficient matrix.
    """
    if alpha_group < 0:
        raise ConfigError(f"alpha_group must be >= 0, got {alpha_group}")
    Y = np.asarray(Y, dtype=np.float64)
    candidates = np.asarray(candidates, dtype=np.float64)
    gram = candidates.T @ candidates
    correlation = candidates.T @ Y
    step = 1.0 / spectral_norm(gram)

    H = np.zeros((candidates.shape[1], Y.shape[1]))
    extrapolated = H
    t = 1.0
    previous = group_lasso_objective(Y, candidates, H, alpha_group)
    for iteration in range(1, iters + 1):
        gradient = gram @ extrapolated - correlation
        H_next = group_soft_threshold_rows(extrapolated - step * gradient, alpha_group * step)
        if accelerate:
            t_next = (1.0 + np.sqrt(1.0 + 4.0 * t**2)) / 2.0
            extrapolated = H_next + ((t - 1.0) / t_next) * (H_next - H)
            t = t_next
        else:
            extrapolated = H_next
        H = H_next
        current = group_lasso_objective(Y, candidates, H, alpha_group)
        if previous > 0 and abs(current - previous) / previous < tol:
            logger.debug(f"Group lasso converged after {iteration} iteration(s)")
            break
        previous = current
    return H


# --- full initialization ---------------------------------------------------


def nnls_abundances(Y: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Per-pixel nonnegative least squares min_{h >= 0} |y_p - W h|."""
    return np.column_stack([nnls(W, Y[:, p])[0] for p in range(Y.shape[1])])


def _self_dictionary(problem: Problem, config: InitConfig) -> tuple[np.ndarray, np.ndarray]:
    candidates = select_candidates(problem, config)
    Y = problem.observations
    alpha_group = (
        config.alpha_group
        if config.alpha_group is not None
        else default_alpha_group(Y, candidates.spectra)
    )
    H0 = solve_group_lasso(
        Y,
        candidates.spectra,
        alpha_group,
        config.group_lasso_iters,
        config.group_lasso_tol,
        config.accelerate,
    )
    keep = np.linalg.norm(H0, axis=1) > config.row_prune_tol
    if not keep.any():
        raise AllRowsPrunedError(
            f"Group lasso with alpha={alpha_group:.6g} removed every candidate"
        )
    logger.info(
        f"Self-dictionary: kept {int(keep.sum())} of {candidates.size} candidates "
        f"(alpha={alpha_group:.6g})"
    )
    return candidates.spectra[:, keep], np.maximum(H0[keep], 0.0)


def initialize(problem: Problem, config: InitConfig) -> tuple[np.ndarray, State]:
    """
    Build the dictionary and a feasible starting State.

    With `use_self_dictionary` the dictionary is made of pruned candidate
    pixels; otherwise the problem's own dictionary is kept and H starts at
    the NNLS solution. B and Z come from k-means on H, Q is small uniform
    noise and the unlabeled class attributions start uniform.
    """
    kmeans_seed, q_seed = child_seeds(config.seed, 2)
    if config.use_self_dictionary:
        W, H = _self_dictionary(problem, config)
    else:
        W = np.array(problem.dictionary)
        H = nnls_abundances(problem.observations, W)
        logger.info(f"Given dictionary: NNLS abundances for {problem.num_pixels} pixels")

    K = problem.num_clusters
    B, assignments = kmeans(H, K, config, seed=kmeans_seed)
    Z = np.zeros((K, problem.num_pixels))
    Z[assignments, np.arange(problem.num_pixels)] = 1.0

    rng = np.random.default_rng(q_seed)
    Q = rng.uniform(-Q_INIT_SCALE, Q_INIT_SCALE, size=(problem.num_classes, K))

    C = one_hot(problem.labels, problem.num_classes)
    C[:, problem.unlabeled_indices] = 1.0 / problem.num_classes

    state = State(H=H, B=np.maximum(B, 0.0), Z=Z, Q=Q, C=C)
    check_feasible(problem.with_dictionary(W), state)
    return W, state
