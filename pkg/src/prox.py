"""Proximal operators and projections used by the block updates."""

import numpy as np

from src.errors import NonFiniteEntryError


def project_nonneg(X: np.ndarray) -> np.ndarray:
    """Projection onto the nonnegative orthant."""
    return np.maximum(np.asarray(X, dtype=np.float64), 0.0)


def prox_nonneg_l1(X: np.ndarray, threshold: float) -> np.ndarray:
    """Prox of i_{>=0} + threshold * |.|_1, i.e. max(0, x - threshold)."""
    if threshold < 0:
        raise ValueError(f"threshold must be nonnegative, got {threshold}")
    return np.maximum(np.asarray(X, dtype=np.float64) - threshold, 0.0)


def project_simplex_columns(X: np.ndarray) -> np.ndarray:
    """
    Euclidean projection of every column of X onto {u >= 0, sum(u) = 1}.

    Sort-based exact threshold: with u sorted decreasingly, rho is the
    largest j such that u_j - (sum_{i<=j} u_i - 1) / j > 0 and the
    threshold is (sum_{i<=rho} u_i - 1) / rho.
    """
    X = np.asarray(X, dtype=np.float64)
    squeeze = X.ndim == 1
    if squeeze:
        X = X[:, None]
    if X.shape[0] < 1:
        raise ValueError("simplex dimension must be >= 1")
    bad = np.argwhere(~np.isfinite(X))
    if bad.size:
        row, col = bad[0]
        raise NonFiniteEntryError(int(row), int(col), "simplex input")

    k = X.shape[0]
    ordered = -np.sort(-X, axis=0)
    cumulative = np.cumsum(ordered, axis=0) - 1.0
    ranks = np.arange(1, k + 1, dtype=np.float64)[:, None]
    support = ordered - cumulative / ranks > 0
    rho = np.maximum(support.sum(axis=0), 1)
    theta = cumulative[rho - 1, np.arange(X.shape[1])] / rho
    projected = np.maximum(X - theta, 0.0)
    # Cancellation at large magnitudes leaves ~1e-8 error in the column sums.
    projected /= projected.sum(axis=0, keepdims=True)
    return projected[:, 0] if squeeze else projected


def group_soft_threshold_rows(X: np.ndarray, threshold: float) -> np.ndarray:
    """Row-wise group shrinkage: h_r <- h_r * max(0, 1 - threshold / |h_r|_2)."""
    X = np.asarray(X, dtype=np.float64)
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(norms > 0, np.maximum(0.0, 1.0 - threshold / norms), 0.0)
    return X * factor
