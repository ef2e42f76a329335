"""Smoothed weighted vectorial total variation and its data-driven edge weights."""

import numpy as np

from src.errors import DimensionMismatchError
from src.problem import SpatialGrid


def _as_field(X: np.ndarray, grid: SpatialGrid) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != grid.num_pixels:
        raise DimensionMismatchError(
            f"field has shape {X.shape}, grid holds {grid.num_pixels} pixels"
        )
    return X.reshape(X.shape[0], grid.rows, grid.cols)


def _forward_differences(field: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Forward differences along rows and columns, zero past the last row/column."""
    d_row = np.zeros_like(field)
    d_col = np.zeros_like(field)
    d_row[:, :-1, :] = field[:, 1:, :] - field[:, :-1, :]
    d_col[:, :, :-1] = field[:, :, 1:] - field[:, :, :-1]
    return d_row, d_col


def _pixel_norms(d_row: np.ndarray, d_col: np.ndarray, epsilon: float) -> np.ndarray:
    return np.sqrt(np.sum(d_row**2 + d_col**2, axis=0) + epsilon)


def vtv_value(C: np.ndarray, grid: SpatialGrid, epsilon: float) -> float:
    """sum_{m,n} beta_{m,n} sqrt(|D_row c|^2 + |D_col c|^2 + epsilon)."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    d_row, d_col = _forward_differences(_as_field(C, grid))
    return float(np.sum(grid.beta * _pixel_norms(d_row, d_col, epsilon)))


def vtv_grad(C: np.ndarray, grid: SpatialGrid, epsilon: float) -> np.ndarray:
    """Exact gradient of vtv_value with respect to every column of C."""
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    field = _as_field(C, grid)
    d_row, d_col = _forward_differences(field)
    scale = grid.beta / _pixel_norms(d_row, d_col, epsilon)
    g_row = scale * d_row
    g_col = scale * d_col

    grad = -(g_row + g_col)
    grad[:, 1:, :] += g_row[:, :-1, :]
    grad[:, :, 1:] += g_col[:, :, :-1]
    return grad.reshape(field.shape[0], grid.num_pixels)


def vtv_lipschitz(grid: SpatialGrid, epsilon: float) -> float:
    """Lipschitz constant of vtv_grad: max(beta) * max(sqrt(8)/eps, 8/sqrt(eps))."""
    beta_max = float(np.max(grid.beta))
    return beta_max * max(np.sqrt(8.0) / epsilon, 8.0 / np.sqrt(epsilon))


def panchromatic(Y: np.ndarray) -> np.ndarray:
    """Band-averaged single-channel image, one value per pixel."""
    return np.asarray(Y, dtype=np.float64).mean(axis=0)


def compute_edge_weights(Y: np.ndarray, grid: SpatialGrid, sigma: float) -> SpatialGrid:
    """Edge-aware weights beta ~ 1 / (|grad y_PAN| + sigma), normalized to sum 1."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    pan = _as_field(panchromatic(Y)[None, :], grid)
    d_row, d_col = _forward_differences(pan)
    gradient_norm = np.sqrt(d_row[0] ** 2 + d_col[0] ** 2)
    beta = 1.0 / (gradient_norm + sigma)
    return grid.with_beta(beta / beta.sum())
