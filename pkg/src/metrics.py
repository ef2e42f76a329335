"""Figures of merit: reconstruction error, abundance RMSE, kappa and F1."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.metrics import confusion_matrix, f1_score

from src.errors import DimensionMismatchError, EmptyMaskError


@dataclass(frozen=True)
class ClassificationScores:
    kappa: float
    f1_mean: float
    f1_per_class: np.ndarray
    confusion: np.ndarray  # confusion[i, j] = count(truth = i, predicted = j)
    overall_accuracy: float


def reconstruction_error(Y: np.ndarray, W: np.ndarray, H: np.ndarray) -> float:
    """sqrt(|Y - W H|_F^2 / (P L))."""
    Y, W, H = (np.asarray(m, dtype=np.float64) for m in (Y, W, H))
    if W.shape[0] != Y.shape[0] or W.shape[1] != H.shape[0] or H.shape[1] != Y.shape[1]:
        raise DimensionMismatchError(
            f"cannot reconstruct {Y.shape} from W {W.shape} and H {H.shape}"
        )
    return float(np.sqrt(np.mean((Y - W @ H) ** 2)))


def abundance_rmse(H_true: np.ndarray, H_hat: np.ndarray) -> float:
    """sqrt(|H_true - H_hat|_F^2 / (P R))."""
    H_true = np.asarray(H_true, dtype=np.float64)
    H_hat = np.asarray(H_hat, dtype=np.float64)
    if H_true.shape != H_hat.shape:
        raise DimensionMismatchError(
            f"abundance shapes differ: {H_true.shape} vs {H_hat.shape}"
        )
    return float(np.sqrt(np.mean((H_true - H_hat) ** 2)))


def pad_abundances(H_true: np.ndarray, num_atoms: int) -> np.ndarray:
    """Append zero rows so ground truth lines up with a dictionary holding confounders."""
    H_true = np.asarray(H_true, dtype=np.float64)
    if H_true.shape[0] > num_atoms:
        raise DimensionMismatchError(
            f"ground truth has {H_true.shape[0]} rows, dictionary only {num_atoms}"
        )
    padding = np.zeros((num_atoms - H_true.shape[0], H_true.shape[1]))
    return np.vstack([H_true, padding])


def measured_snr_db(clean: np.ndarray, noisy: np.ndarray) -> float:
    """10 log10(|clean|^2 / |noisy - clean|^2); inf when there is no noise."""
    clean = np.asarray(clean, dtype=np.float64)
    noise = np.asarray(noisy, dtype=np.float64) - clean
    noise_power = float(np.sum(noise**2))
    if noise_power == 0:
        return float("inf")
    return float(10.0 * np.log10(np.sum(clean**2) / noise_power))


def kappa_from_confusion(confusion: np.ndarray) -> float:
    """Cohen's kappa (p_o - p_e) / (1 - p_e); 1 when p_e = 1 and the agreement is perfect."""
    confusion = np.asarray(confusion, dtype=np.float64)
    total = confusion.sum()
    p_o = np.trace(confusion) / total
    p_e = float(np.sum(confusion.sum(axis=1) * confusion.sum(axis=0))) / total**2
    if np.isclose(p_e, 1.0):
        # Single class in both truth and prediction
        return 1.0 if np.isclose(p_o, 1.0) else 0.0
    return float((p_o - p_e) / (1.0 - p_e))


def classification_scores(
    predicted: np.ndarray, truth: np.ndarray, num_classes: int
) -> ClassificationScores:
    """
    Scores over an evaluation mask (the caller passes only masked pixels).

    Args:
        predicted: class ids (0-based) of the evaluated pixels.
        truth: ground-truth class ids (0-based) of the same pixels.
        num_classes: C; classes absent from both contribute F1 = 0.

    Returns:
        ClassificationScores with kappa, mean and per-class F1, the C x C
        confusion matrix and overall accuracy.
    """
    predicted = np.asarray(predicted, dtype=np.int64).ravel()
    truth = np.asarray(truth, dtype=np.int64).ravel()
    if predicted.shape != truth.shape:
        raise DimensionMismatchError(
            f"{predicted.size} predictions for {truth.size} ground-truth pixels"
        )
    if truth.size == 0:
        raise EmptyMaskError("evaluation mask selects no pixel")
    classes = np.arange(num_classes)
    confusion = confusion_matrix(truth, predicted, labels=classes)
    per_class = f1_score(
        truth, predicted, labels=classes, average=None, zero_division=0.0
    )
    return ClassificationScores(
        kappa=kappa_from_confusion(confusion),
        f1_mean=float(np.mean(per_class)),
        f1_per_class=np.asarray(per_class, dtype=np.float64),
        confusion=confusion,
        overall_accuracy=float(np.trace(confusion) / confusion.sum()),
    )
