import logging

import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

SPECTRAL_NORM_FLOOR = 1e-12
POWER_ITERATION_TOL = 1e-8
POWER_ITERATION_MAX_ITERS = 1000
POWER_ITERATION_SEED = 20190601


def spectral_norm(A: np.ndarray) -> float:
    """
    Largest singular value of A by power iteration on A^T A.

    The start vector is drawn from a fixed seed so repeated calls are
    bit-identical. Falls back to a dense SVD-based norm when the iteration
    has not reached the relative tolerance. Never returns less than 1e-12.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.size == 0:
        return SPECTRAL_NORM_FLOOR
    rng = np.random.default_rng(POWER_ITERATION_SEED)
    v = rng.standard_normal(A.shape[1])
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(POWER_ITERATION_MAX_ITERS):
        Av = A @ v
        w = A.T @ Av
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return SPECTRAL_NORM_FLOOR
        new_estimate = float(np.sqrt(norm_w))
        v = w / norm_w
        if abs(new_estimate - estimate) <= POWER_ITERATION_TOL * new_estimate:
            return max(new_estimate, SPECTRAL_NORM_FLOOR)
        estimate = new_estimate
    logger.debug(
        f"Power iteration did not converge on a {A.shape} matrix; using dense norm"
    )
    return max(float(scipy.linalg.norm(A, 2)), SPECTRAL_NORM_FLOOR)


def child_seeds(seed: int, count: int) -> list[int]:
    """Independent, reproducible integer seeds derived from one parent seed."""
    sequence = np.random.SeedSequence(seed)
    return [int(child.generate_state(1)[0]) for child in sequence.spawn(count)]
