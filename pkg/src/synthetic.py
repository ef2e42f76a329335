"""Synthetic scenes with known endmembers, abundances and class map."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter1d
from scipy.spatial.distance import cdist

from src.config import AppConfig
from src.errors import DataError, DimensionMismatchError, InvalidFractionError
from src.initializer import spectral_angles
from src.problem import UNLABELED, Problem, RawWeights, SpatialGrid, Variant
from src.problem_builder import assemble_problem
from src.utils import child_seeds

logger = logging.getLogger(__name__)

ABUNDANCE_NOISE_STD = 0.05
BASELINE = 0.05
MAX_ENDMEMBER_ATTEMPTS = 10000
MAX_PERTURBATION_HALVINGS = 40
INITIAL_PERTURBATION = 0.2
SITES_PER_CLASS = 4


@dataclass(frozen=True)
class SyntheticScene:
    Y: np.ndarray  # L x P noisy observations
    Y_clean: np.ndarray  # W_true H_true
    W_true: np.ndarray  # L x R_true
    H_true: np.ndarray  # R_true x P
    class_map: np.ndarray  # P, 0-based
    label_mask: np.ndarray  # P, True on training pixels
    snr_db: float
    rows: int
    cols: int

    @property
    def num_classes(self) -> int:
        return int(self.class_map.max()) + 1

    def grid(self) -> SpatialGrid:
        return SpatialGrid.uniform(self.rows, self.cols)

    def labels(self) -> np.ndarray:
        """Class ids on training pixels, UNLABELED elsewhere."""
        return np.where(self.label_mask, self.class_map, UNLABELED)


def _bump_curve(x: np.ndarray, smoothness: float, rng: np.random.Generator) -> np.ndarray:
    count = int(rng.integers(2, 5))
    centers = rng.uniform(0.0, 1.0, count)
    widths = smoothness * rng.uniform(0.5, 1.5, count)
    heights = rng.uniform(0.2, 1.0, count)
    curve = BASELINE + np.sum(
        heights[:, None] * np.exp(-((x[None, :] - centers[:, None]) ** 2) / (2 * widths[:, None] ** 2)),
        axis=0,
    )
    return curve / curve.max()


def generate_endmembers(L: int, R_true: int, smoothness: float, seed: int) -> np.ndarray:
    """
    Smooth positive spectra in (0, 1], one per column, built from random
    Gaussian bumps over a positive baseline. Every pair of columns is at
    least 5 degrees apart.
    """
    if L < 2 or R_true < 1:
        raise DimensionMismatchError(f"need L >= 2 and R_true >= 1, got L={L}, R={R_true}")
    rng = np.random.default_rng(seed)
    x = np.linspace(0.0, 1.0, L)
    min_angle = math.radians(AppConfig.SYNTH_MIN_PAIRWISE_ANGLE_DEG)
    columns: list[np.ndarray] = []
    attempts = 0
    while len(columns) < R_true:
        attempts += 1
        if attempts > MAX_ENDMEMBER_ATTEMPTS:
            raise DataError(
                f"Could not draw {R_true} endmembers {AppConfig.SYNTH_MIN_PAIRWISE_ANGLE_DEG}"
                f" degrees apart over {L} bands"
            )
        curve = _bump_curve(x, smoothness, rng)
        if columns:
            angles = spectral_angles(curve[:, None], np.column_stack(columns))
            if angles.min() < min_angle:
                continue
        columns.append(curve)
    return np.column_stack(columns)


def _voronoi_class_map(
    rows: int, cols: int, num_classes: int, rng: np.random.Generator
) -> np.ndarray:
    P = rows * cols
    num_sites = min(P, SITES_PER_CLASS * num_classes)
    sites = rng.choice(P, size=num_sites, replace=False)
    site_classes = np.concatenate(
        [np.arange(num_classes), rng.integers(num_classes, size=num_sites - num_classes)]
    )
    rng.shuffle(site_classes)
    coordinates = np.column_stack(np.divmod(np.arange(P), cols))
    nearest = np.argmin(cdist(coordinates, coordinates[sites]), axis=1)
    return site_classes[nearest]


def _training_mask(
    class_map: np.ndarray, num_classes: int, fraction: float, rng: np.random.Generator
) -> np.ndarray:
    mask = np.zeros(class_map.shape[0], dtype=bool)
    for class_index in range(num_classes):
        members = np.flatnonzero(class_map == class_index)
        count = max(1, int(round(fraction * members.size)))
        mask[rng.choice(members, size=count, replace=False)] = True
    return mask


def add_noise(Y_clean: np.ndarray, snr_db: float, rng: np.random.Generator) -> np.ndarray:
    """White Gaussian noise scaled so the SNR of the result is exactly `snr_db`."""
    if math.isinf(snr_db) and snr_db > 0:
        return Y_clean.copy()
    noise = rng.standard_normal(Y_clean.shape)
    scale = np.sqrt(np.sum(Y_clean**2) / (10.0 ** (snr_db / 10.0) * np.sum(noise**2)))
    return Y_clean + scale * noise


def generate_scene(
    M: int,
    N: int,
    L: int,
    R_true: int,
    C: int,
    snr_db: float,
    train_fraction: float,
    seed: int,
    smoothness: float = AppConfig.SYNTH_SMOOTHNESS,
) -> SyntheticScene:
    """
    Voronoi patches over random sites carry the classes; each class has a
    Dirichlet abundance profile, perturbed per pixel and clipped at zero.

    Args:
        M, N: grid size.
        L: number of bands.
        R_true: number of endmembers present in the scene.
        C: number of classes; each class owns at least one patch.
        snr_db: target SNR, `inf` for a noiseless scene.
        train_fraction: share of each class's pixels flagged for training.
        seed: all randomness derives from it.

    Returns:
        A SyntheticScene.
    """
    if not 0.0 < train_fraction <= 1.0:
        raise InvalidFractionError(f"train_fraction must be in (0, 1], got {train_fraction}")
    if C < 1 or C > M * N:
        raise DimensionMismatchError(f"cannot place {C} classes on a {M}x{N} grid")
    endmember_seed, scene_seed = child_seeds(seed, 2)
    W_true = generate_endmembers(L, R_true, smoothness, endmember_seed)
    rng = np.random.default_rng(scene_seed)

    class_map = _voronoi_class_map(M, N, C, rng)
    profiles = rng.dirichlet(np.ones(R_true), size=C).T  # R_true x C
    H_true = profiles[:, class_map] + rng.normal(
        0.0, ABUNDANCE_NOISE_STD, size=(R_true, M * N)
    )
    H_true = np.maximum(H_true, 0.0)
    Y_clean = W_true @ H_true
    Y = add_noise(Y_clean, snr_db, rng)
    label_mask = _training_mask(class_map, C, train_fraction, rng)
    logger.info(
        f"Generated {M}x{N} scene: L={L}, R_true={R_true}, C={C}, SNR={snr_db} dB, "
        f"{int(label_mask.sum())} training pixel(s)"
    )
    return SyntheticScene(
        Y=Y,
        Y_clean=Y_clean,
        W_true=W_true,
        H_true=H_true,
        class_map=class_map,
        label_mask=label_mask,
        snr_db=snr_db,
        rows=M,
        cols=N,
    )


def augment_dictionary_with_sources(
    W_true: np.ndarray,
    extra: int,
    max_angle_deg: float = AppConfig.SYNTH_CONFOUNDER_MAX_ANGLE_DEG,
    seed: int = AppConfig.DEFAULT_SEED,
    smoothness: float = AppConfig.SYNTH_SMOOTHNESS,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Append `extra` confounders: smooth multiplicative perturbations of random
    true endmembers. The perturbation amplitude is halved until the copy is
    within `max_angle_deg` of its source and no other true column is closer.

    Returns:
        (L x (R_true + extra) dictionary, source column of each confounder)
    """
    if extra < 0:
        raise DimensionMismatchError(f"extra must be >= 0, got {extra}")
    W_true = np.asarray(W_true, dtype=np.float64)
    L, R_true = W_true.shape
    rng = np.random.default_rng(seed)
    max_angle = math.radians(max_angle_deg)
    width = max(1.0, smoothness * L)

    confounders, sources = [], []
    for _ in range(extra):
        source = int(rng.integers(R_true))
        field = gaussian_filter1d(rng.standard_normal(L), sigma=width, mode="nearest")
        field /= max(float(np.max(np.abs(field))), np.finfo(float).tiny)
        amplitude = INITIAL_PERTURBATION
        candidate = W_true[:, source].copy()
        for _ in range(MAX_PERTURBATION_HALVINGS):
            trial = W_true[:, source] * (1.0 + amplitude * field)
            angles = spectral_angles(trial[:, None], W_true)[0]
            if angles[source] <= max_angle and int(np.argmin(angles)) == source:
                candidate = trial
                break
            amplitude *= 0.5
        confounders.append(candidate)
        sources.append(source)

    if not confounders:
        return W_true.copy(), np.zeros(0, dtype=np.int64)
    return np.hstack([W_true, np.column_stack(confounders)]), np.array(sources, dtype=np.int64)


def augment_dictionary(
    W_true: np.ndarray,
    extra: int,
    max_angle_deg: float = AppConfig.SYNTH_CONFOUNDER_MAX_ANGLE_DEG,
    seed: int = AppConfig.DEFAULT_SEED,
) -> np.ndarray:
    """True endmembers followed by `extra` correlated confounders."""
    W, _ = augment_dictionary_with_sources(W_true, extra, max_angle_deg, seed)
    return W


def build_problem(
    scene: SyntheticScene,
    W: np.ndarray,
    raw: RawWeights,
    variant: Variant = Variant.QUADRATIC,
    K: int = AppConfig.DEFAULT_K,
    edge_weights: bool = True,
) -> Problem:
    """Problem over the scene's observations and training labels."""
    return assemble_problem(
        observations=scene.Y,
        dictionary=W,
        labels=scene.labels(),
        grid=scene.grid(),
        num_classes=scene.num_classes,
        num_clusters=K,
        raw=raw,
        variant=variant,
        edge_weights=edge_weights,
    )
