"""Problem definition: observations, dictionary, labels, grid and weights."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from src.config import AppConfig
from src.errors import (
    ConfigError,
    DataError,
    DegenerateDictionaryError,
    DimensionMismatchError,
    EmptyClassError,
    NegativeDictionaryError,
    NonFiniteEntryError,
    ProblemValidationError,
    ZeroImageError,
)

logger = logging.getLogger(__name__)

UNLABELED = -1
BETA_SUM_TOL = 1e-12


def frozen_array(values, dtype=np.float64) -> np.ndarray:
    """Copy `values` into a read-only array of the given dtype."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


class Variant(enum.Enum):
    QUADRATIC = "quadratic"
    CROSS_ENTROPY = "cross_entropy"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        key = name.strip().lower().replace("-", "_")
        aliases = {"q": "quadratic", "ce": "cross_entropy"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ConfigError(f"Unknown variant: {name!r}") from None


@dataclass(frozen=True)
class Hyperparameters:
    lambda0: float = 1.0
    lambda1: float = AppConfig.DEFAULT_LAMBDA1
    lambda2: float = AppConfig.DEFAULT_LAMBDA2
    lambda_h: float = AppConfig.DEFAULT_LAMBDA_H
    lambda_q: float = 1.0
    lambda_c: float = AppConfig.DEFAULT_LAMBDA_C_TILDE
    epsilon_tv: float = AppConfig.DEFAULT_EPSILON_TV
    sigma_beta: float = AppConfig.DEFAULT_SIGMA_BETA
    stop_tol: float = AppConfig.DEFAULT_STOP_TOL
    max_iters: int = AppConfig.DEFAULT_MAX_ITERS
    alpha: float = AppConfig.DEFAULT_ALPHA
    seed: int = AppConfig.DEFAULT_SEED

    def __post_init__(self):
        for name in ("lambda0", "lambda1", "lambda2", "lambda_h", "lambda_q", "lambda_c"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ConfigError(f"{name} must be a nonnegative real, got {value}")
        if not self.epsilon_tv > 0:
            raise ConfigError(f"epsilon_tv must be positive, got {self.epsilon_tv}")
        if not self.sigma_beta > 0:
            raise ConfigError(f"sigma_beta must be positive, got {self.sigma_beta}")
        if not self.stop_tol > 0:
            raise ConfigError(f"stop_tol must be positive, got {self.stop_tol}")
        if self.max_iters < 0:
            raise ConfigError(f"max_iters must be >= 0, got {self.max_iters}")
        if not self.alpha > 1:
            raise ConfigError(f"alpha must be > 1, got {self.alpha}")
        if self.seed < 0:
            raise ConfigError(f"seed must be unsigned, got {self.seed}")


@dataclass(frozen=True)
class RawWeights:
    """User-facing weights; lambda0 and lambda_q are scaled by scale_hyperparameters."""

    lambda0_tilde: float = AppConfig.DEFAULT_LAMBDA0_TILDE
    lambda1: float = AppConfig.DEFAULT_LAMBDA1
    lambda2: float = AppConfig.DEFAULT_LAMBDA2
    lambda_h: float = AppConfig.DEFAULT_LAMBDA_H
    lambda_q_tilde: float = AppConfig.DEFAULT_LAMBDA_Q_TILDE
    lambda_c_tilde: float = AppConfig.DEFAULT_LAMBDA_C_TILDE
    epsilon_tv: float = AppConfig.DEFAULT_EPSILON_TV
    sigma_beta: float = AppConfig.DEFAULT_SIGMA_BETA
    stop_tol: float = AppConfig.DEFAULT_STOP_TOL
    max_iters: int = AppConfig.DEFAULT_MAX_ITERS
    alpha: float = AppConfig.DEFAULT_ALPHA
    seed: int = AppConfig.DEFAULT_SEED


@dataclass(frozen=True)
class SpatialGrid:
    """Row-major M x N lattice; pixel p sits at (p // cols, p % cols)."""

    rows: int
    cols: int
    beta: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatchError(
                f"Grid must be at least 1x1, got {self.rows}x{self.cols}"
            )
        beta = self.beta
        if beta is None:
            beta = np.full((self.rows, self.cols), 1.0 / (self.rows * self.cols))
        beta = frozen_array(beta)
        if beta.shape != (self.rows, self.cols):
            raise DimensionMismatchError(
                f"beta has shape {beta.shape}, expected {(self.rows, self.cols)}"
            )
        object.__setattr__(self, "beta", beta)

    @classmethod
    def uniform(cls, rows: int, cols: int) -> "SpatialGrid":
        return cls(rows, cols)

    @property
    def num_pixels(self) -> int:
        return self.rows * self.cols

    def pixel_index(self, row: int, col: int) -> int:
        return row * self.cols + col

    def coordinates(self, pixel: int) -> tuple[int, int]:
        return divmod(pixel, self.cols)

    def with_beta(self, beta: np.ndarray) -> "SpatialGrid":
        return SpatialGrid(self.rows, self.cols, beta)


@dataclass(frozen=True)
class ClassWeights:
    """Diagonal of the class-balancing matrix D."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", frozen_array(self.d))

    @property
    def d_squared(self) -> np.ndarray:
        return self.d**2


@dataclass(frozen=True)
class Problem:
    observations: np.ndarray
    dictionary: np.ndarray
    labels: np.ndarray
    grid: SpatialGrid
    num_classes: int
    num_clusters: int
    variant: Variant = Variant.QUADRATIC
    hyper: Hyperparameters = field(default_factory=Hyperparameters)

    def __post_init__(self):
        object.__setattr__(self, "observations", frozen_array(self.observations))
        object.__setattr__(self, "dictionary", frozen_array(self.dictionary))
        object.__setattr__(self, "labels", frozen_array(self.labels, dtype=np.int64))

    @property
    def num_bands(self) -> int:
        return self.observations.shape[0]

    @property
    def num_pixels(self) -> int:
        return self.observations.shape[1]

    @property
    def num_atoms(self) -> int:
        return self.dictionary.shape[1]

    @property
    def labeled_mask(self) -> np.ndarray:
        return self.labels != UNLABELED

    @property
    def labeled_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labeled_mask)

    @property
    def unlabeled_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.labeled_mask)

    def with_dictionary(self, dictionary: np.ndarray) -> "Problem":
        return replace(self, dictionary=dictionary)

    def with_hyper(self, hyper: Hyperparameters) -> "Problem":
        return replace(self, hyper=hyper)

    def with_grid(self, grid: SpatialGrid) -> "Problem":
        return replace(self, grid=grid)


def _non_finite_entries(matrix: np.ndarray, name: str) -> list[DataError]:
    return [
        NonFiniteEntryError(int(r), int(c), name)
        for r, c in np.argwhere(~np.isfinite(matrix))
    ]


def problem_violations(problem: Problem) -> list[DataError]:
    """Return every invariant violation of `problem` (empty list when valid)."""
    violations: list[DataError] = []
    Y, W, labels = problem.observations, problem.dictionary, problem.labels

    if Y.ndim != 2 or W.ndim != 2:
        return [DimensionMismatchError("observations and dictionary must be matrices")]
    L, P = Y.shape
    if L < 1 or P < 1:
        violations.append(DimensionMismatchError(f"empty observations {Y.shape}"))
    if W.shape[0] != L:
        violations.append(
            DimensionMismatchError(f"dictionary has {W.shape[0]} bands, observations {L}")
        )
    if W.shape[1] < 1:
        violations.append(DimensionMismatchError("dictionary has no column"))
    if labels.shape != (P,):
        violations.append(
            DimensionMismatchError(f"labels has shape {labels.shape}, expected ({P},)")
        )
    if problem.grid.num_pixels != P:
        violations.append(
            DimensionMismatchError(
                f"grid {problem.grid.rows}x{problem.grid.cols} does not hold {P} pixels"
            )
        )
    if problem.num_classes < 2:
        violations.append(
            DimensionMismatchError(f"num_classes must be >= 2, got {problem.num_classes}")
        )
    if problem.num_clusters < 1:
        violations.append(
            DimensionMismatchError(f"num_clusters must be >= 1, got {problem.num_clusters}")
        )

    if labels.shape == (P,):
        out_of_range = (labels < UNLABELED) | (labels >= problem.num_classes)
        if np.any(out_of_range):
            violations.append(
                DimensionMismatchError(
                    f"{int(out_of_range.sum())} label(s) outside 1..{problem.num_classes}"
                )
            )
        present = set(np.unique(labels[labels != UNLABELED]).tolist())
        for class_index in range(problem.num_classes):
            if class_index not in present:
                violations.append(EmptyClassError(class_index + 1))

    violations.extend(_non_finite_entries(Y, "observations"))
    violations.extend(_non_finite_entries(W, "dictionary"))
    finite_w = np.where(np.isfinite(W), W, 0.0)
    violations.extend(
        NegativeDictionaryError(int(r), int(c)) for r, c in np.argwhere(finite_w < 0)
    )
    if W.shape[0] > 0:
        violations.extend(
            DegenerateDictionaryError(int(c))
            for c in np.flatnonzero(np.all(finite_w == 0, axis=0))
        )

    beta = problem.grid.beta
    if np.any(beta < 0) or abs(beta.sum() - 1.0) > BETA_SUM_TOL:
        violations.append(DataError("edge weights must be nonnegative and sum to 1"))
    return violations


def validate_problem(problem: Problem) -> Problem:
    """Return `problem` unchanged, or raise ProblemValidationError listing all violations."""
    violations = problem_violations(problem)
    if violations:
        logger.error(f"Problem validation failed with {len(violations)} violation(s)")
        raise ProblemValidationError(violations)
    return problem


def build_class_weights(labels: np.ndarray, num_classes: int) -> ClassWeights:
    """Class-balancing weights: 1/sqrt(|L_i|) on class i, 1/sqrt(|U|) on unlabeled pixels."""
    labels = np.asarray(labels, dtype=np.int64)
    d = np.zeros(labels.shape[0])
    for class_index in range(num_classes):
        members = labels == class_index
        count = int(members.sum())
        if count == 0:
            raise EmptyClassError(class_index + 1)
        d[members] = np.sqrt(1.0 / count)
    unlabeled = labels == UNLABELED
    if unlabeled.any():
        d[unlabeled] = np.sqrt(1.0 / unlabeled.sum())
    return ClassWeights(d)


def scale_hyperparameters(
    raw: RawWeights, observations: np.ndarray, num_classes: int
) -> Hyperparameters:
    """Balance term sizes: lambda0 = l0~ / (L |Y|inf^2), lambda_q = (P / C) lq~."""
    Y = np.asarray(observations, dtype=np.float64)
    if Y.size == 0:
        raise DimensionMismatchError("observations are empty")
    L, P = Y.shape
    y_inf = float(np.max(np.abs(Y)))
    if y_inf == 0:
        raise ZeroImageError("observations are identically zero")
    return Hyperparameters(
        lambda0=raw.lambda0_tilde / (L * y_inf**2),
        lambda1=raw.lambda1,
        lambda2=raw.lambda2,
        lambda_h=raw.lambda_h,
        lambda_q=(P / num_classes) * raw.lambda_q_tilde,
        lambda_c=raw.lambda_c_tilde,
        epsilon_tv=raw.epsilon_tv,
        sigma_beta=raw.sigma_beta,
        stop_tol=raw.stop_tol,
        max_iters=raw.max_iters,
        alpha=raw.alpha,
        seed=raw.seed,
    )
