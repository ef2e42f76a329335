"""Flat `key = value` run configuration files."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from src.config import AppConfig
from src.errors import ConfigError
from src.problem import RawWeights, Variant

logger = logging.getLogger(__name__)

DICTIONARY_SOURCES = ("given", "self")
AUTO = "auto"
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass(frozen=True)
class RunConfig:
    # model
    variant: str = AppConfig.DEFAULT_VARIANT
    lambda0_tilde: float = AppConfig.DEFAULT_LAMBDA0_TILDE
    lambda1: float = AppConfig.DEFAULT_LAMBDA1
    lambda2: float = AppConfig.DEFAULT_LAMBDA2
    lambda_h: float = AppConfig.DEFAULT_LAMBDA_H
    lambda_q_tilde: float = AppConfig.DEFAULT_LAMBDA_Q_TILDE
    lambda_c_tilde: float = AppConfig.DEFAULT_LAMBDA_C_TILDE
    epsilon_tv: float = AppConfig.DEFAULT_EPSILON_TV
    sigma_beta: float = AppConfig.DEFAULT_SIGMA_BETA
    edge_weights: bool = True
    # solver
    alpha: float = AppConfig.DEFAULT_ALPHA
    stop_tol: float = AppConfig.DEFAULT_STOP_TOL
    max_iters: int = AppConfig.DEFAULT_MAX_ITERS
    monitor_every: int = AppConfig.DEFAULT_MONITOR_EVERY
    backtracking: bool = AppConfig.DEFAULT_BACKTRACKING
    # initialization
    K: int = AppConfig.DEFAULT_K
    J: int = AppConfig.DEFAULT_J
    alpha_group: float | None = None
    dictionary: str = AppConfig.DEFAULT_DICTIONARY_SOURCE
    kmeans_restarts: int = AppConfig.DEFAULT_KMEANS_RESTARTS
    seed: int = AppConfig.DEFAULT_SEED
    # synthetic scene
    M: int = AppConfig.SYNTH_ROWS
    N: int = AppConfig.SYNTH_COLS
    L: int = AppConfig.SYNTH_BANDS
    R_true: int = AppConfig.SYNTH_ENDMEMBERS
    C: int = AppConfig.SYNTH_CLASSES
    extra_endmembers: int = AppConfig.SYNTH_EXTRA_ENDMEMBERS
    snr_db: float = AppConfig.SYNTH_SNR_DB
    train_fraction: float = AppConfig.SYNTH_TRAIN_FRACTION
    # paths
    data_dir: str | None = None
    output_dir: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant).value)
        if self.dictionary not in DICTIONARY_SOURCES:
            raise ConfigError(
                f"dictionary must be one of {DICTIONARY_SOURCES}, got {self.dictionary!r}"
            )
        for name in ("K", "J", "monitor_every", "kmeans_restarts", "M", "N", "L", "R_true"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.C < 2:
            raise ConfigError(f"C must be >= 2, got {self.C}")
        if self.extra_endmembers < 0 or self.max_iters < 0 or self.seed < 0:
            raise ConfigError("extra_endmembers, max_iters and seed must be >= 0")
        # remaining numeric ranges are enforced by Hyperparameters and SolverConfig
        self.raw_weights()

    @property
    def variant_enum(self) -> Variant:
        return Variant.parse(self.variant)

    @property
    def use_self_dictionary(self) -> bool:
        return self.dictionary == "self"

    def raw_weights(self) -> RawWeights:
        raw = RawWeights(
            lambda0_tilde=self.lambda0_tilde,
            lambda1=self.lambda1,
            lambda2=self.lambda2,
            lambda_h=self.lambda_h,
            lambda_q_tilde=self.lambda_q_tilde,
            lambda_c_tilde=self.lambda_c_tilde,
            epsilon_tv=self.epsilon_tv,
            sigma_beta=self.sigma_beta,
            stop_tol=self.stop_tol,
            max_iters=self.max_iters,
            alpha=self.alpha,
            seed=self.seed,
        )
        for name, value in asdict(raw).items():
            if isinstance(value, float) and (math.isnan(value) or value < 0):
                raise ConfigError(f"{name} must be a nonnegative real, got {value}")
        if not self.alpha > 1:
            raise ConfigError(f"alpha must be > 1, got {self.alpha}")
        if not (self.epsilon_tv > 0 and self.sigma_beta > 0 and self.stop_tol > 0):
            raise ConfigError("epsilon_tv, sigma_beta and stop_tol must be positive")
        return raw

    def with_overrides(self, **overrides) -> "RunConfig":
        return replace(self, **overrides)

    @classmethod
    def from_text(cls, text: str, source: str = "<config>") -> "RunConfig":
        known = {f.name: f for f in fields(cls)}
        values: dict[str, object] = {}
        for number, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{source}:{number}: expected 'key = value', got {raw_line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                raise ConfigError(f"{source}:{number}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{source}:{number}: duplicate key {key!r}")
            values[key] = _convert(key, value, known[key].type, source, number)
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        config = cls.from_text(path.read_text(encoding="utf-8"), source=str(path))
        logger.info(f"Loaded run configuration from {path}")
        return config

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            lines.append(f"{f.name} = {_format(getattr(self, f.name), f.name)}")
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


def _convert(key: str, value: str, annotation: str, source: str, number: int):
    where = f"{source}:{number}"
    try:
        if annotation == "bool":
            lowered = value.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(value)
        if annotation == "int":
            return int(value)
        if annotation == "float":
            return float(value)
        if annotation == "float | None":
            return None if value.lower() in ("", AUTO) else float(value)
        if annotation == "str | None":
            return value or None
        return value
    except ValueError:
        raise ConfigError(f"{where}: invalid value {value!r} for {key}") from None


def _format(value, key: str) -> str:
    if value is None:
        return AUTO if key == "alpha_group" else ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
