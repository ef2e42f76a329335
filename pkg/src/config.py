# src/config.py
import os


class AppConfig:
    # --- Data Directory Settings ---
    BASE_DIR: str = "."
    DATA_DIR: str = "data"
    OUTPUT_DIR_NAME: str = (
        "results"  # Name of the subdirectory within DATA_DIR for solver outputs
    )

    # --- Logging Settings ---
    MAX_LOG_FILES: int = 5
    LOG_FILE_PREFIX: str = "cofact_log"
    LOGS_DIR_NAME: str = "logs"

    # --- Parallelism ---
    THREADS_ENV_VAR: str = "COFACT_THREADS"
    DEFAULT_THREADS: int = 0  # 0 = sequential deterministic mode

    # --- Hyperparameters (raw, before scaling) ---
    DEFAULT_VARIANT: str = "quadratic"
    DEFAULT_LAMBDA0_TILDE: float = 100.0
    DEFAULT_LAMBDA1: float = 1.0
    DEFAULT_LAMBDA2: float = 1.0
    DEFAULT_LAMBDA_H: float = 0.1
    DEFAULT_LAMBDA_Q_TILDE: float = 0.1
    DEFAULT_LAMBDA_C_TILDE: float = 1e-3
    DEFAULT_EPSILON_TV: float = 1e-3
    DEFAULT_SIGMA_BETA: float = 0.01

    # --- Solver Settings ---
    DEFAULT_ALPHA: float = 2.0
    DEFAULT_STOP_TOL: float = 1e-4
    DEFAULT_MAX_ITERS: int = 5000
    DEFAULT_MONITOR_EVERY: int = 1
    DEFAULT_BACKTRACKING: bool = True
    BACKTRACK_MAX_HALVINGS: int = 20
    BACKTRACK_SLACK: float = 1e-10

    # --- Initialization Settings ---
    DEFAULT_K: int = 10
    DEFAULT_J: int = 4
    DEFAULT_ALPHA_GROUP_FRACTION: float = 0.1  # alpha = fraction * max|Y~^T Y|
    DEFAULT_GROUP_LASSO_ITERS: int = 2000
    DEFAULT_GROUP_LASSO_TOL: float = 1e-8
    DEFAULT_KMEANS_RESTARTS: int = 5
    DEFAULT_KMEANS_ITERS: int = 100
    DEFAULT_ROW_PRUNE_TOL: float = 1e-6
    DEFAULT_DICTIONARY_SOURCE: str = "given"  # "given" or "self"
    DEFAULT_SEED: int = 0

    # --- Synthetic Scene Settings ---
    SYNTH_ROWS: int = 50
    SYNTH_COLS: int = 50
    SYNTH_BANDS: int = 64
    SYNTH_ENDMEMBERS: int = 6
    SYNTH_CLASSES: int = 4
    SYNTH_EXTRA_ENDMEMBERS: int = 9
    SYNTH_SNR_DB: float = 30.0
    SYNTH_TRAIN_FRACTION: float = 0.1
    SYNTH_SMOOTHNESS: float = 0.08  # Gaussian bump width, fraction of band count
    SYNTH_CONFOUNDER_MAX_ANGLE_DEG: float = 10.0
    SYNTH_MIN_PAIRWISE_ANGLE_DEG: float = 5.0

    # --- Artifact File Names ---
    MATRIX_SUFFIX: str = ".cofa"
    OBSERVATIONS_FILE: str = "Y.cofa"
    DICTIONARY_FILE: str = "W.cofa"
    ABUNDANCES_TRUE_FILE: str = "H_true.cofa"
    CLASS_MAP_FILE: str = "classmap.cofa"
    LABEL_MASK_FILE: str = "labelmask.cofa"
    GRID_FILE: str = "grid.cofa"
    CLASSIFICATION_FILE: str = "classification.cofa"
    TRACE_FILE: str = "trace.csv"
    SOLUTION_BLOCKS: tuple = ("H", "B", "Z", "Q", "C")

    def __init__(self):
        # Instance-level override of the thread cap, read once from the environment
        raw = os.environ.get(self.THREADS_ENV_VAR, "")
        try:
            self.THREADS: int = max(0, int(raw)) if raw else self.DEFAULT_THREADS
        except ValueError:
            self.THREADS = self.DEFAULT_THREADS

    @property
    def LOGS_DIR(self) -> str:
        return os.path.join(self.BASE_DIR, self.LOGS_DIR_NAME)

    @property
    def OUTPUT_DIR(self) -> str:
        return os.path.join(self.DATA_DIR, self.OUTPUT_DIR_NAME)
