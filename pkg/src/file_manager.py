import logging
import os

from src.config import AppConfig

# Initialize config instance
config = AppConfig()

SCENE_FILES = {
    "Y": config.OBSERVATIONS_FILE,
    "W": config.DICTIONARY_FILE,
    "H_true": config.ABUNDANCES_TRUE_FILE,
    "classmap": config.CLASS_MAP_FILE,
    "labelmask": config.LABEL_MASK_FILE,
    "grid": config.GRID_FILE,
}
RUN_INPUTS = ("Y", "W", "classmap", "labelmask", "grid")
EVAL_INPUTS = ("Y", "classmap", "labelmask")
EVAL_RESULTS = ("H", "W", "classification")


class FileManager:
    """Resolves the artifact paths of a data directory and its results directory."""

    def __init__(self, data_dir: str, output_dir: str):
        self.data_dir = data_dir
        self.output_dir = output_dir

    def input_path(self, name: str) -> str:
        """Path of a scene artifact (`Y`, `W`, `H_true`, `classmap`, `labelmask`, `grid`)."""
        return os.path.join(self.data_dir, SCENE_FILES[name])

    def output_path(self, name: str) -> str:
        """Path of a run result; bare block names get the matrix suffix."""
        if name == "trace":
            return os.path.join(self.output_dir, config.TRACE_FILE)
        if name == "classification":
            return os.path.join(self.output_dir, config.CLASSIFICATION_FILE)
        return os.path.join(self.output_dir, f"{name}{config.MATRIX_SUFFIX}")

    def csv_path(self, matrix_path: str) -> str:
        return os.path.splitext(matrix_path)[0] + ".csv"

    def has_input(self, name: str) -> bool:
        return os.path.isfile(self.input_path(name))

    def missing_files(self, paths: list[str]) -> list[str]:
        missing = [path for path in paths if not os.path.isfile(path)]
        for path in missing:
            logging.error(f"Missing input file: {path}")
        return missing

    def missing_run_inputs(self, need_dictionary: bool = True) -> list[str]:
        names = [n for n in RUN_INPUTS if need_dictionary or n != "W"]
        return self.missing_files([self.input_path(n) for n in names])

    def missing_eval_inputs(self) -> list[str]:
        paths = [self.input_path(n) for n in EVAL_INPUTS]
        paths += [self.output_path(n) for n in EVAL_RESULTS]
        return self.missing_files(paths)

    def ensure_data_dir(self) -> None:
        os.makedirs(self.data_dir, exist_ok=True)

    def ensure_output_dir(self) -> None:
        os.makedirs(self.output_dir, exist_ok=True)
