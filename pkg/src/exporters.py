import csv
import logging

import numpy as np

from src.file_manager import FileManager
from src.matrix_io import write_matrix
from src.solve_report import SolveReport


class ResultExporter:
    """Writes matrices in the binary format, plus optional CSV copies, and the trace CSV."""

    def __init__(self, file_manager: FileManager, csv_copies: bool = False):
        self.file_manager = file_manager
        self.csv_copies = csv_copies

    def write_csv_matrix(self, path: str, matrix: np.ndarray) -> None:
        matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            for row in matrix:
                writer.writerow([repr(float(v)) for v in row])

    def export_matrix(self, path: str, matrix: np.ndarray) -> None:
        write_matrix(path, matrix)
        if self.csv_copies:
            self.write_csv_matrix(self.file_manager.csv_path(path), matrix)

    def export_matrices(self, matrices: dict[str, np.ndarray], as_inputs: bool = False) -> None:
        """Write every named matrix into the data directory (inputs) or the results directory."""
        for name, matrix in matrices.items():
            if as_inputs:
                path = self.file_manager.input_path(name)
            else:
                path = self.file_manager.output_path(name)
            self.export_matrix(path, matrix)
        target = self.file_manager.data_dir if as_inputs else self.file_manager.output_dir
        logging.info(f"Successfully exported {len(matrices)} matrices to {target}.")

    def export_trace(self, report: SolveReport) -> str:
        path = self.file_manager.output_path("trace")
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerows(report.to_csv_rows())
        logging.info(
            f"Successfully exported {len(report.records)} trace records to {path}."
        )
        return path
