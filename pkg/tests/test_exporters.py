"""Unit tests for the result exporter."""

import csv
import os
import tempfile

import numpy as np

from src.exporters import ResultExporter
from src.file_manager import FileManager
from src.matrix_io import read_matrix
from src.objective import ObjectiveBreakdown
from src.solve_report import IterationRecord, SolveReport, StopReason


def _report():
    records = tuple(
        IterationRecord(
            iteration=i,
            objective=ObjectiveBreakdown.from_terms(
                term_repr=1.0 / (i + 1), term_l1=0.1, term_clust=0.2,
                term_classif=0.3, term_weight_decay=0.0, term_vtv=0.01,
            ),
            rel_change=float("nan") if i == 0 else 0.5,
        )
        for i in range(3)
    )
    return SolveReport(records=records, stop_reason=StopReason.MAX_ITERS, wall_time=0.1)


class TestResultExporter:
    """Test cases for ResultExporter."""

    def setup_method(self):
        self.temp_dir = tempfile.mkdtemp()
        self.file_manager = FileManager(
            data_dir=self.temp_dir, output_dir=os.path.join(self.temp_dir, "results")
        )
        self.file_manager.ensure_output_dir()

    def test_export_results_with_csv_copies(self):
        """Test binary and CSV outputs of named blocks."""
        exporter = ResultExporter(self.file_manager, csv_copies=True)
        H = np.array([[0.25, 1e-300], [-0.0, 2.0]])

        exporter.export_matrices({"H": H})

        np.testing.assert_array_equal(read_matrix(self.file_manager.output_path("H")), H)
        with open(os.path.join(self.temp_dir, "results", "H.csv"), encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows == [["0.25", "1e-300"], ["-0.0", "2.0"]]

    def test_export_inputs(self):
        """Test that as_inputs writes scene files without CSV copies."""
        exporter = ResultExporter(self.file_manager)
        exporter.export_matrices({"Y": np.ones((2, 3))}, as_inputs=True)
        assert os.path.isfile(os.path.join(self.temp_dir, "Y.cofa"))
        assert not os.path.exists(os.path.join(self.temp_dir, "Y.csv"))

    def test_export_trace(self):
        """Test the header and one row per record."""
        exporter = ResultExporter(self.file_manager)
        path = exporter.export_trace(_report())
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == "iteration,total,repr,l1,clust,classif,weight_decay,vtv,rel_change"
        assert len(lines) == 4
        assert lines[1].startswith("0,") and lines[1].endswith(",nan")
