"""Unit tests for the PipelineFactory."""

import os

from src.config import AppConfig
from src.data_pipeline import CofactorizationPipeline
from src.exporters import ResultExporter
from src.file_manager import FileManager
from src.pipeline_factory import PipelineFactory
from src.run_config import RunConfig


class TestPipelineFactory:
    """Test cases for PipelineFactory."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.config = AppConfig()
        self.factory = PipelineFactory(config=self.config)

    def test_data_dir_precedence(self):
        """Test command line over run config over the default."""
        run_config = RunConfig(data_dir="from_config")
        assert self.factory.resolve_data_dir(run_config, "from_cli") == "from_cli"
        assert self.factory.resolve_data_dir(run_config) == "from_config"
        assert self.factory.resolve_data_dir(RunConfig()) == self.config.DATA_DIR

    def test_output_dir_defaults_under_data_dir(self):
        """Test that results go to <data_dir>/results unless overridden."""
        assert self.factory.resolve_output_dir(RunConfig(), "scene") == os.path.join("scene", "results")
        assert self.factory.resolve_output_dir(RunConfig(output_dir="out"), "scene") == "out"
        assert self.factory.resolve_output_dir(RunConfig(output_dir="out"), "scene", "cli") == "cli"

    def test_create_file_manager(self):
        """Test creation of the file manager."""
        file_manager = self.factory.create_file_manager("scene", "out")
        assert isinstance(file_manager, FileManager)
        assert (file_manager.data_dir, file_manager.output_dir) == ("scene", "out")

    def test_create_exporter(self):
        """Test creation of the exporter."""
        exporter = self.factory.create_exporter(FileManager("a", "b"), csv_copies=True)
        assert isinstance(exporter, ResultExporter)
        assert exporter.csv_copies is True

    def test_create_pipeline(self):
        """Test creation of complete pipeline."""
        run_config = RunConfig(K=3)
        pipeline = self.factory.create_pipeline(run_config, data_dir="scene", csv_copies=True)

        assert isinstance(pipeline, CofactorizationPipeline)
        assert pipeline.run_config is run_config
        assert pipeline.config is self.config
        assert pipeline.file_manager.output_dir == os.path.join("scene", "results")
        assert pipeline.exporter.csv_copies is True
