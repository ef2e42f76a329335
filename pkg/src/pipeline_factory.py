"""Factory for creating pipeline components."""

import os

from src.config import AppConfig
from src.data_pipeline import CofactorizationPipeline
from src.exporters import ResultExporter
from src.file_manager import FileManager
from src.run_config import RunConfig


class PipelineFactory:
    """Factory class for creating pipeline components with proper dependency injection."""

    def __init__(self, config: AppConfig):
        self.config = config

    def resolve_data_dir(self, run_config: RunConfig, data_dir: str | None = None) -> str:
        """Command line, then run configuration, then the application default."""
        return data_dir or run_config.data_dir or self.config.DATA_DIR

    def resolve_output_dir(
        self, run_config: RunConfig, data_dir: str, output_dir: str | None = None
    ) -> str:
        return (
            output_dir
            or run_config.output_dir
            or os.path.join(data_dir, self.config.OUTPUT_DIR_NAME)
        )

    def create_file_manager(self, data_dir: str, output_dir: str) -> FileManager:
        """Create file manager with configured settings."""
        return FileManager(data_dir=data_dir, output_dir=output_dir)

    def create_exporter(self, file_manager: FileManager, csv_copies: bool = False) -> ResultExporter:
        return ResultExporter(file_manager=file_manager, csv_copies=csv_copies)

    def create_pipeline(
        self,
        run_config: RunConfig,
        data_dir: str | None = None,
        output_dir: str | None = None,
        csv_copies: bool = False,
    ) -> CofactorizationPipeline:
        """
        Create a complete pipeline with all dependencies.

        Args:
            run_config: Parsed run configuration
            data_dir: Overrides the configured data directory
            output_dir: Overrides the configured results directory
            csv_copies: Also write a .csv copy of every matrix

        Returns:
            CofactorizationPipeline instance
        """
        resolved_data_dir = self.resolve_data_dir(run_config, data_dir)
        resolved_output_dir = self.resolve_output_dir(run_config, resolved_data_dir, output_dir)
        file_manager = self.create_file_manager(resolved_data_dir, resolved_output_dir)
        return CofactorizationPipeline(
            file_manager=file_manager,
            exporter=self.create_exporter(file_manager, csv_copies),
            run_config=run_config,
            config=self.config,
        )
