"""Log file management and rotation."""

import datetime
import sys
from pathlib import Path

from src.config import AppConfig


class LogManager:
    """Manages log file creation, rotation, and cleanup."""

    def __init__(self, logs_dir: str | Path, config: AppConfig):
        """
        Initialize log manager.

        Args:
            logs_dir: Directory to store log files
            config: Application configuration
        """
        self.logs_dir = Path(logs_dir)
        self.config = config
        self.logs_dir.mkdir(parents=True, exist_ok=True)

    def create_log_file(self, command: str) -> Path:
        """
        Build the path of a new log file for one CLI command.

        Returns:
            Path like logs/<prefix>_<command>_<timestamp>.log
        """
        timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        log_file_name = f"{self.config.LOG_FILE_PREFIX}_{command}_{timestamp}.log"
        return self.logs_dir / log_file_name

    def list_log_files(self) -> list[Path]:
        """Existing log files, oldest first."""
        return sorted(
            [
                f
                for f in self.logs_dir.iterdir()
                if f.name.startswith(self.config.LOG_FILE_PREFIX)
                and f.name.endswith(".log")
            ],
            key=lambda f: (f.stat().st_mtime, f.name),
        )

    def cleanup_old_logs(self, max_files: int) -> None:
        """
        Remove old log files so that, with the next one, at most `max_files` remain.

        Args:
            max_files: Maximum number of log files to retain
        """
        log_files = self.list_log_files()
        if max_files < 1 or len(log_files) < max_files:
            return
        for old_log_file in log_files[: len(log_files) - max_files + 1]:
            try:
                old_log_file.unlink()
                print(f"Deleted old log file: {old_log_file.name}", file=sys.stderr)
            except OSError as e:
                print(f"Error deleting old log file {old_log_file.name}: {e}", file=sys.stderr)
