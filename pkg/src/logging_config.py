import logging
import sys
from pathlib import Path

from tqdm import tqdm

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


class TqdmLoggingHandler(logging.Handler):
    """A logging handler that uses tqdm.write() to avoid interfering with progress bars."""

    def __init__(self, level=logging.NOTSET):
        super().__init__(level)

    def emit(self, record):
        try:
            msg = self.format(record)
            tqdm.write(msg, file=sys.stderr)
            self.flush()
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)


def _console_level(quiet: bool) -> int:
    return logging.WARNING if quiet else logging.INFO


def _reset_root_logger() -> logging.Logger:
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()
    return root_logger


def _file_handler(log_file_path: str | Path) -> logging.FileHandler:
    file_handler = logging.FileHandler(str(log_file_path), mode="a")
    file_handler.setLevel(logging.INFO)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    return file_handler


def configure_console_logging(log_file_path: str | Path, quiet: bool = False) -> None:
    """
    Configure logging for synth, eval and check: a file handler plus a
    console handler on stderr (stdout is reserved for command output).
    """
    root_logger = _reset_root_logger()
    root_logger.addHandler(_file_handler(log_file_path))

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(_console_level(quiet))
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(console_handler)

    logging.info(f"Console logging configured. Log file: {log_file_path}")


def configure_tqdm_logging(log_file_path: str | Path, quiet: bool = False) -> None:
    """
    Configure a dedicated logger for use with the solver's tqdm progress bar.
    """
    root_logger = _reset_root_logger()
    root_logger.addHandler(_file_handler(log_file_path))

    # Configure the dedicated tqdm logger
    tqdm_logger = logging.getLogger("tqdm_logger")
    tqdm_logger.setLevel(logging.DEBUG)
    tqdm_logger.propagate = False  # Prevent messages from going to the root logger

    for handler in tqdm_logger.handlers[:]:
        tqdm_logger.removeHandler(handler)
        handler.close()

    tqdm_handler = TqdmLoggingHandler(level=_console_level(quiet))
    tqdm_handler.setFormatter(logging.Formatter("%(message)s"))
    tqdm_logger.addHandler(tqdm_handler)
    tqdm_logger.addHandler(_file_handler(log_file_path))

    logging.info(f"Tqdm logging configured. Log file: {log_file_path}")
