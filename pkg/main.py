#!/usr/bin/env python3

"""Cofact - Main entry point."""

import logging
import sys
from pathlib import Path

from src.cli import parse_arguments
from src.config import AppConfig
from src.errors import ConfigError, DataError, NonFiniteIterateError
from src.log_manager import LogManager
from src.logging_config import configure_console_logging, configure_tqdm_logging
from src.pipeline_factory import PipelineFactory
from src.run_config import RunConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NON_FINITE = 3


def _report_error(message: str, echo: bool) -> None:
    logging.error(message)
    if echo:
        print(message, file=sys.stderr)


def load_run_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    if not Path(path).is_file():
        raise ConfigError(f"Configuration file not found: {path}")
    return RunConfig.from_file(path)


def execute(args, config: AppConfig) -> int:
    run_config = load_run_config(args.config)
    factory = PipelineFactory(config)
    pipeline = factory.create_pipeline(
        run_config,
        data_dir=args.data_dir,
        output_dir=getattr(args, "output_dir", None),
        csv_copies=getattr(args, "csv", False),
    )

    if args.command == "synth":
        pipeline.synth()
    elif args.command == "run":
        result = pipeline.run(show_progress=args.progress)
        if result.report.flagged:
            logging.error("Solver stopped on a non-finite iterate")
            return EXIT_NON_FINITE
    elif args.command == "eval":
        for key, value in pipeline.evaluate().items():
            print(f"{key}={value!r}")
    elif args.command == "check":
        violations = pipeline.check()
        for violation in violations:
            print(violation, file=sys.stderr)
        if violations:
            return EXIT_DATA
        print("ok")
    return EXIT_OK


def cli_main(argv: list[str] | None = None) -> int:
    """Run one CLI command and return its exit code."""
    config = AppConfig()

    try:
        args = parse_arguments(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    # Setup logging
    log_manager = LogManager(Path.cwd() / config.LOGS_DIR, config)
    log_manager.cleanup_old_logs(args.max_log_files)
    log_file_path = log_manager.create_log_file(args.command)
    if args.command == "run":
        configure_tqdm_logging(log_file_path, quiet=args.quiet)
    else:
        configure_console_logging(log_file_path, quiet=args.quiet)

    # The run command's root logger only writes to the log file
    echo = args.command == "run"
    try:
        return execute(args, config)
    except ConfigError as e:
        _report_error(f"Configuration error: {e}", echo)
        return EXIT_USAGE
    except (DataError, OSError) as e:
        _report_error(f"Data error: {e}", echo)
        return EXIT_DATA
    except NonFiniteIterateError as e:
        _report_error(f"Solver error: {e}", echo)
        return EXIT_NON_FINITE
    except KeyboardInterrupt:
        print("\n\nInterrupted by user. Exiting gracefully...", file=sys.stderr)
        return EXIT_OK


def main() -> None:
    """Main entry point for the cofactorization CLI."""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
