"""Command-line interface argument parsing."""

import argparse

from src.config import AppConfig


def _add_config_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        type=str,
        default=None,
        help="Run configuration file (one 'key = value' per line). Missing keys take their defaults.",
    )


def build_parser() -> argparse.ArgumentParser:
    config = AppConfig()

    parser = argparse.ArgumentParser(
        prog="cofact",
        description="Joint spectral unmixing, clustering and classification by cofactorization.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Synth command
    synth_parser = subparsers.add_parser(
        "synth", help="Generate a synthetic scene into the data directory."
    )
    _add_config_option(synth_parser)
    synth_parser.add_argument(
        "--csv", action="store_true", help="Also write a .csv copy of every matrix."
    )

    # Run command
    run_parser = subparsers.add_parser(
        "run", help="Initialize and solve, writing H, B, Z, Q, C, W, the classification and the trace."
    )
    _add_config_option(run_parser)
    run_parser.add_argument(
        "--csv", action="store_true", help="Also write a .csv copy of every matrix."
    )
    run_parser.add_argument(
        "--output-dir", type=str, default=None, help="Directory for the solver results."
    )
    run_parser.add_argument(
        "--progress",
        action="store_true",
        help="Show a progress bar over the solver iterations.",
    )

    # Eval command
    eval_parser = subparsers.add_parser(
        "eval", help="Print kappa, f1_mean, overall_accuracy, re and rmse of a run."
    )
    _add_config_option(eval_parser)
    eval_parser.add_argument(
        "--output-dir", type=str, default=None, help="Directory holding the solver results."
    )

    # Check command
    check_parser = subparsers.add_parser(
        "check", help="Validate the input files of the data directory."
    )
    _add_config_option(check_parser)

    # Global arguments
    parser.add_argument(
        "--data-dir",
        type=str,
        default=None,
        help=f"Directory holding the scene files (default: {config.DATA_DIR}).",
    )
    parser.add_argument(
        "--max-log-files",
        type=int,
        default=config.MAX_LOG_FILES,
        help="Maximum number of log files to retain. Oldest log files will be deleted to maintain this limit.",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="Only show warnings and errors on the console."
    )
    return parser


def parse_arguments(argv: list[str] | None = None) -> argparse.Namespace:
    """
    Parse command-line arguments for the cofactorization CLI.

    Returns:
        Parsed arguments namespace
    """
    return build_parser().parse_args(argv)
