"""
Command-line entry point for the matrix-profile dictionary toolkit.

Tables and profile files go to standard output (or ``--output``); structured
logs go to standard error. Exit codes: 0 success, 1 usage error, 2 data
error, 3 numerical or contract error.
"""

import argparse
import sys
from dataclasses import replace
from typing import List, Optional, Sequence

import pandas as pd

from .config.logging import LogContext, configure_logging, get_logger
from .config.defaults import CONFIG_PROFILES
from .config.manager import get_config_manager
from .config.models import LOG_LEVELS, JoinSettings, SystemConfig
from .dictionary.learner import learn_dictionary, require_stop_rule
from .errors import EXIT_OK, UsageError, classify_error
from .experiments.bench import run_bench
from .experiments.quality import compare_with_random_baseline
from .experiments.synthetic import GENERATORS, generate, make_rng, random_walk
from .formats.dictionary_file import read_dictionary, write_dictionary
from .formats.label_file import read_labels, write_labels
from .formats.profile_file import write_profile
from .formats.series_file import read_series, write_series
from .formats.tables import write_table
from .join.dict_join import join_dictionary
from .join.discords import detect_anomalies
from .profiles.joins import ab_join, self_join


logger = get_logger(__name__, LogContext(component="cli"))


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message, details={"usage": self.format_usage().strip()})


def _window(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid window length: {text!r}")
    if value < 2:
        raise argparse.ArgumentTypeError("window length must be at least 2")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("value must be non-negative")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("value must be positive")
    return value


def _fractions(text: str) -> List[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid list of space savings: {text!r}")
    if not values or any(not 0.0 <= v < 1.0 for v in values):
        raise argparse.ArgumentTypeError("space savings must lie in [0, 1)")
    return values


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_non_negative_int, default=argparse.SUPPRESS,
                        help="worker threads for exact joins (0 = all)")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=argparse.SUPPRESS,
                        help="log level for standard error")
    common.add_argument("--config-dir", default=argparse.SUPPRESS,
                        help="directory holding settings.json")
    common.add_argument("--profile", choices=CONFIG_PROFILES, default=argparse.SUPPRESS,
                        help="base configuration profile (default: MPDICT_PROFILE or default)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for synthetic data and random baselines")
    return common


def build_parser() -> ArgumentParser:
    """Build the argument parser with every subcommand."""
    common = _common_options()
    parser = ArgumentParser(
        prog="mpdict",
        description="Exact and dictionary-approximated matrix profiles.",
        parents=[common]
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def command(name: str, help_text: str) -> ArgumentParser:
        sub = commands.add_parser(name, help=help_text, parents=[common])
        sub.add_argument("-o", "--output", default=None, help="output path (default: standard output)")
        return sub

    sub = command("self-join", "exact self-join matrix profile")
    sub.add_argument("series")
    sub.add_argument("--m", type=_window, required=True)
    sub.set_defaults(handler=cmd_self_join)

    sub = command("exact-join", "exact AB-join matrix profile")
    sub.add_argument("series_a")
    sub.add_argument("series_b")
    sub.add_argument("--m", type=_window, required=True)
    sub.set_defaults(handler=cmd_exact_join)

    sub = command("learn", "learn a dictionary from a source series")
    sub.add_argument("series")
    sub.add_argument("--m", type=_window, required=True)
    sub.add_argument("--k", type=float, default=None, help="context factor (default from configuration)")
    stop = sub.add_mutually_exclusive_group(required=True)
    stop.add_argument("--space-saving", type=float, dest="space_saving_target")
    stop.add_argument("--sample-budget", type=_positive_int, dest="sample_budget")
    stop.add_argument("--error-target", type=float, dest="error_target")
    sub.set_defaults(handler=cmd_learn)

    sub = command("join", "approximate AB-join against a dictionary")
    sub.add_argument("series_a")
    sub.add_argument("dictionary")
    sub.add_argument("--m", type=_window, default=None, help="must equal the dictionary's m")
    sub.set_defaults(handler=cmd_join)

    sub = command("detect", "anomaly scores and certified discords")
    sub.add_argument("series_a")
    sub.add_argument("dictionary")
    sub.add_argument("--labels", default=None, help="label file of anomalous regions for AUC")
    sub.add_argument("--top-k", type=_positive_int, default=1)
    sub.add_argument("--scores", default=None, help="also write the score profile here")
    sub.set_defaults(handler=cmd_detect)

    sub = command("bench", "dictionary join vs exact join at several space savings")
    sub.add_argument("series_a", nargs="?", default=None)
    sub.add_argument("series_b", nargs="?", default=None)
    sub.add_argument("--m", type=_window, required=True)
    sub.add_argument("--space-savings", type=_fractions, default=[0.5, 0.9, 0.99])
    sub.add_argument("--k", type=float, default=None)
    sub.add_argument("--length-a", type=_positive_int, default=4096,
                     help="random-walk length of T_A when no series is given")
    sub.add_argument("--length-b", type=_positive_int, default=8192,
                     help="random-walk length of T_B when no series is given")
    sub.set_defaults(handler=cmd_bench)

    sub = command("summarize", "table of dictionary cores")
    sub.add_argument("dictionary")
    sub.set_defaults(handler=cmd_summarize)

    sub = command("generate", "write a seeded synthetic series")
    sub.add_argument("kind", choices=GENERATORS)
    sub.add_argument("--n", type=_positive_int, required=True)
    sub.add_argument("--m", type=_window, default=100, help="template length or beat period")
    sub.add_argument("--binary", action="store_true")
    sub.add_argument("--labels", default=None, help="write anomalous regions here (anomaly-ecg)")
    sub.set_defaults(handler=cmd_generate)

    sub = command("quality", "greedy vs random dictionary quality experiment")
    sub.add_argument("--trials", type=_positive_int, default=50)
    sub.add_argument("--m", type=_window, default=50)
    sub.add_argument("--k", type=float, default=None)
    sub.set_defaults(handler=cmd_quality)

    return parser


def _settings(args: argparse.Namespace, config: SystemConfig) -> JoinSettings:
    threads = getattr(args, "threads", None)
    if threads is None:
        return config.join_settings
    return replace(config.join_settings, threads=threads)


def _context_factor(args: argparse.Namespace, config: SystemConfig) -> float:
    return config.default_k if args.k is None else args.k


def cmd_self_join(args: argparse.Namespace, config: SystemConfig) -> int:
    profile = self_join(read_series(args.series), args.m, _settings(args, config))
    write_profile(profile, args.output)
    return EXIT_OK


def cmd_exact_join(args: argparse.Namespace, config: SystemConfig) -> int:
    profile = ab_join(read_series(args.series_a), read_series(args.series_b), args.m, _settings(args, config))
    write_profile(profile, args.output)
    return EXIT_OK


def cmd_learn(args: argparse.Namespace, config: SystemConfig) -> int:
    if args.output is None:
        raise UsageError("learn needs --output for the dictionary file")

    stop_rule = {
        name: getattr(args, name)
        for name in ("space_saving_target", "sample_budget", "error_target")
        if getattr(args, name) is not None
    }
    try:
        learn_config = config.learn_config(args.m, k=_context_factor(args, config), **stop_rule)
    except ValueError as e:
        raise UsageError(str(e)) from e

    series = read_series(args.series)
    dictionary = require_stop_rule(learn_dictionary(series, learn_config, _settings(args, config)), learn_config)
    write_dictionary(dictionary, args.output)
    write_table(pd.DataFrame([{
        "stored_samples": dictionary.stored_samples,
        "space_saving": dictionary.space_saving,
        "e_max": dictionary.e_max,
        "segments": len(dictionary.segments),
        "iterations": dictionary.iterations,
        "stop_reason": dictionary.stop_reason
    }]))
    return EXIT_OK


def cmd_join(args: argparse.Namespace, config: SystemConfig) -> int:
    dictionary = read_dictionary(args.dictionary)
    profile = join_dictionary(read_series(args.series_a), dictionary, args.m, _settings(args, config))
    write_profile(profile, args.output)
    return EXIT_OK


def cmd_detect(args: argparse.Namespace, config: SystemConfig) -> int:
    series = read_series(args.series_a)
    dictionary = read_dictionary(args.dictionary)
    regions = read_labels(args.labels, n=series.n) if args.labels else None
    report = detect_anomalies(series, dictionary, args.top_k, regions, _settings(args, config))

    if args.scores:
        write_profile(report.scores, args.scores)
    write_table(report.to_frame(), args.output)
    if report.auc is not None:
        line = f"# auc={report.auc!r}\n"
        if args.output is None or args.output == "-":
            sys.stdout.write(line)
        else:
            with open(args.output, "a", encoding="utf-8") as handle:
                handle.write(line)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, config: SystemConfig) -> int:
    if (args.series_a is None) != (args.series_b is None):
        raise UsageError("bench needs both series files or neither")
    if args.series_a is None:
        rng = make_rng(getattr(args, "seed", None))
        series_a = random_walk(args.length_a, rng)
        series_b = random_walk(args.length_b, rng)
    else:
        series_a = read_series(args.series_a)
        series_b = read_series(args.series_b)

    table = run_bench(
        series_a, series_b, args.m, args.space_savings,
        k=_context_factor(args, config), settings=_settings(args, config)
    )
    write_table(table, args.output)
    return EXIT_OK


def cmd_summarize(args: argparse.Namespace, config: SystemConfig) -> int:
    dictionary = read_dictionary(args.dictionary)
    frame = pd.DataFrame(
        dictionary.summary(),
        columns=["iteration", "core_start", "segment_start", "segment_stop", "nearest_core_distance"]
    )
    frame.insert(3, "segment_length", frame["segment_stop"] - frame["segment_start"])
    write_table(frame, args.output)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: SystemConfig) -> int:
    if args.output is None:
        raise UsageError("generate needs --output for the series file")
    labeled = generate(args.kind, args.n, make_rng(getattr(args, "seed", None)), m=args.m)
    write_series(labeled.values, args.output, binary=args.binary)
    if args.labels:
        write_labels(labeled.regions, args.labels)
    return EXIT_OK


def cmd_quality(args: argparse.Namespace, config: SystemConfig) -> int:
    result = compare_with_random_baseline(
        args.trials,
        seed=getattr(args, "seed", None),
        m=args.m,
        k=_context_factor(args, config),
        settings=_settings(args, config)
    )
    write_table(result.table, args.output)
    line = f"# greedy_mean={result.greedy_mean!r},random_mean={result.random_mean!r},p_value={result.p_value!r}\n"
    if args.output is None or args.output == "-":
        sys.stdout.write(line)
    else:
        with open(args.output, "a", encoding="utf-8") as handle:
            handle.write(line)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:])

    Returns:
        Process exit code
    """
    run_logger = logger
    try:
        args = build_parser().parse_args(argv)
        config = get_config_manager(
            getattr(args, "config_dir", None), getattr(args, "profile", None)
        ).load_configuration()
        configure_logging(
            getattr(args, "log_level", None) or config.log_level,
            config.enable_structured_logging
        )
        run_logger = logger.bind(command=args.command, window=getattr(args, "m", None))

        with run_logger.timed_operation(args.command):
            return args.handler(args, config)

    except Exception as e:
        code = classify_error(e)
        run_logger.error("Command failed", error=e, exit_code=code)
        sys.stderr.write(f"error: {getattr(e, 'error_type', type(e).__name__)}: {e}\n")
        return code
