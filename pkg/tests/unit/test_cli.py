"""
Unit tests for the command-line surface: argument handling and exit codes.
"""

import numpy as np
import pytest

from src.cli import build_parser, main
from src.config import manager as config_manager
from src.errors import EXIT_CONTRACT, EXIT_DATA, EXIT_OK, EXIT_USAGE, UsageError
from src.formats.series_file import write_series


@pytest.fixture
def walk_file(tmp_path):
    path = tmp_path / "walk.txt"
    write_series(np.cumsum(np.random.default_rng(12).standard_normal(400)), path)
    return path


class TestParser:
    """Test cases for argument parsing."""

    def test_learn_requires_one_stop_rule(self):
        """Test the stop rules are mutually exclusive and required."""
        parser = build_parser()
        with pytest.raises(UsageError):
            parser.parse_args(["learn", "s.txt", "--m", "10"])
        with pytest.raises(UsageError):
            parser.parse_args(["learn", "s.txt", "--m", "10", "--space-saving", "0.9", "--sample-budget", "5"])

        args = parser.parse_args(["learn", "s.txt", "--m", "10", "--error-target", "0.5", "--threads", "1"])
        assert args.error_target == 0.5
        assert args.threads == 1

    def test_invalid_window(self):
        """Test m below 2 is a usage error."""
        with pytest.raises(UsageError):
            build_parser().parse_args(["self-join", "s.txt", "--m", "1"])

    def test_space_savings_list(self):
        """Test the bench space-saving list parser."""
        args = build_parser().parse_args(["bench", "--m", "16", "--space-savings", "0.5,0.75"])
        assert args.space_savings == [0.5, 0.75]
        with pytest.raises(UsageError):
            build_parser().parse_args(["bench", "--m", "16", "--space-savings", "0.5,1.5"])

    def test_profile_choices(self):
        """Test --profile accepts the known profiles only."""
        args = build_parser().parse_args(["self-join", "s.txt", "--m", "8", "--profile", "production"])
        assert args.profile == "production"
        with pytest.raises(UsageError):
            build_parser().parse_args(["self-join", "s.txt", "--m", "8", "--profile", "staging"])


class TestExitCodes:
    """Test cases for exit codes of main()."""

    def test_unknown_command(self, capsys):
        """Test a bad command exits with the usage code."""
        assert main(["transmogrify"]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("error: UsageError")

    def test_missing_file(self, tmp_path, capsys):
        """Test an unreadable input file is a data error."""
        assert main(["self-join", str(tmp_path / "missing.txt"), "--m", "8"]) == EXIT_DATA

    def test_malformed_series(self, tmp_path, capsys):
        """Test a malformed series file is a data error."""
        path = tmp_path / "bad.txt"
        path.write_text("1.0\nnot-a-number\n")
        assert main(["self-join", str(path), "--m", "2"]) == EXIT_DATA
        assert "line 2" in capsys.readouterr().err

    def test_series_too_short(self, tmp_path, capsys):
        """Test a self-join on a series shorter than 2m is a data error."""
        path = tmp_path / "short.txt"
        write_series(np.arange(10.0), path)
        assert main(["self-join", str(path), "--m", "8"]) == EXIT_DATA

    def test_learn_without_output(self, walk_file, capsys):
        """Test learn insists on an output path."""
        assert main(["learn", str(walk_file), "--m", "20", "--space-saving", "0.9"]) == EXIT_USAGE

    def test_invalid_stop_value(self, walk_file, tmp_path, capsys):
        """Test an out-of-range space saving is a usage error."""
        code = main(["learn", str(walk_file), "--m", "20", "--space-saving", "1.5", "-o", str(tmp_path / "d.json")])
        assert code == EXIT_USAGE

    def test_exhausted_learning(self, tmp_path, capsys):
        """Test running out of candidates before the budget is a contract error."""
        path = tmp_path / "noise.txt"
        write_series(np.random.default_rng(2).standard_normal(200), path)
        code = main([
            "learn", str(path), "--m", "20", "--k", "0", "--sample-budget", "5000",
            "--threads", "1", "-o", str(tmp_path / "d.json")
        ])
        assert code == EXIT_CONTRACT
        assert "NoProgress" in capsys.readouterr().err

    def test_self_join_to_stdout(self, walk_file, capsys):
        """Test a successful self-join writes the profile to standard output."""
        assert main(["self-join", str(walk_file), "--m", "16", "--threads", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "# m=16,kind=self-join"
        assert len(lines) == 2 + 400 - 16 + 1

    def test_profile_selects_base_configuration(self, walk_file, tmp_path, monkeypatch, capsys):
        """Test --profile picks the base configuration the command runs with."""
        monkeypatch.setattr(config_manager, "_config_manager", None)
        argv = ["self-join", str(walk_file), "--m", "16", "--config-dir", str(tmp_path), "--profile", "test"]
        assert main(argv) == EXIT_OK

        manager = config_manager.get_config_manager()
        assert manager.profile == "test"
        assert manager.load_configuration().join_settings.threads == 1
        assert manager.load_configuration().log_level == "CRITICAL"

    def test_generate_requires_output(self, capsys):
        """Test generate insists on an output path."""
        assert main(["generate", "noise", "--n", "100"]) == EXIT_USAGE
