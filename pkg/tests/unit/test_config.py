"""
Unit tests for configuration management functionality.
"""

import json
import logging
import os
from unittest.mock import patch

import pytest

from src.config import manager as config_manager
from src.config.defaults import (
    CONFIG_PROFILES,
    apply_configuration_defaults,
    create_profile_config,
    create_test_config,
    get_default_system_config
)
from src.config.logging import LogContext, StructuredLogger, get_logger
from src.config.manager import ConfigManager, get_config_manager, get_system_config
from src.config.models import JoinSettings, LearnConfig, SystemConfig
from src.config.validation import ConfigurationError, ConfigValidator, validate_configuration


class TestConfigManager:
    """Test cases for ConfigManager class."""

    def test_init_default(self):
        """Test config manager initialization with defaults."""
        manager = ConfigManager()
        assert manager.config_dir.name == "config"
        assert manager._system_config is None

    def test_init_custom_dir(self):
        """Test config manager initialization with custom directory."""
        manager = ConfigManager("/custom/config")
        assert str(manager.config_dir) == "/custom/config"

    @patch.dict(os.environ, {
        "MPDICT_THREADS": "2",
        "MPDICT_ROW_BLOCK": "256",
        "MPDICT_CONTEXT_FACTOR": "2.0",
        "MPDICT_LOG_LEVEL": "debug"
    })
    def test_load_configuration_from_env(self, tmp_path):
        """Test loading configuration from environment variables."""
        config = ConfigManager(str(tmp_path)).load_configuration()

        assert isinstance(config, SystemConfig)
        assert config.join_settings.threads == 2
        assert config.join_settings.row_block == 256
        assert config.default_k == 2.0
        assert config.log_level == "DEBUG"

    @patch.dict(os.environ, {"MPDICT_THREADS": "many"})
    def test_invalid_env_value_is_ignored(self, tmp_path):
        """Test unparsable environment values keep the current setting."""
        config = ConfigManager(str(tmp_path)).load_configuration()
        assert config.join_settings.threads == 0

    def test_settings_file(self, tmp_path):
        """Test loading settings from the JSON file in the config directory."""
        (tmp_path / "settings.json").write_text(json.dumps({
            "join_settings": {"threads": 3, "row_block": 128},
            "max_iterations": 500
        }))
        config = ConfigManager(str(tmp_path)).load_configuration()

        assert config.join_settings.threads == 3
        assert config.join_settings.row_block == 128
        assert config.max_iterations == 500

    @patch.dict(os.environ, {"MPDICT_THREADS": "4"})
    def test_environment_overrides_file(self, tmp_path):
        """Test environment values win over the settings file."""
        (tmp_path / "settings.json").write_text(json.dumps({"join_settings": {"threads": 3}}))
        assert ConfigManager(str(tmp_path)).load_configuration().join_settings.threads == 4

    def test_unreadable_settings_file(self, tmp_path):
        """Test a malformed settings file falls back to defaults."""
        (tmp_path / "settings.json").write_text("{not json")
        config = ConfigManager(str(tmp_path)).load_configuration()
        assert config.join_settings.row_block == 1024

    def test_load_configuration_caching(self, tmp_path):
        """Test that configuration is cached after first load."""
        manager = ConfigManager(str(tmp_path))
        assert manager.load_configuration() is manager.load_configuration()

    def test_reload_configuration(self, tmp_path):
        """Test configuration reloading."""
        manager = ConfigManager(str(tmp_path))
        config1 = manager.load_configuration()
        config2 = manager.reload_configuration()

        assert config1 is not config2
        assert isinstance(config2, SystemConfig)


class TestConfigProfiles:
    """Test cases for named base configurations."""

    def test_profile_factories(self):
        """Test every named profile builds a valid configuration of its own."""
        development = create_profile_config("development")
        assert development.log_level == "DEBUG"
        assert development.enable_structured_logging is False

        production = create_profile_config("production")
        assert production.log_level == "INFO"
        assert production.enable_structured_logging is True

        test = create_profile_config("test")
        assert (test.join_settings.threads, test.join_settings.row_block) == (1, 64)

        assert create_profile_config() == get_default_system_config()
        for profile in CONFIG_PROFILES:
            assert validate_configuration(create_profile_config(profile)) == []

    def test_unknown_profile(self):
        """Test an unknown profile name is rejected."""
        with pytest.raises(ValueError):
            create_profile_config("staging")

    def test_manager_uses_profile_as_base(self, tmp_path):
        """Test the settings file overlays the chosen profile."""
        (tmp_path / "settings.json").write_text(json.dumps({"join_settings": {"row_block": 128}}))
        config = ConfigManager(str(tmp_path), profile="development").load_configuration()

        assert config.log_level == "DEBUG"
        assert config.join_settings.row_block == 128

    @patch.dict(os.environ, {"MPDICT_PROFILE": "production"})
    def test_profile_from_environment(self, tmp_path):
        """Test MPDICT_PROFILE selects the profile when none is passed."""
        manager = ConfigManager(str(tmp_path))
        assert manager.profile == "production"
        assert manager.load_configuration().log_level == "INFO"
        assert ConfigManager(str(tmp_path), profile="test").profile == "test"

    @patch.dict(os.environ, {"MPDICT_PROFILE": "staging"})
    def test_unknown_environment_profile_falls_back(self, tmp_path):
        """Test an unknown MPDICT_PROFILE degrades to the defaults."""
        assert ConfigManager(str(tmp_path)).load_configuration() == get_default_system_config()

    def test_global_manager_follows_profile(self, tmp_path, monkeypatch):
        """Test the global manager is rebuilt for a different profile only."""
        monkeypatch.setattr(config_manager, "_config_manager", None)
        first = get_config_manager(str(tmp_path), profile="test")
        assert get_config_manager() is first
        assert get_config_manager(str(tmp_path), profile="test") is first

        second = get_config_manager(str(tmp_path), profile="production")
        assert second is not first
        assert second.load_configuration().log_level == "INFO"


class TestConfigModels:
    """Test cases for configuration data models."""

    def test_learn_config_stop_rules(self):
        """Test exactly one stop rule is required."""
        assert LearnConfig(m=10, space_saving_target=0.9).stop_rule == "space_saving_target"
        assert LearnConfig(m=10, sample_budget=100).stop_rule == "sample_budget"
        assert LearnConfig(m=10, error_target=0.5).stop_rule == "error_target"

        with pytest.raises(ValueError):
            LearnConfig(m=10)
        with pytest.raises(ValueError):
            LearnConfig(m=10, space_saving_target=0.9, sample_budget=100)

    def test_learn_config_ranges(self):
        """Test parameter range checks."""
        with pytest.raises(ValueError):
            LearnConfig(m=1, space_saving_target=0.5)
        with pytest.raises(ValueError):
            LearnConfig(m=10, k=-1.0, space_saving_target=0.5)
        with pytest.raises(ValueError):
            LearnConfig(m=10, space_saving_target=1.0)
        with pytest.raises(ValueError):
            LearnConfig(m=10, error_target=-0.1)

    def test_budget_for(self):
        """Test the stored-sample budget of each rule."""
        assert LearnConfig(m=10, space_saving_target=0.75).budget_for(1000) == pytest.approx(250.0)
        assert LearnConfig(m=10, sample_budget=300).budget_for(1000) == 300.0
        assert LearnConfig(m=10, error_target=1.0).budget_for(1000) is None

    def test_join_settings(self):
        """Test join settings validation."""
        assert JoinSettings().threads == 0
        with pytest.raises(ValueError):
            JoinSettings(threads=-1)
        with pytest.raises(ValueError):
            JoinSettings(row_block=0)

    def test_system_learn_config(self):
        """Test system defaults flow into learn configs."""
        system = SystemConfig(default_k=2.5, max_iterations=77)
        config = system.learn_config(20, sample_budget=200)
        assert config.k == 2.5
        assert config.max_iterations == 77
        assert system.learn_config(20, k=0.5, error_target=1.0).k == 0.5


class TestConfigValidation:
    """Test cases for configuration validation."""

    def test_valid_defaults(self):
        """Test the default configuration validates cleanly."""
        assert validate_configuration(get_default_system_config()) == []
        assert validate_configuration(create_test_config()) == []

    def test_invalid_system_config(self):
        """Test invalid values are reported and raised on request."""
        config = get_default_system_config()
        config.log_level = "LOUD"
        config.max_iterations = 0

        errors = validate_configuration(config)
        assert {error.field for error in errors} == {"log_level", "max_iterations"}
        with pytest.raises(ConfigurationError):
            validate_configuration(config, raise_on_error=True)

    def test_learn_config_against_series(self):
        """Test source-length checks of a learn config."""
        config = LearnConfig(m=50, sample_budget=20)
        fields = {error.field for error in ConfigValidator.validate_learn_config(config, source_length=60)}
        assert fields == {"m", "sample_budget"}

    def test_apply_defaults(self):
        """Test invalid fields are replaced by defaults."""
        config = get_default_system_config()
        config.join_settings.row_block = -5
        config.log_level = "LOUD"
        config = apply_configuration_defaults(config)

        assert config.join_settings.row_block == 1024
        assert config.log_level == "WARNING"


class TestStructuredLogger:
    """Test cases for structured logging."""

    def test_records_are_json_with_context(self, caplog):
        """Test messages carry context and keyword data."""
        logger = StructuredLogger("tests.structured", LogContext(command="learn"))
        with caplog.at_level(logging.INFO, logger="tests.structured"):
            logger.info("Learned", iterations=3)

        record = json.loads(caplog.records[-1].getMessage())
        assert record["message"] == "Learned"
        assert record["context"] == {"command": "learn"}
        assert record["iterations"] == 3

    def test_timed_operation_reports_failure(self, caplog):
        """Test a failing timed operation logs a failed status and re-raises."""
        logger = get_logger("tests.timed")
        with caplog.at_level(logging.DEBUG, logger="tests.timed"):
            with pytest.raises(RuntimeError):
                with logger.timed_operation("join"):
                    raise RuntimeError("boom")

        record = json.loads(caplog.records[-1].getMessage())
        assert record["message"] == "Operation join failed"
        assert record["success"] is False
        assert record["error"] == "boom"

    def test_error_details(self, caplog):
        """Test errors attach their type and details."""
        from src.errors import SeriesTooShort

        logger = get_logger("tests.errors")
        with caplog.at_level(logging.ERROR, logger="tests.errors"):
            logger.error("Failed", error=SeriesTooShort("short", details={"n": 3}))

        record = json.loads(caplog.records[-1].getMessage())
        assert record["error"]["type"] == "SeriesTooShort"
        assert record["error"]["details"] == {"n": 3}


class TestGlobalConfigFunctions:
    """Test cases for global configuration functions."""

    def test_get_config_manager_singleton(self):
        """Test that get_config_manager returns singleton instance."""
        manager1 = get_config_manager()
        manager2 = get_config_manager()

        assert manager1 is manager2
        assert isinstance(manager1, ConfigManager)

    def test_get_system_config(self):
        """Test get_system_config function."""
        config = get_system_config()

        assert isinstance(config, SystemConfig)
        assert isinstance(config.join_settings, JoinSettings)

    def test_timed_operation_logs_outcome(self, caplog):
        """Test fields set inside the block are logged with the duration."""
        logger = get_logger("tests.outcome")
        with caplog.at_level(logging.INFO, logger="tests.outcome"):
            with logger.timed_operation("learn", m=8) as outcome:
                outcome["iterations"] = 4

        record = json.loads(caplog.records[-1].getMessage())
        assert record["message"] == "Operation learn completed"
        assert record["m"] == 8
        assert record["iterations"] == 4
        assert record["duration_ms"] >= 0.0

    def test_bind_leaves_parent_context(self, caplog):
        """Test a bound logger adds context without changing its parent."""
        parent = StructuredLogger("tests.bind", LogContext(component="cli"))
        child = parent.bind(command="join", window=16, unknown="ignored")
        with caplog.at_level(logging.INFO, logger="tests.bind"):
            child.info("Joined")

        record = json.loads(caplog.records[-1].getMessage())
        assert record["context"] == {"command": "join", "component": "cli", "window": 16}
        assert parent.context.command is None
