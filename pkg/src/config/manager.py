"""
Layered configuration: the base profile (default, development, production or
test), then <config_dir>/settings.json, then MPDICT_* environment variables.
Command-line flags override the result.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .defaults import apply_configuration_defaults, create_profile_config, get_default_system_config
from .logging import get_logger
from .models import SystemConfig
from .validation import validate_configuration


logger = get_logger(__name__)


class ConfigManager:
    """Builds and caches the SystemConfig for one configuration directory."""

    SETTINGS_FILE = "settings.json"

    def __init__(self, config_dir: Optional[str] = None, profile: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_dir: Optional directory path for configuration files
            profile: Base profile name (MPDICT_PROFILE, then "default", when omitted)
        """
        self.config_dir = Path(config_dir) if config_dir else Path("config")
        self.profile = profile or os.getenv("MPDICT_PROFILE") or "default"
        self._system_config: Optional[SystemConfig] = None

    def load_configuration(self) -> SystemConfig:
        """
        Load complete system configuration from all sources.

        Returns:
            SystemConfig object with all loaded settings
        """
        if self._system_config is None:
            self._system_config = self._build_system_config()
        return self._system_config

    def _build_system_config(self) -> SystemConfig:
        """Build system configuration from the profile, the settings file and the environment."""
        try:
            system_config = create_profile_config(self.profile)

            file_config = self._load_settings_file()
            if file_config:
                self._update_from_dict(system_config, file_config)

            self._apply_environment_overrides(system_config)

            system_config = apply_configuration_defaults(system_config)

            validation_errors = validate_configuration(system_config, raise_on_error=False)
            if validation_errors:
                logger.warning(
                    "Configuration validation warnings",
                    issue_count=len(validation_errors),
                    issues=[str(error) for error in validation_errors[:5]]
                )

            return system_config

        except (TypeError, ValueError) as e:
            logger.warning("Configuration loading failed, using defaults", profile=self.profile, error=str(e))
            return get_default_system_config()

    def _load_settings_file(self) -> Dict[str, Any]:
        """Load the optional JSON settings file."""
        settings_file = self.config_dir / self.SETTINGS_FILE
        if not settings_file.exists():
            return {}
        try:
            with open(settings_file, "r") as f:
                data = json.load(f)
        except (json.JSONDecodeError, IOError):
            logger.warning("Ignoring unreadable settings file", path=str(settings_file))
            return {}
        return data if isinstance(data, dict) else {}

    def _update_from_dict(self, config: SystemConfig, config_dict: Dict[str, Any]) -> None:
        """Update system configuration from dictionary data."""
        join = config_dict.get("join_settings", {})
        if isinstance(join, dict):
            if "threads" in join:
                config.join_settings.threads = int(join["threads"])
            if "row_block" in join:
                config.join_settings.row_block = int(join["row_block"])
        if "default_k" in config_dict:
            config.default_k = float(config_dict["default_k"])
        if "max_iterations" in config_dict:
            config.max_iterations = int(config_dict["max_iterations"])
        if "log_level" in config_dict:
            config.log_level = str(config_dict["log_level"]).upper()
        if "enable_structured_logging" in config_dict:
            config.enable_structured_logging = bool(config_dict["enable_structured_logging"])

    def _apply_environment_overrides(self, config: SystemConfig) -> None:
        """Apply environment-variable overrides."""
        if threads := os.getenv("MPDICT_THREADS"):
            try:
                config.join_settings.threads = int(threads)
            except ValueError:
                pass  # Keep current value

        if row_block := os.getenv("MPDICT_ROW_BLOCK"):
            try:
                config.join_settings.row_block = int(row_block)
            except ValueError:
                pass

        if k := os.getenv("MPDICT_CONTEXT_FACTOR"):
            try:
                config.default_k = float(k)
            except ValueError:
                pass

        if max_iterations := os.getenv("MPDICT_MAX_ITERATIONS"):
            try:
                config.max_iterations = int(max_iterations)
            except ValueError:
                pass

        if log_level := os.getenv("MPDICT_LOG_LEVEL"):
            config.log_level = log_level.upper()

        if structured := os.getenv("MPDICT_STRUCTURED_LOGS"):
            config.enable_structured_logging = structured.lower() in ("true", "1", "yes")

    def reload_configuration(self) -> SystemConfig:
        """Force reload of configuration from all sources."""
        self._system_config = None
        return self.load_configuration()


# Global configuration manager instance
_config_manager: Optional[ConfigManager] = None


def get_config_manager(config_dir: Optional[str] = None, profile: Optional[str] = None) -> ConfigManager:
    """Get the global configuration manager instance (rebuilt when the directory or profile changes)."""
    global _config_manager
    if (
        _config_manager is None
        or (config_dir is not None and Path(config_dir) != _config_manager.config_dir)
        or (profile is not None and profile != _config_manager.profile)
    ):
        _config_manager = ConfigManager(config_dir, profile)
    return _config_manager


def get_system_config() -> SystemConfig:
    """Get the current system configuration."""
    return get_config_manager().load_configuration()
