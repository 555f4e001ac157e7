"""
Configuration management module for the matrix-profile toolkit.

This module provides configuration management capabilities including:
- Dictionary learning parameters and stop rules
- Exact-join execution settings (threads, row blocks)
- Environment variable and file-based configuration loading
- Configuration validation and defaults
- Structured logging
"""

from .models import LearnConfig, JoinSettings, SystemConfig
from .manager import ConfigManager, get_config_manager, get_system_config
from .validation import (
    ConfigValidator,
    ValidationError,
    ConfigurationError,
    validate_configuration
)
from .defaults import (
    get_default_join_settings,
    get_default_system_config,
    apply_configuration_defaults,
    create_development_config,
    create_production_config,
    create_test_config,
    create_profile_config,
    CONFIG_PROFILES
)
from .logging import LogContext, StructuredLogger, configure_logging, get_logger

__all__ = [
    # Data models
    "LearnConfig",
    "JoinSettings",
    "SystemConfig",

    # Configuration manager
    "ConfigManager",
    "get_config_manager",
    "get_system_config",

    # Validation
    "ConfigValidator",
    "ValidationError",
    "ConfigurationError",
    "validate_configuration",

    # Defaults
    "get_default_join_settings",
    "get_default_system_config",
    "apply_configuration_defaults",
    "create_development_config",
    "create_production_config",
    "create_test_config",
    "create_profile_config",
    "CONFIG_PROFILES",

    # Logging
    "LogContext",
    "StructuredLogger",
    "configure_logging",
    "get_logger"
]
