"""
Range checks for learning parameters, join settings and system configuration.

Validators collect every problem instead of stopping at the first, so a bad
settings file is reported in one pass.
"""

from typing import Any, List

from .models import LOG_LEVELS, JoinSettings, LearnConfig, SystemConfig


class ConfigurationError(Exception):
    """Base exception for configuration-related errors."""
    pass


class ValidationError(ConfigurationError):
    """Exception raised when configuration validation fails."""

    def __init__(self, field: str, message: str, value: Any = None):
        self.field = field
        self.message = message
        self.value = value
        super().__init__(f"Validation error for '{field}': {message}")


class ConfigValidator:
    """Static checks returning a (possibly empty) list of ValidationError."""

    @staticmethod
    def validate_learn_config(config: LearnConfig, source_length: int = None) -> List[ValidationError]:
        """
        Validate a LearnConfig, optionally against the series it will run on.

        Args:
            config: LearnConfig to validate
            source_length: Length of T_B, when known

        Returns:
            List of validation errors (empty if valid)
        """
        errors = []

        if config.m < 2:
            errors.append(ValidationError("m", "Window length must be at least 2", config.m))

        if config.k < 0:
            errors.append(ValidationError("k", "Context factor must be non-negative", config.k))
        elif config.k > 10:
            errors.append(ValidationError("k", "Context factor should not exceed 10", config.k))

        rules = [
            name for name in ("space_saving_target", "sample_budget", "error_target")
            if getattr(config, name) is not None
        ]
        if len(rules) != 1:
            errors.append(ValidationError("stop_rule", "Exactly one stop rule must be set", rules))

        if source_length is not None:
            if source_length < 2 * config.m:
                errors.append(ValidationError(
                    "m", "Series must hold at least 2m samples", source_length
                ))
            if config.sample_budget is not None and config.sample_budget < config.m:
                errors.append(ValidationError(
                    "sample_budget", "Budget below one window stores nothing useful",
                    config.sample_budget
                ))

        return errors

    @staticmethod
    def validate_join_settings(settings: JoinSettings) -> List[ValidationError]:
        """Thread count and row block bounds."""
        errors = []

        if settings.threads < 0:
            errors.append(ValidationError("threads", "Thread count must be non-negative", settings.threads))

        if settings.row_block <= 0:
            errors.append(ValidationError("row_block", "Row block must be positive", settings.row_block))
        elif settings.row_block > 1 << 20:
            errors.append(ValidationError("row_block", "Row block should not exceed 2^20", settings.row_block))

        return errors

    @staticmethod
    def validate_system_config(config: SystemConfig) -> List[ValidationError]:
        """Join settings (fields prefixed with join_settings.) plus the top-level values."""
        errors = []

        for error in ConfigValidator.validate_join_settings(config.join_settings):
            errors.append(ValidationError(f"join_settings.{error.field}", error.message, error.value))

        if config.default_k < 0:
            errors.append(ValidationError("default_k", "Context factor must be non-negative", config.default_k))

        if config.max_iterations <= 0:
            errors.append(ValidationError("max_iterations", "Max iterations must be positive", config.max_iterations))

        if config.log_level not in LOG_LEVELS:
            errors.append(ValidationError("log_level", "Invalid log level", config.log_level))

        return errors


def validate_configuration(config: SystemConfig, raise_on_error: bool = False) -> List[ValidationError]:
    """
    Validate a complete system configuration.

    Args:
        config: SystemConfig to validate
        raise_on_error: If True, raise ConfigurationError on validation failure

    Returns:
        List of validation errors (empty if valid)

    Raises:
        ConfigurationError: If validation fails and raise_on_error is True
    """
    errors = ConfigValidator.validate_system_config(config)

    if errors and raise_on_error:
        raise ConfigurationError("Invalid configuration:\n" + "\n".join(f"  {error}" for error in errors))

    return errors
