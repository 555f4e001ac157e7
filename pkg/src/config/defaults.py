"""
Default settings and the per-profile configuration factories.
"""

from .models import LOG_LEVELS, JoinSettings, SystemConfig


DEFAULT_ROW_BLOCK = 1024
DEFAULT_CONTEXT_FACTOR = 1.5
DEFAULT_MAX_ITERATIONS = 10000
DEFAULT_LOG_LEVEL = "WARNING"


def get_default_join_settings() -> JoinSettings:
    """All numba threads, 1024-row blocks."""
    return JoinSettings(threads=0, row_block=DEFAULT_ROW_BLOCK)


def get_default_system_config() -> SystemConfig:
    return SystemConfig(
        join_settings=get_default_join_settings(),
        default_k=DEFAULT_CONTEXT_FACTOR,
        max_iterations=DEFAULT_MAX_ITERATIONS,
        enable_structured_logging=True,
        log_level=DEFAULT_LOG_LEVEL
    )


def apply_configuration_defaults(config: SystemConfig) -> SystemConfig:
    """
    Replace out-of-range fields with their defaults, in place.

    Used after the environment overlay so a bad MPDICT_* value degrades to the
    default instead of failing every command.
    """
    join = config.join_settings
    if join.threads < 0:
        join.threads = 0
    if join.row_block <= 0:
        join.row_block = DEFAULT_ROW_BLOCK

    if config.default_k < 0:
        config.default_k = DEFAULT_CONTEXT_FACTOR
    if config.max_iterations <= 0:
        config.max_iterations = DEFAULT_MAX_ITERATIONS
    if config.log_level not in LOG_LEVELS:
        config.log_level = DEFAULT_LOG_LEVEL
    return config


def create_development_config() -> SystemConfig:
    """Verbose text logs for interactive runs."""
    config = get_default_system_config()
    config.log_level = "DEBUG"
    config.enable_structured_logging = False
    return config


def create_production_config() -> SystemConfig:
    """INFO-level JSON logs for batch experiments."""
    config = get_default_system_config()
    config.log_level = "INFO"
    return config


def create_test_config() -> SystemConfig:
    """Single-threaded, small row blocks, quiet logs."""
    config = get_default_system_config()
    config.join_settings.threads = 1
    config.join_settings.row_block = 64  # several blocks even on short inputs
    config.max_iterations = 2000
    config.log_level = "CRITICAL"
    return config


CONFIG_PROFILES = ("default", "development", "production", "test")


def create_profile_config(profile: str = "default") -> SystemConfig:
    """
    Base configuration of a named profile, before the settings file and
    environment overlays are applied.

    Raises:
        ValueError: unknown profile name
    """
    factories = {
        "default": get_default_system_config,
        "development": create_development_config,
        "production": create_production_config,
        "test": create_test_config
    }
    if profile not in factories:
        raise ValueError(f"Unknown configuration profile {profile!r}; expected one of {CONFIG_PROFILES}")
    return factories[profile]()
