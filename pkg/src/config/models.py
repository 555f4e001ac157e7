"""
Configuration data models for the matrix-profile dictionary toolkit.

This module defines the core configuration structures: dictionary learning
parameters, exact-join execution settings, and the overall system settings.
"""

from dataclasses import dataclass, field
from typing import Optional


STOP_SPACE_SAVING = "space_saving_target"
STOP_SAMPLE_BUDGET = "sample_budget"
STOP_ERROR_TARGET = "error_target"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class LearnConfig:
    """Parameters of one dictionary-learning run."""

    m: int
    k: float = 1.5
    space_saving_target: Optional[float] = None
    sample_budget: Optional[int] = None
    error_target: Optional[float] = None
    max_iterations: int = 10000

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.m < 2:
            raise ValueError("Window length m must be at least 2")
        if self.k < 0:
            raise ValueError("Context factor k must be non-negative")
        rules = [
            rule for rule in (self.space_saving_target, self.sample_budget, self.error_target)
            if rule is not None
        ]
        if len(rules) != 1:
            raise ValueError("Exactly one stop rule must be set")
        if self.space_saving_target is not None and not (0.0 <= self.space_saving_target < 1.0):
            raise ValueError("Space saving target must be in [0, 1)")
        if self.sample_budget is not None and self.sample_budget <= 0:
            raise ValueError("Sample budget must be positive")
        if self.error_target is not None and self.error_target < 0:
            raise ValueError("Error target must be non-negative")
        if self.max_iterations <= 0:
            raise ValueError("Max iterations must be positive")

    @property
    def stop_rule(self) -> str:
        """Name of the active stop rule."""
        if self.space_saving_target is not None:
            return STOP_SPACE_SAVING
        if self.sample_budget is not None:
            return STOP_SAMPLE_BUDGET
        return STOP_ERROR_TARGET

    def budget_for(self, source_length: int) -> Optional[float]:
        """Stored-sample budget for a source of the given length (None for the error rule)."""
        if self.space_saving_target is not None:
            return (1.0 - self.space_saving_target) * source_length
        if self.sample_budget is not None:
            return float(self.sample_budget)
        return None


@dataclass
class JoinSettings:
    """Execution settings for the exact join kernels."""

    threads: int = 0  # 0 = every thread numba was started with
    row_block: int = 1024

    def __post_init__(self):
        """Validate join settings."""
        if self.threads < 0:
            raise ValueError("Thread count must be non-negative")
        if self.row_block <= 0:
            raise ValueError("Row block must be positive")


@dataclass
class SystemConfig:
    """Overall system configuration combining all settings."""

    join_settings: JoinSettings = field(default_factory=JoinSettings)

    # Learning defaults
    default_k: float = 1.5
    max_iterations: int = 10000

    enable_structured_logging: bool = True
    log_level: str = "WARNING"

    def learn_config(self, m: int, **stop_rule) -> LearnConfig:
        """Build a LearnConfig from system defaults plus one stop rule."""
        params = {"k": self.default_k, "max_iterations": self.max_iterations}
        params.update(stop_rule)
        return LearnConfig(m=m, **params)
