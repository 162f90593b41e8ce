"""Configuration management for the Hume workbench.

This module holds every tunable of the workbench: output format, search limits,
root-refinement caps and the settings of the optional HTTP surface. Values come from
environment variables (prefix ``HUME_``) or a ``.env`` file and are validated by pydantic.
"""

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Base directory of the project
BASE_DIR = Path(__file__).parent.parent


class Settings(BaseSettings):
    """Application settings and configuration.

    Attributes:
        log_level: Logging level
        output_format: Default report format of the command line front end
        default_seed: Seed used by random generators when none is given
        refinement_iteration_cap: Maximum bisection steps when refining an algebraic number
        collision_scan_limit: Number of rational values tried when looking for a collision
        exhaustive_universe_limit: Largest universe handled by exhaustive injection search
        kappa_limit: Largest finite kappa accepted by the canonical models
        acf_scan_bound: Default scan bound of the pseudo-number report
        api_host: Host address for the FastAPI server
        api_port: Port number for the FastAPI server
        debug_mode: Enable debug mode
        rate_limit_calls: Number of allowed calls per minute
        enable_visualization: Toggle for decomposition plots
        plot_dpi: Resolution of rendered plots
    """

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        "WARNING", description="Logging level")

    # Reports
    output_format: Literal["json", "pretty"] = Field(
        "json", description="Default report format")
    default_seed: int = Field(0, description="Seed for property generators")

    # Algebra kernel
    refinement_iteration_cap: int = Field(
        2000, description="Bisection steps allowed per algebraic-number refinement")
    collision_scan_limit: int = Field(
        200, description="Rational values tried by the collision oracle")

    # Search limits
    exhaustive_universe_limit: int = Field(
        6, description="Largest universe for exhaustive injection search")
    kappa_limit: int = Field(20, description="Largest finite kappa for H_kappa")
    acf_scan_bound: int = Field(10, description="Default pseudo-number scan bound")

    # API Settings
    api_host: str = Field("127.0.0.1", description="API host address")
    api_port: int = Field(8000, description="API port number")
    debug_mode: bool = Field(False, description="Debug mode toggle")
    rate_limit_calls: int = Field(30, description="Rate limit calls per minute")

    # Features
    enable_visualization: bool = Field(True, description="Enable decomposition plots")
    plot_dpi: int = Field(100, description="Plot resolution")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="HUME_",
        case_sensitive=False
    )


# Create global settings instance
settings = Settings()
